# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of :mod:`diversat._pykernels`.

Bitmask kernels run on 64-bit words (callers keep widths at most 63); the
vertex cover search works on C arrays over a 0-based CSR graph.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free
from libc.string cimport memcpy, memset

ctypedef unsigned long long u64


cdef extern from *:
    int popcountll "__builtin_popcountll"(unsigned long long)
    int ctzll "__builtin_ctzll"(unsigned long long)


cdef u64* _u64_array(seq) except NULL:
    cdef Py_ssize_t i, k = len(seq)
    cdef u64* out = <u64*> PyMem_Malloc((k + 1) * sizeof(u64))
    if out == NULL:
        raise MemoryError()
    for i in range(k):
        out[i] = <u64> seq[i]
    return out


# --- enumeration oracles -----------------------------------------------------


def cnf_solutions(int n, pos, neg):
    cdef Py_ssize_t m = len(pos), i
    cdef u64* p = _u64_array(pos)
    cdef u64* q = _u64_array(neg)
    cdef u64 a, na, full = (<u64> 1 << n) - 1, top = <u64> 1 << n
    out = []
    try:
        a = 0
        while a < top:
            na = full ^ a
            for i in range(m):
                if not (a & p[i] or na & q[i]):
                    break
            else:
                out.append(a)
            a += 1
    finally:
        PyMem_Free(p)
        PyMem_Free(q)
    return out


def xor_solutions(int n, masks, rhs):
    cdef Py_ssize_t m = len(masks), i
    cdef u64* ms = _u64_array(masks)
    cdef u64* bs = _u64_array(rhs)
    cdef u64 a, top = <u64> 1 << n
    out = []
    try:
        a = 0
        while a < top:
            for i in range(m):
                if <u64> (popcountll(a & ms[i]) & 1) != bs[i]:
                    break
            else:
                out.append(a)
            a += 1
    finally:
        PyMem_Free(ms)
        PyMem_Free(bs)
    return out


def min_soft_violations(int n, hard_pos, hard_neg, soft_pos, soft_neg):
    cdef Py_ssize_t mh = len(hard_pos), ms = len(soft_pos), i
    cdef u64* hp = _u64_array(hard_pos)
    cdef u64* hn = _u64_array(hard_neg)
    cdef u64* sp = _u64_array(soft_pos)
    cdef u64* sn = _u64_array(soft_neg)
    cdef u64 a, na, full = (<u64> 1 << n) - 1, top = <u64> 1 << n
    cdef long best = -1, k
    cdef bint ok
    try:
        a = 0
        while a < top:
            na = full ^ a
            ok = True
            for i in range(mh):
                if not (a & hp[i] or na & hn[i]):
                    ok = False
                    break
            if ok:
                k = 0
                for i in range(ms):
                    if not (a & sp[i] or na & sn[i]):
                        k += 1
                if best < 0 or k < best:
                    best = k
                    if best == 0:
                        break
            a += 1
    finally:
        PyMem_Free(hp)
        PyMem_Free(hn)
        PyMem_Free(sp)
        PyMem_Free(sn)
    return best


def max_pair_distance(sols):
    cdef Py_ssize_t k = len(sols), i, j, bi = 0, bj = 0
    cdef int d, bd = 0
    if k == 0:
        return None
    cdef u64* s = _u64_array(sols)
    try:
        for i in range(k):
            for j in range(i + 1, k):
                d = popcountll(s[i] ^ s[j])
                if d > bd:
                    bi, bj, bd = i, j, d
    finally:
        PyMem_Free(s)
    return (bi, bj, bd)


def max_weight_span(basis, long stop_at):
    cdef Py_ssize_t dim = len(basis)
    cdef u64 v = 0, best_v = 0, k, top
    cdef long w, best_w = 0
    if best_w >= stop_at:
        return 0, 0
    cdef u64* b = _u64_array(basis)
    top = <u64> 1 << dim
    try:
        k = 1
        while k < top:
            v ^= b[ctzll(k)]
            w = popcountll(v)
            if w > best_w:
                best_v, best_w = v, w
                if w >= stop_at:
                    break
            k += 1
    finally:
        PyMem_Free(b)
    return best_v, best_w


def min_vertex_cover_subsets(int nv, edge_masks):
    cdef Py_ssize_t m = len(edge_masks), i
    cdef u64* e = _u64_array(edge_masks)
    cdef u64 s, top = <u64> 1 << nv
    cdef int best = nv, c
    try:
        s = 0
        while s < top:
            c = popcountll(s)
            if c < best:
                for i in range(m):
                    if not (s & e[i]):
                        break
                else:
                    best = c
            s += 1
    finally:
        PyMem_Free(e)
    return best


# --- XP guess-and-check search -----------------------------------------------


cdef struct XPCtx:
    int n
    int d
    u64 full
    u64* closure
    u64* bodies
    u64* heads
    Py_ssize_t nrules
    int* vars
    int* vals


cdef bint _rec_2cnf(XPCtx* cx, int start, int depth, u64 c1, u64 c2):
    cdef int v, b, n = cx.n, b_hi
    cdef u64 n1, n2, full = cx.full
    cdef int pos_l, neg_l
    if depth == cx.d:
        return True
    b_hi = 0 if depth == 0 else 1
    for v in range(start, n - (cx.d - depth) + 2):
        pos_l = n - v
        neg_l = 2 * n - v
        for b in range(b_hi + 1):
            if b:
                n1 = c1 | cx.closure[pos_l]
                if (n1 & full) & (n1 >> n):
                    continue
                n2 = c2 | cx.closure[neg_l]
            else:
                n1 = c1 | cx.closure[neg_l]
                if (n1 & full) & (n1 >> n):
                    continue
                n2 = c2 | cx.closure[pos_l]
            if (n2 & full) & (n2 >> n):
                continue
            cx.vars[depth] = v
            cx.vals[depth] = b
            if _rec_2cnf(cx, v + 1, depth + 1, n1, n2):
                return True
    return False


def xp_search_2cnf(int n, int d, closure):
    cdef XPCtx cx
    cdef int i
    cx.n = n
    cx.d = d
    cx.full = (<u64> 1 << n) - 1
    cx.closure = _u64_array(closure)
    cx.vars = <int*> PyMem_Malloc((d + 1) * sizeof(int))
    cx.vals = <int*> PyMem_Malloc((d + 1) * sizeof(int))
    try:
        if _rec_2cnf(&cx, 1, 0, 0, 0):
            return [(cx.vars[i], cx.vals[i]) for i in range(d)]
        return None
    finally:
        PyMem_Free(cx.closure)
        PyMem_Free(cx.vars)
        PyMem_Free(cx.vals)


cdef long long _horn_close(XPCtx* cx, u64 model):
    """Least fixpoint above ``model``; -1 on conflict."""
    cdef bint changed = True
    cdef Py_ssize_t i
    cdef u64 body, head
    while changed:
        changed = False
        for i in range(cx.nrules):
            body = cx.bodies[i]
            head = cx.heads[i]
            if body & model == body and not head & model:
                if not head:
                    return -1
                model |= head
                changed = True
    return <long long> model


cdef bint _rec_horn(XPCtx* cx, int start, int depth, u64 m1, u64 f1, u64 m2, u64 f2):
    cdef int v, b, n = cx.n, b_hi
    cdef u64 bit, n1, g1, n2, g2
    cdef long long r
    if depth == cx.d:
        return True
    b_hi = 0 if depth == 0 else 1
    for v in range(start, n - (cx.d - depth) + 2):
        bit = <u64> 1 << (n - v)
        for b in range(b_hi + 1):
            if b:
                r = _horn_close(cx, m1 | bit)
                if r < 0 or <u64> r & f1:
                    continue
                n1, g1 = <u64> r, f1
                n2, g2 = m2, f2 | bit
                if n2 & g2:
                    continue
            else:
                n1, g1 = m1, f1 | bit
                if n1 & g1:
                    continue
                r = _horn_close(cx, m2 | bit)
                if r < 0 or <u64> r & f2:
                    continue
                n2, g2 = <u64> r, f2
            cx.vars[depth] = v
            cx.vals[depth] = b
            if _rec_horn(cx, v + 1, depth + 1, n1, g1, n2, g2):
                return True
    return False


def xp_search_horn(int n, int d, bodies, heads):
    cdef XPCtx cx
    cdef int i
    cdef long long base
    cx.n = n
    cx.d = d
    cx.nrules = len(bodies)
    cx.bodies = _u64_array(bodies)
    cx.heads = _u64_array(heads)
    cx.vars = <int*> PyMem_Malloc((d + 1) * sizeof(int))
    cx.vals = <int*> PyMem_Malloc((d + 1) * sizeof(int))
    try:
        base = _horn_close(&cx, 0)
        if base < 0:
            return None
        if _rec_horn(&cx, 1, 0, <u64> base, 0, <u64> base, 0):
            return [(cx.vars[i], cx.vals[i]) for i in range(d)]
        return None
    finally:
        PyMem_Free(cx.bodies)
        PyMem_Free(cx.heads)
        PyMem_Free(cx.vars)
        PyMem_Free(cx.vals)


# --- vertex cover above the LP bound -----------------------------------------


cdef int* _int_array(Py_ssize_t k) except NULL:
    cdef int* out = <int*> PyMem_Malloc((k + 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    return out


cdef class _VCState:
    cdef int nv
    cdef int* indptr
    cdef int* indices
    cdef char* alive
    cdef int* mate_l
    cdef int* mate_r
    cdef int* cover
    cdef int ncover
    cdef long branches
    # scratch
    cdef int* dist
    cdef int* it
    cdef int* queue
    cdef int* stack
    cdef int* x2
    cdef int* index
    cdef int* low
    cdef int* comp
    cdef char* on
    cdef char* seen_l
    cdef char* seen_r

    def __cinit__(self, int nv, indptr, indices):
        cdef Py_ssize_t i, ne = len(indices)
        self.nv = nv
        self.indptr = _int_array(nv + 1)
        self.indices = _int_array(ne)
        for i in range(nv + 1):
            self.indptr[i] = indptr[i]
        for i in range(ne):
            self.indices[i] = indices[i]
        self.alive = <char*> PyMem_Malloc(nv + 1)
        self.on = <char*> PyMem_Malloc(nv + 1)
        self.seen_l = <char*> PyMem_Malloc(nv + 1)
        self.seen_r = <char*> PyMem_Malloc(nv + 1)
        if not (self.alive and self.on and self.seen_l and self.seen_r):
            raise MemoryError()
        memset(self.alive, 1, nv)
        self.mate_l = _int_array(nv)
        self.mate_r = _int_array(nv)
        for i in range(nv):
            self.mate_l[i] = -1
            self.mate_r[i] = -1
        self.cover = _int_array(nv)
        self.ncover = 0
        self.branches = 0
        self.dist = _int_array(nv)
        self.it = _int_array(nv)
        self.queue = _int_array(nv)
        self.stack = _int_array(nv)
        self.x2 = _int_array(nv)
        self.index = _int_array(nv)
        self.low = _int_array(nv)
        self.comp = _int_array(nv)

    def __dealloc__(self):
        PyMem_Free(self.indptr)
        PyMem_Free(self.indices)
        PyMem_Free(self.alive)
        PyMem_Free(self.on)
        PyMem_Free(self.seen_l)
        PyMem_Free(self.seen_r)
        PyMem_Free(self.mate_l)
        PyMem_Free(self.mate_r)
        PyMem_Free(self.cover)
        PyMem_Free(self.dist)
        PyMem_Free(self.it)
        PyMem_Free(self.queue)
        PyMem_Free(self.stack)
        PyMem_Free(self.x2)
        PyMem_Free(self.index)
        PyMem_Free(self.low)
        PyMem_Free(self.comp)

    cdef void warm(self, int u, int w):
        self.mate_l[u] = w
        self.mate_r[w] = u
        self.mate_l[w] = u
        self.mate_r[u] = w

    cdef void kill(self, int v):
        cdef int w, u
        self.alive[v] = 0
        w = self.mate_l[v]
        if w >= 0:
            self.mate_r[w] = -1
            self.mate_l[v] = -1
        u = self.mate_r[v]
        if u >= 0:
            self.mate_l[u] = -1
            self.mate_r[v] = -1

    cdef int prune_isolated(self):
        cdef int v, k, left = 0
        cdef bint has
        for v in range(self.nv):
            if self.alive[v]:
                has = False
                for k in range(self.indptr[v], self.indptr[v + 1]):
                    if self.alive[self.indices[k]]:
                        has = True
                        break
                if has:
                    left += 1
                else:
                    self.kill(v)
        return left

    cdef int max_matching(self):
        """Hopcroft-Karp on the double cover, warm-started from current mates."""
        cdef int nv = self.nv, u, w, x, k, du, r, sp, depth, uu, prev, qh, qt, limit
        cdef int INF = 1 << 30
        cdef bint augmented, advanced
        cdef int* dist = self.dist
        cdef int* it = self.it
        cdef int* queue = self.queue
        cdef int* stack = self.stack
        cdef int* indptr = self.indptr
        cdef int* idx = self.indices
        cdef char* alive = self.alive
        cdef int* mate_l = self.mate_l
        cdef int* mate_r = self.mate_r
        while True:
            qh = qt = 0
            for u in range(nv):
                dist[u] = -1
                if alive[u] and mate_l[u] < 0:
                    dist[u] = 0
                    queue[qt] = u
                    qt += 1
            limit = INF
            while qh < qt:
                u = queue[qh]
                qh += 1
                du = dist[u]
                if du >= limit:
                    continue
                for k in range(indptr[u], indptr[u + 1]):
                    w = idx[k]
                    if not alive[w]:
                        continue
                    x = mate_r[w]
                    if x < 0:
                        if du + 1 < limit:
                            limit = du + 1
                    elif dist[x] < 0:
                        dist[x] = du + 1
                        queue[qt] = x
                        qt += 1
            if limit == INF:
                break
            for u in range(nv):
                it[u] = indptr[u]
            augmented = False
            # roots are the free left vertices queued first by the BFS
            for r in range(nv):
                if dist[r] != 0 or mate_l[r] >= 0 or not alive[r]:
                    continue
                sp = 0
                stack[sp] = r
                sp += 1
                while sp > 0:
                    u = stack[sp - 1]
                    advanced = False
                    while it[u] < indptr[u + 1]:
                        w = idx[it[u]]
                        it[u] += 1
                        if not alive[w]:
                            continue
                        x = mate_r[w]
                        if x < 0:
                            if dist[u] + 1 != limit:
                                continue
                            depth = sp - 1
                            while depth >= 0:
                                uu = stack[depth]
                                prev = mate_l[uu]
                                mate_l[uu] = w
                                mate_r[w] = uu
                                w = prev
                                depth -= 1
                            sp = 0
                            augmented = True
                            advanced = True
                            break
                        if dist[x] == dist[u] + 1:
                            stack[sp] = x
                            sp += 1
                            advanced = True
                            break
                    if not advanced:
                        dist[u] = -1
                        sp -= 1
            if not augmented:
                break
        x = 0
        for u in range(nv):
            if alive[u] and mate_l[u] >= 0:
                x += 1
        return x

    cdef void koenig(self):
        cdef int nv = self.nv, u, w, x, k, qh = 0, qt = 0
        cdef int* queue = self.queue
        memset(self.seen_l, 0, nv)
        memset(self.seen_r, 0, nv)
        for u in range(nv):
            if self.alive[u] and self.mate_l[u] < 0:
                self.seen_l[u] = 1
                queue[qt] = u
                qt += 1
        while qh < qt:
            u = queue[qh]
            qh += 1
            for k in range(self.indptr[u], self.indptr[u + 1]):
                w = self.indices[k]
                if self.alive[w] and not self.seen_r[w] and self.mate_l[u] != w:
                    self.seen_r[w] = 1
                    x = self.mate_r[w]
                    if x >= 0 and not self.seen_l[x]:
                        self.seen_l[x] = 1
                        queue[qt] = x
                        qt += 1
        for u in range(nv):
            if self.alive[u]:
                self.x2[u] = (not self.seen_l[u]) + self.seen_r[u]
            else:
                self.x2[u] = 0

    cdef bint persistent(self):
        """Fill ``x2`` with an optimal half-integral solution having an
        integral vertex; False when all-1/2 is the unique optimum."""
        cdef int nv = self.nv, root, u, w, x, p, q, counter = 0, ncomp = 0
        cdef int tsp = 0, csp = 0, start, zsp
        cdef bint pushed
        cdef int* index = self.index
        cdef int* low = self.low
        cdef int* comp = self.comp
        cdef int* it = self.it
        cdef int* tstack = self.queue
        cdef int* cs = self.stack
        cdef char* on = self.on
        cdef int* indptr = self.indptr
        cdef int* idx = self.indices
        cdef char* alive = self.alive
        cdef int* mate_l = self.mate_l
        cdef int* mate_r = self.mate_r
        for u in range(nv):
            index[u] = -1
            comp[u] = -1
            on[u] = 0
        for root in range(nv):
            if not alive[root] or index[root] >= 0:
                continue
            index[root] = low[root] = counter
            counter += 1
            tstack[tsp] = root
            tsp += 1
            on[root] = 1
            it[root] = indptr[root]
            cs[csp] = root
            csp += 1
            while csp > 0:
                u = cs[csp - 1]
                pushed = False
                while it[u] < indptr[u + 1]:
                    w = idx[it[u]]
                    it[u] += 1
                    if not alive[w] or w == mate_l[u]:
                        continue
                    x = mate_r[w]
                    if index[x] < 0:
                        index[x] = low[x] = counter
                        counter += 1
                        tstack[tsp] = x
                        tsp += 1
                        on[x] = 1
                        it[x] = indptr[x]
                        cs[csp] = x
                        csp += 1
                        pushed = True
                        break
                    if on[x] and index[x] < low[u]:
                        low[u] = index[x]
                if pushed:
                    continue
                csp -= 1
                if csp > 0:
                    p = cs[csp - 1]
                    if low[u] < low[p]:
                        low[p] = low[u]
                if low[u] == index[u]:
                    while True:
                        tsp -= 1
                        x = tstack[tsp]
                        on[x] = 0
                        comp[x] = ncomp
                        if x == u:
                            break
                    ncomp += 1
        start = -1
        for u in range(nv):
            if alive[u]:
                p = u
                q = mate_r[u]
                if comp[p] != comp[q]:
                    start = p if comp[p] < comp[q] else q
                    break
        if start < 0:
            return False
        # reach set Z of start, kept in on[]
        memset(on, 0, nv)
        on[start] = 1
        zsp = 0
        cs[zsp] = start
        zsp += 1
        while zsp > 0:
            zsp -= 1
            u = cs[zsp]
            for p in range(indptr[u], indptr[u + 1]):
                w = idx[p]
                if not alive[w] or w == mate_l[u]:
                    continue
                x = mate_r[w]
                if not on[x]:
                    on[x] = 1
                    cs[zsp] = x
                    zsp += 1
        for u in range(nv):
            if alive[u]:
                self.x2[u] = (not on[u]) + on[mate_r[u]]
            else:
                self.x2[u] = 0
        return True

    cdef int apply(self):
        cdef int v, fixed = 0
        for v in range(self.nv):
            if self.alive[v]:
                if self.x2[v] == 2:
                    self.cover[self.ncover] = v
                    self.ncover += 1
                    fixed += 1
                    self.kill(v)
                elif self.x2[v] == 0:
                    self.kill(v)
        return fixed

    cdef bint search(self, long budget) except -1:
        cdef int n_alive, m, v, k, w, nb, ncov
        cdef int nv = self.nv
        cdef char* s_alive
        cdef int* s_ml
        cdef int* s_mr
        cdef bint ok
        while True:
            if budget < 0:
                return False
            n_alive = self.prune_isolated()
            if n_alive == 0:
                return True
            m = self.max_matching()
            # m = 2 * LP optimum; a cover needs at least ceil(LP) vertices
            if (m + 1) // 2 > budget:
                return False
            if m < n_alive:
                self.koenig()
            elif not self.persistent():
                break
            budget -= self.apply()
        v = 0
        while not self.alive[v]:
            v += 1
        self.branches += 1
        s_alive = <char*> PyMem_Malloc(nv + 1)
        s_ml = <int*> PyMem_Malloc((nv + 1) * sizeof(int))
        s_mr = <int*> PyMem_Malloc((nv + 1) * sizeof(int))
        if not (s_alive and s_ml and s_mr):
            PyMem_Free(s_alive)
            PyMem_Free(s_ml)
            PyMem_Free(s_mr)
            raise MemoryError()
        memcpy(s_alive, self.alive, nv)
        memcpy(s_ml, self.mate_l, nv * sizeof(int))
        memcpy(s_mr, self.mate_r, nv * sizeof(int))
        ncov = self.ncover
        try:
            self.cover[self.ncover] = v
            self.ncover += 1
            self.kill(v)
            if self.search(budget - 1):
                return True
            memcpy(self.alive, s_alive, nv)
            memcpy(self.mate_l, s_ml, nv * sizeof(int))
            memcpy(self.mate_r, s_mr, nv * sizeof(int))
            self.ncover = ncov
            nb = 0
            for k in range(self.indptr[v], self.indptr[v + 1]):
                w = self.indices[k]
                if self.alive[w]:
                    self.cover[self.ncover] = w
                    self.ncover += 1
                    nb += 1
            for k in range(ncov, self.ncover):
                self.kill(self.cover[k])
            self.kill(v)
            if self.search(budget - nb):
                return True
            memcpy(self.alive, s_alive, nv)
            memcpy(self.mate_l, s_ml, nv * sizeof(int))
            memcpy(self.mate_r, s_mr, nv * sizeof(int))
            self.ncover = ncov
            return False
        finally:
            PyMem_Free(s_alive)
            PyMem_Free(s_ml)
            PyMem_Free(s_mr)


def vc_search(int nv, indptr, indices, long budget, warm_pairs=()):
    cdef _VCState st = _VCState(nv, indptr, indices)
    cdef bint found
    cdef int i
    for u, w in warm_pairs:
        st.warm(u, w)
    found = st.search(budget)
    if not found:
        return False, None, st.branches
    cover = []
    for i in range(st.ncover):
        cover.append(st.cover[i])
    cover.sort()
    return True, cover, st.branches


def lp_value2(int nv, indptr, indices):
    cdef _VCState st = _VCState(nv, indptr, indices)
    st.prune_isolated()
    return st.max_matching()

"""Pure-Python hot kernels.

Every function here has a twin with the same signature in the compiled
``_ckernels`` extension; :mod:`diversat._backend` picks one at import time.
Bit vectors use the package-wide layout (variable ``i`` of ``n`` at bit
``n - i``).  Graph kernels take 0-based CSR adjacency.
"""

from __future__ import annotations

from collections import deque


def popcount(x: int) -> int:
    return bin(x).count("1")


# --- enumeration oracles -----------------------------------------------------


def cnf_solutions(n, pos, neg):
    """All ``a`` in ``[0, 2**n)`` satisfying every clause, ascending."""
    full = (1 << n) - 1
    clauses = list(zip(pos, neg))
    out = []
    for a in range(1 << n):
        na = full ^ a
        for p, q in clauses:
            if not (a & p or na & q):
                break
        else:
            out.append(a)
    return out


def xor_solutions(n, masks, rhs):
    out = []
    rows = list(zip(masks, rhs))
    for a in range(1 << n):
        for m, b in rows:
            if popcount(a & m) & 1 != b:
                break
        else:
            out.append(a)
    return out


def min_soft_violations(n, hard_pos, hard_neg, soft_pos, soft_neg):
    """Minimum number of violated soft clauses over assignments satisfying
    every hard clause; ``-1`` when the hard clauses are unsatisfiable."""
    full = (1 << n) - 1
    hard = list(zip(hard_pos, hard_neg))
    soft = list(zip(soft_pos, soft_neg))
    best = -1
    for a in range(1 << n):
        na = full ^ a
        for p, q in hard:
            if not (a & p or na & q):
                break
        else:
            k = 0
            for p, q in soft:
                if not (a & p or na & q):
                    k += 1
            if best < 0 or k < best:
                best = k
                if best == 0:
                    break
    return best


def max_pair_distance(sols):
    """``(i, j, dist)`` for the first pair ``i <= j`` of maximum Hamming
    distance in row-major scan order, or ``None`` for an empty list."""
    if not sols:
        return None
    best = (0, 0, 0)
    for i in range(len(sols)):
        a = sols[i]
        for j in range(i + 1, len(sols)):
            d = popcount(a ^ sols[j])
            if d > best[2]:
                best = (i, j, d)
    return best


def max_weight_span(basis, stop_at):
    """Heaviest vector in the span of ``basis`` via Gray-code enumeration.

    Returns ``(vector, weight)``; stops early once a vector of weight at
    least ``stop_at`` is seen.
    """
    best_v, best_w = 0, 0
    if best_w >= stop_at:
        return best_v, best_w
    v = 0
    for k in range(1, 1 << len(basis)):
        v ^= basis[(k & -k).bit_length() - 1]
        w = popcount(v)
        if w > best_w:
            best_v, best_w = v, w
            if w >= stop_at:
                break
    return best_v, best_w


def min_vertex_cover_subsets(nv, edge_masks):
    """Exact minimum vertex cover by scanning every vertex subset."""
    best = nv
    for s in range(1 << nv):
        c = popcount(s)
        if c >= best:
            continue
        for e in edge_masks:
            if not s & e:
                break
        else:
            best = c
    return best


# --- XP guess-and-check search -----------------------------------------------


def xp_search_2cnf(n, d, closure):
    """Lexicographic search for ``d`` variables and a split of their values.

    ``closure[l]`` is the implication closure of literal ``l`` as a mask over
    ``2n`` literal bits (positive ``x_i`` at bit ``n - i``, negative at
    ``2n - i``).  A literal set extends to a model of a satisfiable 2CNF iff
    its closure holds no complementary pair.  Returns ``[(var, value1), ...]``
    with ``value1`` the first assignment's value, or ``None``.
    """
    full = (1 << n) - 1

    def clash(c):
        return (c & full) & (c >> n)

    def rec(start, depth, c1, c2, chosen):
        if depth == d:
            return chosen
        for v in range(start, n - (d - depth) + 2):
            pos_l, neg_l = n - v, 2 * n - v
            for b in (0,) if depth == 0 else (0, 1):
                l1, l2 = (pos_l, neg_l) if b else (neg_l, pos_l)
                n1 = c1 | closure[l1]
                if clash(n1):
                    continue
                n2 = c2 | closure[l2]
                if clash(n2):
                    continue
                found = rec(v + 1, depth + 1, n1, n2, chosen + [(v, b)])
                if found is not None:
                    return found
        return None

    return rec(1, 0, 0, 0, [])


def horn_close(model, bodies, heads):
    """Least fixpoint above ``model`` under Horn rules; ``-1`` on conflict.

    A rule with ``head == 0`` is a purely negative clause and conflicts
    once its body is contained in the model.
    """
    changed = True
    while changed:
        changed = False
        for body, head in zip(bodies, heads):
            if body & model == body and not head & model:
                if not head:
                    return -1
                model |= head
                changed = True
    return model


def xp_search_horn(n, d, bodies, heads):
    """As :func:`xp_search_2cnf` for Horn formulas given as rules.

    A partial assignment (true set ``P``, false set ``N``) extends to a model
    iff the least model containing ``P`` exists and avoids ``N``.
    """
    base = horn_close(0, bodies, heads)
    if base < 0:
        return None

    def rec(start, depth, m1, f1, m2, f2, chosen):
        if depth == d:
            return chosen
        for v in range(start, n - (d - depth) + 2):
            bit = 1 << (n - v)
            for b in (0,) if depth == 0 else (0, 1):
                if b:
                    n1 = horn_close(m1 | bit, bodies, heads)
                    g1 = f1
                    if n1 < 0 or n1 & g1:
                        continue
                    g2 = f2 | bit
                    n2 = m2
                    if n2 & g2:
                        continue
                else:
                    g1 = f1 | bit
                    n1 = m1
                    if n1 & g1:
                        continue
                    n2 = horn_close(m2 | bit, bodies, heads)
                    g2 = f2
                    if n2 < 0 or n2 & g2:
                        continue
                found = rec(v + 1, depth + 1, n1, g1, n2, g2, chosen + [(v, b)])
                if found is not None:
                    return found
        return None

    return rec(1, 0, base, 0, base, 0, [])


# --- vertex cover above the LP bound -----------------------------------------


class _VCState:
    def __init__(self, nv, indptr, indices):
        self.nv = nv
        self.indptr = indptr
        self.indices = indices
        self.alive = bytearray(b"\x01") * nv
        # matching of the bipartite double cover: left copy u -> right copy w
        self.mate_l = [-1] * nv
        self.mate_r = [-1] * nv
        self.cover: list[int] = []
        self.branches = 0

    def nbrs(self, v):
        alive = self.alive
        idx = self.indices
        return [w for w in idx[self.indptr[v] : self.indptr[v + 1]] if alive[w]]

    def kill(self, v):
        self.alive[v] = 0
        w = self.mate_l[v]
        if w >= 0:
            self.mate_r[w] = -1
            self.mate_l[v] = -1
        u = self.mate_r[v]
        if u >= 0:
            self.mate_l[u] = -1
            self.mate_r[v] = -1

    def prune_isolated(self):
        alive, indptr, idx = self.alive, self.indptr, self.indices
        left = 0
        for v in range(self.nv):
            if alive[v]:
                for k in range(indptr[v], indptr[v + 1]):
                    if alive[idx[k]]:
                        left += 1
                        break
                else:
                    alive[v] = 0
                    self.kill(v)
        return left

    def max_matching(self):
        """Hopcroft-Karp on the double cover, warm-started from current mates."""
        alive, indptr, idx = self.alive, self.indptr, self.indices
        mate_l, mate_r = self.mate_l, self.mate_r
        INF = 1 << 60
        while True:
            dist = {}
            q = deque()
            for u in range(self.nv):
                if alive[u] and mate_l[u] < 0:
                    dist[u] = 0
                    q.append(u)
            limit = INF
            while q:
                u = q.popleft()
                du = dist[u]
                if du >= limit:
                    continue
                for k in range(indptr[u], indptr[u + 1]):
                    w = idx[k]
                    if not alive[w]:
                        continue
                    x = mate_r[w]
                    if x < 0:
                        limit = min(limit, du + 1)
                    elif x not in dist:
                        dist[x] = du + 1
                        q.append(x)
            if limit == INF:
                break
            it = {u: indptr[u] for u in dist}
            augmented = False
            for root in [u for u, du in dist.items() if du == 0]:
                stack = [root]
                while stack:
                    u = stack[-1]
                    k = it[u]
                    advanced = False
                    while k < indptr[u + 1]:
                        w = idx[k]
                        k += 1
                        if not alive[w]:
                            continue
                        x = mate_r[w]
                        if x < 0:
                            if dist[u] + 1 != limit:
                                continue
                            # augment along the stack
                            it[u] = k
                            for depth in range(len(stack) - 1, -1, -1):
                                uu = stack[depth]
                                prev = mate_l[uu]
                                mate_l[uu] = w
                                mate_r[w] = uu
                                w = prev
                            stack = []
                            augmented = True
                            advanced = True
                            break
                        if dist.get(x, -1) == dist[u] + 1:
                            it[u] = k
                            stack.append(x)
                            advanced = True
                            break
                    if not advanced:
                        it[u] = k
                        dist[u] = -1
                        stack.pop()
            if not augmented:
                break
        return sum(1 for u in range(self.nv) if alive[u] and mate_l[u] >= 0)

    def koenig(self):
        """Half-integral LP optimum (as twice the value) from a König cover."""
        alive, indptr, idx = self.alive, self.indptr, self.indices
        mate_l, mate_r = self.mate_l, self.mate_r
        seen_l = bytearray(self.nv)
        seen_r = bytearray(self.nv)
        q = deque(u for u in range(self.nv) if alive[u] and mate_l[u] < 0)
        for u in q:
            seen_l[u] = 1
        while q:
            u = q.popleft()
            for k in range(indptr[u], indptr[u + 1]):
                w = idx[k]
                if alive[w] and not seen_r[w] and mate_l[u] != w:
                    seen_r[w] = 1
                    x = mate_r[w]
                    if x >= 0 and not seen_l[x]:
                        seen_l[x] = 1
                        q.append(x)
        return [(not seen_l[v]) + seen_r[v] if alive[v] else 0 for v in range(self.nv)]

    def persistent(self):
        """Optimal half-integral solution with an integral vertex, if any.

        Requires a perfect matching of the double cover.  Closed sets of the
        digraph ``u -> mate_r[w]`` (``w`` a non-partner neighbour of ``u``)
        are exactly the minimum covers; vertex ``v`` can leave 1/2 iff ``v``
        and ``mate_r[v]`` lie in different strong components.
        """
        alive, indptr, idx = self.alive, self.indptr, self.indices
        mate_l, mate_r = self.mate_l, self.mate_r
        nv = self.nv

        adj = [
            [mate_r[w] for w in idx[indptr[u] : indptr[u + 1]] if alive[w] and w != mate_l[u]]
            if alive[u] else ()
            for u in range(nv)
        ]

        # iterative Tarjan
        index = [-1] * nv
        low = [0] * nv
        comp = [-1] * nv
        on = bytearray(nv)
        stack: list[int] = []
        counter = 0
        ncomp = 0
        for root in range(nv):
            if not alive[root] or index[root] >= 0:
                continue
            work = [[root, 0]]
            index[root] = low[root] = counter
            counter += 1
            stack.append(root)
            on[root] = 1
            while work:
                frame = work[-1]
                u = frame[0]
                succ = adj[u]
                pos = frame[1]
                pushed = False
                while pos < len(succ):
                    x = succ[pos]
                    pos += 1
                    if index[x] < 0:
                        index[x] = low[x] = counter
                        counter += 1
                        stack.append(x)
                        on[x] = 1
                        frame[1] = pos
                        work.append([x, 0])
                        pushed = True
                        break
                    if on[x] and index[x] < low[u]:
                        low[u] = index[x]
                if pushed:
                    continue
                work.pop()
                if work:
                    p = work[-1][0]
                    if low[u] < low[p]:
                        low[p] = low[u]
                if low[u] == index[u]:
                    while True:
                        x = stack.pop()
                        on[x] = 0
                        comp[x] = ncomp
                        if x == u:
                            break
                    ncomp += 1

        start = -1
        for v in range(nv):
            if alive[v]:
                p, q = v, mate_r[v]
                if comp[p] != comp[q]:
                    # Tarjan numbers sink components first: a path p -> q
                    # forces comp[q] < comp[p]
                    start = p if comp[p] < comp[q] else q
                    break
        if start < 0:
            return None
        in_z = bytearray(nv)
        in_z[start] = 1
        todo = [start]
        while todo:
            u = todo.pop()
            for x in adj[u]:
                if not in_z[x]:
                    in_z[x] = 1
                    todo.append(x)
        return [
            (not in_z[v]) + in_z[mate_r[v]] if alive[v] else 0 for v in range(nv)
        ]

    def apply(self, x2):
        fixed = 0
        for v in range(self.nv):
            if self.alive[v]:
                if x2[v] == 2:
                    self.cover.append(v)
                    fixed += 1
                    self.kill(v)
                elif x2[v] == 0:
                    self.kill(v)
        return fixed

    def snapshot(self):
        return (bytearray(self.alive), self.mate_l[:], self.mate_r[:], len(self.cover))

    def restore(self, snap):
        alive, ml, mr, ncov = snap
        self.alive[:] = alive
        self.mate_l[:] = ml
        self.mate_r[:] = mr
        del self.cover[ncov:]

    def search(self, budget):
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
                x2 = self.koenig()
            else:
                x2 = self.persistent()
                if x2 is None:
                    break
            budget -= self.apply(x2)
        v = next(u for u in range(self.nv) if self.alive[u])
        self.branches += 1
        snap = self.snapshot()
        self.cover.append(v)
        self.kill(v)
        if self.search(budget - 1):
            return True
        self.restore(snap)
        nb = self.nbrs(v)
        self.cover.extend(nb)
        for w in nb:
            self.kill(w)
        self.kill(v)
        if self.search(budget - len(nb)):
            return True
        self.restore(snap)
        return False


def vc_search(nv, indptr, indices, budget, warm_pairs=()):
    """Decide whether the graph has a vertex cover of size ``<= budget``.

    Half-integral LP bound from the bipartite double cover, persistency
    reductions until all-1/2 is the unique LP optimum, then two-way branching
    on the lowest-numbered remaining vertex.  ``warm_pairs`` is an optional
    matching of the graph used to seed the double-cover matching.
    Returns ``(found, cover, branches)``.
    """
    st = _VCState(nv, indptr, indices)
    for u, w in warm_pairs:
        st.mate_l[u], st.mate_r[w] = w, u
        st.mate_l[w], st.mate_r[u] = u, w
    found = st.search(budget)
    return found, (sorted(st.cover) if found else None), st.branches


def lp_value2(nv, indptr, indices):
    """Twice the optimum of the vertex cover LP relaxation."""
    st = _VCState(nv, indptr, indices)
    st.prune_isolated()
    return st.max_matching()

"""Polynomial-time satisfiability engines: 2SAT, Horn, dual Horn, GF(2) systems."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from diversat.formula import (
    Assignment,
    Clause,
    CnfFormula,
    UnsupportedClassError,
    classify,
    var_bit,
)

PartialAssignment = Mapping[int, int]


def _node(lit) -> int:
    return 2 * (lit.var - 1) + lit.negated


def _implication_graph(phi: CnfFormula) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(2 * phi.num_vars)]
    for c in phi.clauses:
        if c.width > 2:
            raise UnsupportedClassError(f"clause {c} wider than 2")
        a = c.literals[0]
        b = c.literals[-1]
        adj[_node(a) ^ 1].append(_node(b))
        if c.width == 2:
            adj[_node(b) ^ 1].append(_node(a))
    return adj


def _tarjan(adj: list[list[int]], roots: Sequence[int]) -> list[int]:
    """Strong component ids; components close sinks-first (reverse topological)."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on = [False] * n
    stack: list[int] = []
    counter = ncomp = 0
    for root in roots:
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on[root] = True
        while work:
            u, k = work[-1]
            if k < len(adj[u]):
                work[-1] = (u, k + 1)
                x = adj[u][k]
                if index[x] < 0:
                    index[x] = low[x] = counter
                    counter += 1
                    stack.append(x)
                    on[x] = True
                    work.append((x, 0))
                elif on[x]:
                    low[u] = min(low[u], index[x])
                continue
            work.pop()
            if work:
                p = work[-1][0]
                low[p] = min(low[p], low[u])
            if low[u] == index[u]:
                while True:
                    x = stack.pop()
                    on[x] = False
                    comp[x] = ncomp
                    if x == u:
                        break
                ncomp += 1
    return comp


def solve_2sat(phi: CnfFormula) -> Optional[Assignment]:
    """Implication graph + strong components.

    A variable is true iff its positive literal's component comes later in
    topological order than its negative literal's.  Roots are visited
    negative-literal first, so unconstrained variables come out 0.
    """
    adj = _implication_graph(phi)
    if phi.unsat:
        return None
    n = phi.num_vars
    roots = [node for v in range(n) for node in (2 * v + 1, 2 * v)]
    comp = _tarjan(adj, roots)
    bits = 0
    for v in range(n):
        cp, cn = comp[2 * v], comp[2 * v + 1]
        if cp == cn:
            return None
        if cp < cn:
            bits |= 1 << (n - 1 - v)
    return Assignment(n, bits)


def implication_closure(phi: CnfFormula) -> list[int]:
    """For each literal, the mask of literals it implies (itself included).

    Positive ``x_i`` sits at bit ``n - i`` and ``~x_i`` at bit ``2n - i``.
    """
    n = phi.num_vars
    adj = _implication_graph(phi)

    def bit(node: int) -> int:
        v, neg = divmod(node, 2)
        return 1 << (n - 1 - v + (n if neg else 0))

    out = [0] * (2 * n)
    for start in range(2 * n):
        seen = {start}
        todo = [start]
        mask = 0
        while todo:
            u = todo.pop()
            mask |= bit(u)
            for x in adj[u]:
                if x not in seen:
                    seen.add(x)
                    todo.append(x)
        v, neg = divmod(start, 2)
        out[(n - 1 - v) + (n if neg else 0)] = mask
    return out


def _require(phi: CnfFormula, flag: str, what: str) -> None:
    if not getattr(classify(phi), flag):
        raise UnsupportedClassError(f"formula is not {what}")


def horn_rules(phi: CnfFormula) -> tuple[list[int], list[int]]:
    """(body mask, head mask) per clause; head 0 for purely negative clauses."""
    bodies, heads = [], []
    n = phi.num_vars
    for c in phi.clauses:
        b = h = 0
        for lit in c.literals:
            if lit.negated:
                b |= var_bit(n, lit.var)
            else:
                h |= var_bit(n, lit.var)
        bodies.append(b)
        heads.append(h)
    return bodies, heads


def solve_horn(phi: CnfFormula) -> Optional[Assignment]:
    """Least model by unit propagation (FIFO over clause indices)."""
    _require(phi, "horn", "Horn")
    if phi.unsat:
        return None
    n = phi.num_vars
    body = [{lit.var for lit in c if lit.negated} for c in phi.clauses]
    head = [next((lit.var for lit in c if not lit.negated), None) for c in phi.clauses]
    pending = [len(b) for b in body]
    watch: list[list[int]] = [[] for _ in range(n + 1)]
    for ci, b in enumerate(body):
        for v in b:
            watch[v].append(ci)
    queue = deque(ci for ci, k in enumerate(pending) if k == 0)
    value = [0] * (n + 1)
    while queue:
        ci = queue.popleft()
        h = head[ci]
        if h is None:
            return None
        if value[h]:
            continue
        value[h] = 1
        for cj in watch[h]:
            pending[cj] -= 1
            if pending[cj] == 0:
                queue.append(cj)
    return Assignment.from_values(value[1:])


def solve_dual_horn(phi: CnfFormula) -> Optional[Assignment]:
    """Greatest model, via the least model of the polarity-flipped formula."""
    _require(phi, "dual_horn", "dual Horn")
    low = solve_horn(phi.flipped())
    return None if low is None else low.complement()


def double_horn_bounds(phi: CnfFormula) -> Optional[tuple[Assignment, Assignment]]:
    _require(phi, "double_horn", "double Horn")
    lo = solve_horn(phi)
    if lo is None:
        return None
    return lo, solve_dual_horn(phi)


def restrict(phi: CnfFormula, pa: PartialAssignment) -> CnfFormula:
    """Fix the variables in ``pa`` and simplify.

    Satisfied clauses are dropped and falsified literals removed; a clause
    that loses every literal sets the ``unsat`` flag instead of appearing.
    """
    if phi.unsat:
        return phi
    out = []
    for c in phi.clauses:
        kept = []
        for lit in c.literals:
            val = pa.get(lit.var)
            if val is None:
                kept.append(lit)
            elif val ^ lit.negated:
                break
        else:
            if not kept:
                return CnfFormula(phi.num_vars, (), unsat=True)
            out.append(c if len(kept) == c.width else Clause(tuple(kept)))
    return CnfFormula(phi.num_vars, tuple(out))


# --- GF(2) linear systems ----------------------------------------------------


@dataclass(frozen=True)
class F2System:
    """``A x = b`` with rows stored as bit vectors (column ``j`` at bit ``n - j``)."""

    num_vars: int
    rows: tuple[int, ...] = ()
    rhs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "rhs", tuple(b & 1 for b in self.rhs))
        if len(self.rows) != len(self.rhs):
            raise ValueError("row count and rhs length differ")
        if any(r < 0 or r >> self.num_vars for r in self.rows):
            raise ValueError("row does not fit the column count")

    @classmethod
    def from_dense(
        cls, matrix: Sequence[Sequence[int]], b: Sequence[int] | None = None, num_vars=None
    ) -> "F2System":
        n = num_vars if num_vars is not None else (len(matrix[0]) if matrix else 0)
        rows = tuple(int("".join(str(x & 1) for x in r), 2) if n else 0 for r in matrix)
        return cls(n, rows, tuple(b) if b is not None else (0,) * len(rows))

    def dense(self) -> list[list[int]]:
        return [Assignment(self.num_vars, r).values() for r in self.rows]

    def apply(self, x: Assignment) -> tuple[int, ...]:
        return tuple(bin(r & x.bits).count("1") & 1 for r in self.rows)

    def homogeneous(self) -> "F2System":
        return F2System(self.num_vars, self.rows, (0,) * len(self.rows))


@dataclass(frozen=True)
class F2Solution:
    particular: Optional[Assignment]
    kernel_basis: tuple[Assignment, ...]
    rank: int

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def gauss_solve(sys: F2System) -> F2Solution:
    """Reduced row echelon form with lowest-index pivot columns first."""
    n = sys.num_vars
    rows = list(sys.rows)
    rhs = list(sys.rhs)
    pivots: list[int] = []  # pivot column per reduced row
    r = 0
    for col in range(1, n + 1):
        bit = var_bit(n, col)
        p = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        rhs[r], rhs[p] = rhs[p], rhs[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
                rhs[i] ^= rhs[r]
        pivots.append(col)
        r += 1
    consistent = all(not (rows[i] == 0 and rhs[i]) for i in range(r, len(rows)))
    particular = None
    if consistent:
        bits = 0
        for i, col in enumerate(pivots):
            if rhs[i]:
                bits |= var_bit(n, col)
        particular = Assignment(n, bits)
    pivot_set = set(pivots)
    basis = []
    for f in range(1, n + 1):
        if f in pivot_set:
            continue
        fb = var_bit(n, f)
        vec = fb
        for i, col in enumerate(pivots):
            if rows[i] & fb:
                vec |= var_bit(n, col)
        basis.append(Assignment(n, vec))
    return F2Solution(particular, tuple(basis), len(pivots))

"""Brute-force reference answers used as ground truth by the test-suite and ``check``.

Everything here scans exhaustively; the only shortcut is word-parallel
clause evaluation on assignment integers.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from diversat import _backend
from diversat.formula import Assignment, CnfFormula, Formula, XorFormula, hamming


class CapExceededError(ValueError):
    """An instance is too large for exhaustive search under the active caps."""


class Unbounded(enum.Enum):
    INFINITY = "unbounded"

    def __repr__(self) -> str:
        return "UNBOUNDED"


UNBOUNDED = Unbounded.INFINITY


@dataclass(frozen=True)
class OracleCaps:
    max_vars: int = 20
    max_graph_vertices: int = 18
    max_tuple_base: int = 1 << 20

    def __post_init__(self) -> None:
        if min(self.max_vars, self.max_graph_vertices, self.max_tuple_base) <= 0:
            raise ValueError("oracle caps must be positive")


DEFAULT_CAPS = OracleCaps()


def _check_vars(n: int, caps: OracleCaps) -> None:
    if n > caps.max_vars:
        raise CapExceededError(f"{n} variables exceed the oracle cap {caps.max_vars}")


def solution_ints(phi: Formula, caps: OracleCaps = DEFAULT_CAPS) -> list[int]:
    _check_vars(phi.num_vars, caps)
    n = phi.num_vars
    if isinstance(phi, XorFormula):
        return _backend.xor_solutions(n, [c.mask(n) for c in phi.clauses], [c.rhs for c in phi.clauses])
    if phi.unsat:
        return []
    pos, neg = phi.masks()
    return _backend.cnf_solutions(n, pos, neg)


def enumerate_solutions(phi: Formula, caps: OracleCaps = DEFAULT_CAPS) -> list[Assignment]:
    """All satisfying assignments in lexicographic order."""
    return [Assignment(phi.num_vars, a) for a in solution_ints(phi, caps)]


def max_hamming_pair(
    phi: Formula, caps: OracleCaps = DEFAULT_CAPS
) -> Optional[tuple[tuple[Assignment, Assignment], int]]:
    sols = solution_ints(phi, caps)
    best = _backend.max_pair_distance(sols, phi.num_vars)
    if best is None:
        return None
    i, j, d = best
    n = phi.num_vars
    return (Assignment(n, sols[i]), Assignment(n, sols[j])), d


def max_pair_distance_naive(phi: Formula, caps: OracleCaps = DEFAULT_CAPS) -> Optional[int]:
    """Second, independent loop over solution pairs (self-consistency check)."""
    sols = enumerate_solutions(phi, caps)
    if not sols:
        return None
    return max(hamming(a, b) for a in sols for b in sols)


def min_soft_deletions_bruteforce(inst, caps: OracleCaps = DEFAULT_CAPS) -> Union[int, Unbounded]:
    """Minimum number of soft clauses whose removal makes the formula satisfiable.

    A deletion set ``D`` works iff some assignment satisfies every clause
    outside ``D``, so the minimum equals the least number of soft clauses
    violated by an assignment satisfying all hard clauses.
    """
    return min_soft_violations(inst.phi_star, inst.soft, caps)


def min_soft_violations(
    phi: CnfFormula, soft, caps: OracleCaps = DEFAULT_CAPS
) -> Union[int, Unbounded]:
    _check_vars(phi.num_vars, caps)
    if phi.unsat:
        return UNBOUNDED
    soft = set(soft)
    pos, neg = phi.masks()
    hard_idx = [i for i in range(len(pos)) if i not in soft]
    soft_idx = sorted(soft)
    k = _backend.min_soft_violations(
        phi.num_vars,
        [pos[i] for i in hard_idx],
        [neg[i] for i in hard_idx],
        [pos[i] for i in soft_idx],
        [neg[i] for i in soft_idx],
    )
    return UNBOUNDED if k < 0 else k


def _edge_list(g) -> tuple[int, list[tuple[int, int]]]:
    if hasattr(g, "edge_pairs"):
        return g.num_vertices, list(g.edge_pairs())
    return g.num_vertices, list(g.edges)


def min_vertex_cover_bruteforce(g, caps: OracleCaps = DEFAULT_CAPS) -> int:
    """Exact minimum vertex cover by subset enumeration (1-based vertices)."""
    nv, edges = _edge_list(g)
    if nv > caps.max_graph_vertices:
        raise CapExceededError(
            f"{nv} vertices exceed the oracle cap {caps.max_graph_vertices}"
        )
    masks = sorted({(1 << (u - 1)) | (1 << (v - 1)) for u, v in edges})
    return _backend.min_vertex_cover_subsets(nv, masks)


def min_vertex_cover_exact(g) -> int:
    """Exact minimum vertex cover for graphs beyond the subset-scan cap.

    Complement of a maximum independent set, found by plain include/exclude
    recursion on vertex bitsets; a vertex of degree at most one is always
    taken into the independent set.
    """
    nv, edges = _edge_list(g)
    nbr = [0] * (nv + 1)
    for u, v in edges:
        if u != v:
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
    memo: dict[int, int] = {}

    def mis(mask: int) -> int:
        if not mask:
            return 0
        hit = memo.get(mask)
        if hit is not None:
            return hit
        v = (mask & -mask).bit_length() - 1
        deg = bin(nbr[v] & mask).count("1")
        take = 1 + mis(mask & ~(nbr[v] | (1 << v)))
        if deg <= 1:
            res = take
        else:
            res = max(take, mis(mask & ~(1 << v)))
        memo[mask] = res
        return res

    every = sum(1 << v for v in range(1, nv + 1))
    return nv - mis(every)


def _induces_bipartite(s: int, nbr: list[int]) -> bool:
    color: dict[int, int] = {}
    rest = s
    while rest:
        root = (rest & -rest).bit_length() - 1
        color[root] = 0
        todo = [root]
        rest &= ~(1 << root)
        while todo:
            u = todo.pop()
            m = nbr[u] & s
            while m:
                w = (m & -m).bit_length() - 1
                m &= m - 1
                if w in color:
                    if color[w] == color[u]:
                        return False
                else:
                    color[w] = 1 - color[u]
                    rest &= ~(1 << w)
                    todo.append(w)
    return True


def max_induced_bipartite_bruteforce(g, caps: OracleCaps = DEFAULT_CAPS) -> int:
    """Size of the largest vertex subset inducing a bipartite subgraph."""
    nv, edges = _edge_list(g)
    if nv > caps.max_graph_vertices:
        raise CapExceededError(
            f"{nv} vertices exceed the oracle cap {caps.max_graph_vertices}"
        )
    nbr = [0] * nv
    for u, v in edges:
        nbr[u - 1] |= 1 << (v - 1)
        nbr[v - 1] |= 1 << (u - 1)
    best = 0
    for s in range(1 << nv):
        size = bin(s).count("1")
        if size > best and _induces_bipartite(s, nbr):
            best = size
    return best


def sum_pairwise(tup: Sequence[Assignment]) -> int:
    return sum(hamming(a, b) for a, b in itertools.combinations(tup, 2))


def _multiset_count(size: int, k: int) -> int:
    return math.comb(size + k - 1, k)


def best_k_tuple_bruteforce(
    phi: Formula, k: int, caps: OracleCaps = DEFAULT_CAPS, method: str = "auto"
) -> tuple[tuple[Assignment, ...], int]:
    """Exact maximum of the summed pairwise distance over solution k-tuples.

    The objective ignores order, so only multisets are scanned.  ``method``
    is ``"scan"`` (plain enumeration of all multisets), ``"bnb"`` (the same
    enumeration with a per-bit upper bound, see :func:`_best_k_tuple_bnb`)
    or ``"auto"`` (scan when the multiset count fits ``max_tuple_base``).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    sols = enumerate_solutions(phi, caps)
    if not sols:
        raise ValueError("formula is unsatisfiable")
    ints = [a.bits for a in sols]
    if method == "auto":
        method = "scan" if _multiset_count(len(ints), k) <= caps.max_tuple_base else "bnb"
    if method == "bnb":
        best_tup, best_f = _best_k_tuple_bnb(ints, phi.num_vars, k, caps.max_tuple_base)
    elif method == "scan":
        if _multiset_count(len(ints), k) > caps.max_tuple_base:
            raise CapExceededError(
                f"{_multiset_count(len(ints), k)} multisets exceed the oracle cap "
                f"{caps.max_tuple_base}"
            )
        best_tup, best_f = (0,) * k, 0
        for tup in itertools.combinations_with_replacement(range(len(ints)), k):
            f = 0
            for i, j in itertools.combinations(tup, 2):
                f += bin(ints[i] ^ ints[j]).count("1")
            if f > best_f:
                best_tup, best_f = tup, f
    else:
        raise ValueError(f"unknown method {method!r}")
    return tuple(sols[i] for i in best_tup), best_f


def _best_k_tuple_bnb(ints: list[int], n: int, k: int, max_nodes: int):
    """Depth-first multiset search pruned by an admissible bound.

    With the tuple written as per-bit counts ``c_b`` of ones, the objective
    is ``sum_b c_b (k - c_b)``.  Given a partial tuple, each bit can at best
    move its count towards ``k / 2`` using the remaining slots, and bits that
    are constant over all solutions contribute nothing.  The search starts
    from the farthest solution pair as incumbent.
    """
    varying = 0
    for x in ints:
        varying |= x ^ ints[0]
    bits = [n - 1 - i for i in range(n) if varying >> (n - 1 - i) & 1]
    pair = _backend.max_pair_distance(ints, n)
    i0, j0, _ = pair
    best_tup = tuple(sorted((i0,) * (k // 2) + (j0,) * (k - k // 2)))
    best_f = _tuple_value([ints[i] for i in best_tup])
    nodes = 0

    def bound(counts: list[int], left: int) -> int:
        total = 0
        for c in counts:
            lo, hi = c, c + left
            target = min(max(k // 2, lo), hi)
            total += target * (k - target)
        return total

    def rec(start: int, chosen: list[int], counts: list[int]) -> None:
        nonlocal best_tup, best_f, nodes
        nodes += 1
        if nodes > max_nodes:
            raise CapExceededError(f"k-tuple search exceeded {max_nodes} nodes")
        left = k - len(chosen)
        if left == 0:
            f = sum(c * (k - c) for c in counts)
            if f > best_f:
                best_tup, best_f = tuple(chosen), f
            return
        if bound(counts, left) <= best_f:
            return
        for idx in range(start, len(ints)):
            x = ints[idx]
            rec(idx, chosen + [idx], [c + (x >> b & 1) for c, b in zip(counts, bits)])

    rec(0, [], [0] * len(bits))
    return best_tup, best_f


def _tuple_value(tup: Sequence[int]) -> int:
    return sum(bin(a ^ b).count("1") for a, b in itertools.combinations(tup, 2))


def max_kernel_weight_bruteforce(sys) -> int:
    """Heaviest solution of ``A y = 0`` by scanning all ``2**n`` vectors."""
    best = 0
    for y in range(1 << sys.num_vars):
        if all(bin(r & y).count("1") % 2 == 0 for r in sys.rows):
            best = max(best, bin(y).count("1"))
    return best

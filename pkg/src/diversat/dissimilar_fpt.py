"""Dissimilar pairs for 2CNF: asynchronous doubling, clause-deletion gadget, vertex cover.

Pipeline: ``phi`` is doubled onto x- and y-copies joined by asynchronous
clause pairs ``(x_i | y_i) & (~x_i | ~y_i)``; deleting at most ``s`` of these
soft clauses must make the doubled formula satisfiable.  That question is
answered by a vertex cover of size ``N + s`` in the gadget graph, where ``N``
is the size of its canonical perfect matching.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Optional

from diversat.dimacs import emit_dimacs_graph
from diversat.diverse_pair import DiversePairResult
from diversat.formula import (
    Assignment,
    Clause,
    CnfFormula,
    Literal,
    UnsupportedClassError,
    classify,
    hamming,
)
from diversat.satsolvers import solve_2sat
from diversat.vertex_cover import CoverResult, vc_above_lp


class ContractViolation(ValueError):
    pass


def _require_2cnf(phi: CnfFormula) -> None:
    if not classify(phi).two_cnf:
        raise UnsupportedClassError("formula has clauses wider than 2")


@dataclass(frozen=True)
class AsyncInstance:
    phi_star: CnfFormula
    soft: frozenset[int]
    n: int


def build_async_formula(phi: CnfFormula) -> AsyncInstance:
    """``phi(x) & phi(y) & AND_i (x_i | y_i) & (~x_i | ~y_i)``; y_i is variable ``n + i``."""
    _require_2cnf(phi)
    n = phi.num_vars
    shifted = tuple(
        Clause(tuple(Literal(lit.var + n, lit.negated) for lit in c.literals))
        for c in phi.clauses
    )
    asyn = []
    for i in range(1, n + 1):
        asyn.append(Clause.of(i, n + i))
        asyn.append(Clause.of(-i, -(n + i)))
    clauses = phi.clauses + shifted + tuple(asyn)
    start = len(phi.clauses) * 2
    return AsyncInstance(
        CnfFormula(2 * n, clauses, phi.unsat), frozenset(range(start, start + 2 * n)), n
    )


@dataclass(frozen=True)
class OccurrenceIndex:
    """``counts[x]`` occurrences of variable ``x``; ``where[(c, p)]`` is the
    occurrence number of the literal at position ``p`` of clause ``c`` and
    ``clause_of[x][i - 1]`` the clause holding occurrence ``i``."""

    counts: tuple[int, ...]
    where: dict
    clause_of: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, phi: CnfFormula) -> "OccurrenceIndex":
        counts = [0] * (phi.num_vars + 1)
        where = {}
        clause_of: list[list[int]] = [[] for _ in range(phi.num_vars + 1)]
        for ci, c in enumerate(phi.clauses):
            for p, lit in enumerate(c.literals):
                counts[lit.var] += 1
                where[(ci, p)] = counts[lit.var]
                clause_of[lit.var].append(ci)
        return cls(tuple(counts), where, tuple(map(tuple, clause_of)))


def duplicate_units(phi: CnfFormula) -> CnfFormula:
    """Rewrite each unit clause ``l`` as ``l | l`` (clause indices unchanged)."""
    return CnfFormula(
        phi.num_vars,
        tuple(Clause(c.literals * 2) if c.width == 1 else c for c in phi.clauses),
        phi.unsat,
    )


@dataclass(frozen=True)
class GadgetGraph:
    """Clause-deletion gadget on vertices ``v^j_{l,i}``.

    Vertices are numbered from 1, literal-major (``x1, ~x1, x2, ...``), then
    by occurrence ``i`` and layer ``j``.
    """

    formula: CnfFormula
    soft: frozenset[int]
    s: int
    occ: OccurrenceIndex
    offsets: tuple[int, ...]
    num_vertices: int
    variable_edges: tuple[tuple[int, int], ...]
    hard_edges: tuple[tuple[int, int], ...]
    soft_edges: tuple[tuple[int, int], ...]
    matching: tuple[tuple[int, int], ...]
    N: int

    @property
    def budget(self) -> int:
        return self.N + self.s

    def _lit_slot(self, lit: Literal) -> int:
        return 2 * (lit.var - 1) + lit.negated

    def vertex(self, lit: Literal, i: int, j: int) -> int:
        n_x = self.occ.counts[lit.var]
        if not (1 <= i <= n_x and 0 <= j <= self.s):
            raise IndexError(f"no vertex for {lit}, occurrence {i}, layer {j}")
        return self.offsets[self._lit_slot(lit)] + (i - 1) * (self.s + 1) + j + 1

    def literal_vertices(self, lit: Literal) -> range:
        """``V(lit)`` as a range of vertex ids."""
        start = self.offsets[self._lit_slot(lit)] + 1
        return range(start, start + self.occ.counts[lit.var] * (self.s + 1))

    def label(self, vid: int) -> tuple[Literal, int, int]:
        k = vid - 1
        if not 0 <= k < self.num_vertices:
            raise IndexError(f"vertex {vid} out of range")
        slot = bisect_right(self.offsets, k) - 1
        var, neg = divmod(slot, 2)
        i, j = divmod(k - self.offsets[slot], self.s + 1)
        return Literal(var + 1, bool(neg)), i + 1, j

    def label_str(self, vid: int) -> str:
        lit, i, j = self.label(vid)
        return f"v^{j}_{{{lit},{i}}}"

    def edge_pairs(self):
        yield from self.variable_edges
        yield from self.hard_edges
        yield from self.soft_edges

    def to_dimacs(self) -> str:
        edges = sorted({tuple(sorted(e)) for e in self.edge_pairs()})
        comments = [f"gadget N={self.N} budget={self.budget} s={self.s}"]
        comments += [f"v {v} {self.label_str(v)}" for v in range(1, self.num_vertices + 1)]
        return emit_dimacs_graph(self.num_vertices, edges, comments)


def build_gadget_graph(phi: CnfFormula, soft: Iterable[int], s: int) -> GadgetGraph:
    _require_2cnf(phi)
    if s < 0:
        raise ValueError("s must be non-negative")
    soft = frozenset(soft)
    if any(not 0 <= c < len(phi.clauses) for c in soft):
        raise ValueError("soft clause index out of range")
    phi2 = duplicate_units(phi)
    occ = OccurrenceIndex.build(phi2)
    layers = s + 1
    offsets = [0]
    for var in range(1, phi2.num_vars + 1):
        size = occ.counts[var] * layers
        offsets.append(offsets[-1] + size)  # V(x)
        offsets.append(offsets[-1] + size)  # V(~x)
    nv = offsets[-1]
    g_partial = GadgetGraph(
        phi2, soft, s, occ, tuple(offsets), nv, (), (), (), (), 0
    )
    vtx = g_partial.vertex

    var_edges, matching = [], []
    for var in range(1, phi2.num_vars + 1):
        pos = g_partial.literal_vertices(Literal(var, False))
        neg = g_partial.literal_vertices(Literal(var, True))
        var_edges.extend((u, w) for u in pos for w in neg)
        matching.extend(zip(pos, neg))

    hard_edges, soft_edges = [], []
    for ci, c in enumerate(phi2.clauses):
        a, b = c.literals
        ia, ib = occ.where[(ci, 0)], occ.where[(ci, 1)]
        if ci in soft:
            soft_edges.append((vtx(a, ia, 0), vtx(b, ib, 0)))
        else:
            hard_edges.extend((vtx(a, ia, j), vtx(b, ib, j)) for j in range(layers))

    N = sum(occ.counts[1:]) * layers
    return GadgetGraph(
        phi2, soft, s, occ, tuple(offsets), nv,
        tuple(var_edges), tuple(hard_edges), tuple(soft_edges), tuple(matching), N,
    )


def extract_assignment(cover: Iterable[int], g: GadgetGraph) -> tuple[Assignment, frozenset[int]]:
    """Read an assignment off a cover and report the soft clauses it violates.

    A cover contains ``V(x)`` or ``V(~x)`` entirely; ``x`` is 1 when it
    contains all of ``V(x)`` but not all of ``V(~x)``, else 0.  This covers
    the disjoint cases (cover misses ``V(~x)`` gives 1, misses ``V(x)``
    gives 0); when both sides are met, the fully covered side decides, since
    reading the other side would leave its hard edges unexplained.
    """
    cover = frozenset(cover)
    for u, v in g.edge_pairs():
        if u not in cover and v not in cover:
            raise ContractViolation(f"edge ({g.label_str(u)}, {g.label_str(v)}) is uncovered")
    if len(cover) > g.budget:
        raise ContractViolation(f"cover size {len(cover)} exceeds budget {g.budget}")
    n = g.formula.num_vars
    values = []
    for var in range(1, n + 1):
        pos_in = all(v in cover for v in g.literal_vertices(Literal(var, False)))
        neg_in = all(v in cover for v in g.literal_vertices(Literal(var, True)))
        values.append(1 if pos_in and not neg_in else 0)
    alpha = Assignment.from_values(values)
    violated = [ci for ci, c in enumerate(g.formula.clauses) if not c.satisfied_by(alpha)]
    hard = [ci for ci in violated if ci not in g.soft]
    if hard or len(violated) > g.s:
        raise ContractViolation(
            f"cover decodes to {len(hard)} violated hard and {len(violated)} total clauses"
        )
    return alpha, frozenset(violated)


def min_soft_deletions(
    inst: AsyncInstance, s: int
) -> Optional[tuple[frozenset[int], Assignment, CoverResult]]:
    """At most ``s`` soft clauses whose removal leaves ``phi_star`` satisfiable.

    Returns ``(deleted, beta, cover_result)`` or ``None``.
    """
    g = build_gadget_graph(inst.phi_star, inst.soft, s)
    res = vc_above_lp(g, g.budget)
    if not res.found:
        return None
    beta, deleted = extract_assignment(res.cover, g)
    return deleted, beta, res


def dissimilar_pair_2sat(phi: CnfFormula, s: int) -> DiversePairResult:
    """Two models of a 2CNF formula at Hamming distance at least ``n - s``."""
    _require_2cnf(phi)
    if s < 0:
        raise ValueError("s must be non-negative")
    n = phi.num_vars
    model = solve_2sat(phi)
    if model is None:
        return DiversePairResult(False, stats={"method": "fpt", "unsat": True})
    if s >= n:
        return DiversePairResult(True, model, model, stats={"method": "fpt", "trivial": True})
    inst = build_async_formula(phi)
    g = build_gadget_graph(inst.phi_star, inst.soft, s)
    res = vc_above_lp(g, g.budget)
    if not res.found:
        return DiversePairResult(False, stats={"method": "fpt", **res.stats})
    beta, deleted = extract_assignment(res.cover, g)
    a1 = Assignment(n, beta.bits >> n)
    a2 = Assignment(n, beta.bits & ((1 << n) - 1))
    if hamming(a1, a2) < n - s:
        raise ContractViolation("decoded pair is closer than n - s")
    return DiversePairResult(
        True, a1, a2, stats={"method": "fpt", "deleted": sorted(deleted), **res.stats}
    )

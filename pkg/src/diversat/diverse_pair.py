"""Diverse pairs for 2CNF / Horn / dual Horn (XP search) and double Horn (lattice bounds)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from diversat import _backend
from diversat.formula import (
    Assignment,
    CnfFormula,
    FormulaError,
    UnsupportedClassError,
    classify,
    hamming,
)
from diversat.satsolvers import (
    PartialAssignment,
    double_horn_bounds,
    horn_rules,
    implication_closure,
    restrict,
    solve_2sat,
    solve_dual_horn,
    solve_horn,
)


class UnsatisfiableError(ValueError):
    pass


@dataclass(frozen=True)
class DiversePairResult:
    found: bool
    alpha1: Optional[Assignment] = None
    alpha2: Optional[Assignment] = None
    distance: Optional[int] = None
    stats: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.found:
            if self.alpha1 is None or self.alpha2 is None:
                raise ValueError("found result needs both assignments")
            object.__setattr__(self, "distance", hamming(self.alpha1, self.alpha2))


@dataclass(frozen=True)
class KTupleResult:
    assignments: tuple[Assignment, ...]
    objective: int


Solver = Callable[[CnfFormula], Optional[Assignment]]


def _pick_solver(phi: CnfFormula) -> tuple[str, Solver]:
    cls = classify(phi)
    if cls.two_cnf:
        return "2cnf", solve_2sat
    if cls.horn:
        return "horn", solve_horn
    if cls.dual_horn:
        return "dual-horn", solve_dual_horn
    raise UnsupportedClassError(
        "diverse pair search needs a 2CNF, Horn or dual Horn formula"
    )


def _extend(phi: CnfFormula, pa: PartialAssignment, solver: Solver) -> Optional[Assignment]:
    """A model of ``phi`` agreeing with ``pa``, or ``None``."""
    model = solver(restrict(phi, pa))
    if model is None:
        return None
    for v, b in pa.items():
        model = model.with_value(v, b)
    return model


def _far_model(phi: CnfFormula, base: Assignment, solver: Solver) -> Assignment:
    """Greedily flip variables of ``base`` while the formula stays satisfiable."""
    pa: dict[int, int] = {}
    for v in range(1, phi.num_vars + 1):
        pa[v] = 1 - base[v]
        if solver(restrict(phi, pa)) is None:
            del pa[v]
    return _extend(phi, pa, solver)


def diverse_pair_xp(phi: CnfFormula, d: int, shortcut: bool = True) -> DiversePairResult:
    """Two models at Hamming distance at least ``d``, in ``n^O(d)`` time.

    Guesses ``d`` variables and the first model's values on them (the second
    model takes the opposite values); a guess succeeds iff both restrictions
    stay satisfiable.  Guesses are scanned lexicographically and pruned as
    soon as a prefix fails; the first variable's value is fixed to 0 in the
    first model since swapping the two models mirrors every guess.
    """
    kind, solver = _pick_solver(phi)
    if d < 0:
        raise ValueError("d must be non-negative")
    n = phi.num_vars
    stats = {"method": "xp", "solver": kind}
    if d > n:
        return DiversePairResult(False, stats=stats)
    a1 = solver(phi)
    if a1 is None:
        return DiversePairResult(False, stats={**stats, "unsat": True})
    if d == 0:
        return DiversePairResult(True, a1, a1, stats=stats)
    if shortcut:
        a2 = _far_model(phi, a1, solver)
        if hamming(a1, a2) >= d:
            return DiversePairResult(True, a1, a2, stats={**stats, "shortcut": True})

    if kind == "2cnf":
        guess = _backend.xp_search_2cnf(n, d, implication_closure(phi))
        flip = 0
    elif kind == "horn":
        guess = _backend.xp_search_horn(n, d, *horn_rules(phi))
        flip = 0
    else:
        guess = _backend.xp_search_horn(n, d, *horn_rules(phi.flipped()))
        flip = 1
    if guess is None:
        return DiversePairResult(False, stats=stats)
    pa1 = {v: b ^ flip for v, b in guess}
    pa2 = {v: 1 - b for v, b in pa1.items()}
    w1, w2 = _extend(phi, pa1, solver), _extend(phi, pa2, solver)
    if w1 is None or w2 is None:
        raise RuntimeError(f"search kernel accepted an infeasible guess {guess}")
    return DiversePairResult(True, w1, w2, stats={**stats, "guess": guess})


def diverse_pair_double_horn(phi: CnfFormula, d: int) -> DiversePairResult:
    """The least and greatest models are a farthest pair."""
    bounds = double_horn_bounds(phi)
    stats = {"method": "double-horn"}
    if bounds is None:
        return DiversePairResult(False, stats={**stats, "unsat": True})
    lo, hi = bounds
    if hamming(lo, hi) < d:
        return DiversePairResult(False, stats=stats)
    return DiversePairResult(True, lo, hi, stats=stats)


def _same_length(tup: Sequence[Assignment]) -> None:
    if len({a.n for a in tup}) > 1:
        raise FormulaError("assignments differ in length")


def sum_pairwise_distance(tup: Sequence[Assignment]) -> int:
    _same_length(tup)
    return sum(
        hamming(tup[i], tup[j]) for i in range(len(tup)) for j in range(i + 1, len(tup))
    )


def chain_objective(weights: Sequence[int]) -> int:
    """Summed pairwise distance of a chain ``x_1 <= ... <= x_k`` from its weights.

    Along a chain ``|x_i ^ x_j| = n_j - n_i``, so the sum collapses to
    ``sum_i (2i - k - 1) n_i`` with weights sorted ascending.
    """
    k = len(weights)
    return sum((2 * i - k - 1) * w for i, w in enumerate(sorted(weights), 1))


def chain_uncross(tup: Sequence[Assignment], i: int, j: int) -> list[Assignment]:
    """Replace positions ``i < j`` (1-based) by their meet and join."""
    _same_length(tup)
    if not 1 <= i < j <= len(tup):
        raise IndexError(f"need 1 <= i < j <= {len(tup)}, got ({i}, {j})")
    out = list(tup)
    a, b = out[i - 1], out[j - 1]
    out[i - 1], out[j - 1] = a & b, a | b
    return out


def uncross_to_chain(tup: Sequence[Assignment]) -> list[Assignment]:
    """Apply meet/join swaps to incomparable pairs until the tuple is a chain."""
    out = list(tup)
    k = len(out)
    changed = True
    while changed:
        changed = False
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                if not out[i - 1].leq(out[j - 1]):
                    out = chain_uncross(out, i, j)
                    changed = True
    return out


def k_diverse_double_horn(phi: CnfFormula, k: int) -> KTupleResult:
    """``floor(k/2)`` copies of the least model, then ``ceil(k/2)`` of the greatest.

    ``k = 1`` returns the least model alone (any single model scores 0).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    bounds = double_horn_bounds(phi)
    if bounds is None:
        raise UnsatisfiableError("formula is unsatisfiable")
    lo, hi = bounds
    if k == 1:
        return KTupleResult((lo,), 0)
    tup = (lo,) * (k // 2) + (hi,) * (k - k // 2)
    return KTupleResult(tup, chain_objective([a.weight for a in tup]))

"""XOR formulas as GF(2) systems: diverse pairs through the kernel, dissimilar pairs by guessing."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from diversat import _backend
from diversat.diverse_pair import DiversePairResult
from diversat.formula import Assignment, FormulaError, XorClause, XorFormula, var_bit
from diversat.oracle import CapExceededError
from diversat.satsolvers import F2System, gauss_solve


class KernelCapacityError(CapExceededError):
    """Kernel dimension exceeds the exact-enumeration cap."""


@dataclass(frozen=True)
class KernelSearchConfig:
    enumeration_cap: int = 24
    meet_in_middle: bool = False

    def __post_init__(self) -> None:
        if self.enumeration_cap < 0:
            raise ValueError("enumeration_cap must be non-negative")


def xor_to_system(phi: XorFormula) -> F2System:
    n = phi.num_vars
    return F2System(n, tuple(c.mask(n) for c in phi.clauses), tuple(c.rhs for c in phi.clauses))


def system_to_xor(sys: F2System) -> XorFormula:
    """Inverse of :func:`xor_to_system`; zero rows are not representable."""
    n = sys.num_vars
    clauses = []
    for row, b in zip(sys.rows, sys.rhs):
        if not row:
            raise FormulaError("zero row has no XOR clause")
        clauses.append(XorClause(tuple(v for v in range(1, n + 1) if row & var_bit(n, v)), b))
    return XorFormula(n, tuple(clauses))


def _mitm_search(basis: list[int], n: int, d: int) -> tuple[int, int]:
    """Split the basis in halves and pair their spans under a weight bound.

    A column touched by a single basis vector is private to it, so
    ``|u ^ w| <= |u on its private columns| + |w on its private columns| +
    |shared columns|``; pairs whose bound cannot beat the best are skipped.
    """
    private = []
    for i, b in enumerate(basis):
        others = 0
        for j, c in enumerate(basis):
            if j != i:
                others |= c
        private.append(b & ~others)
    half = len(basis) // 2
    lo_basis, hi_basis = basis[:half], basis[half:]
    lo_piv = hi_piv = 0
    for p in private[:half]:
        lo_piv |= p
    for p in private[half:]:
        hi_piv |= p
    rest_w = n - bin(lo_piv | hi_piv).count("1")

    def span(vecs: list[int]) -> list[int]:
        out = [0]
        for v in vecs:
            out += [x ^ v for x in out]
        return out

    lo = sorted(span(lo_basis), key=lambda x: -bin(x & lo_piv).count("1"))
    hi = sorted(span(hi_basis), key=lambda x: -bin(x & hi_piv).count("1"))
    hi_w = [bin(x & hi_piv).count("1") for x in hi]
    best_v, best_w = 0, 0
    for u in lo:
        uw = bin(u & lo_piv).count("1")
        if uw + hi_w[0] + rest_w <= best_w:
            break
        for w, ww in zip(hi, hi_w):
            if uw + ww + rest_w <= best_w:
                break
            t = bin(u ^ w).count("1")
            if t > best_w:
                best_v, best_w = u ^ w, t
                if best_w >= d:
                    return best_v, best_w
    return best_v, best_w


def max_weight_kernel_vector(
    sys: F2System, d: int, cfg: KernelSearchConfig = KernelSearchConfig()
) -> Optional[Assignment]:
    """A solution of ``A y = 0`` with weight at least ``d``, or ``None``.

    Exact enumeration of the kernel (``2**dim`` vectors); raises
    :class:`KernelCapacityError` when the dimension exceeds the cap.
    """
    basis = gauss_solve(sys.homogeneous()).kernel_basis
    if len(basis) > cfg.enumeration_cap:
        raise KernelCapacityError(
            f"kernel dimension {len(basis)} exceeds enumeration cap {cfg.enumeration_cap}"
        )
    n = sys.num_vars
    if d <= 0:
        return Assignment.zeros(n)
    vecs = [b.bits for b in basis]
    if cfg.meet_in_middle and len(vecs) >= 2:
        v, w = _mitm_search(vecs, n, d)
    else:
        v, w = _backend.max_weight_span(vecs, d, n)
    return Assignment(n, v) if w >= d else None


def diverse_pair_xor(
    phi: XorFormula, d: int, cfg: KernelSearchConfig = KernelSearchConfig()
) -> DiversePairResult:
    """A particular solution and its shift by a heavy kernel vector."""
    sys = xor_to_system(phi)
    sol = gauss_solve(sys)
    stats = {"method": "xor-kernel", "kernel_dim": len(sol.kernel_basis)}
    if sol.particular is None:
        return DiversePairResult(False, stats={**stats, "unsat": True})
    if d > phi.num_vars:
        return DiversePairResult(False, stats=stats)
    y = max_weight_kernel_vector(sys, d, cfg)
    if y is None:
        return DiversePairResult(False, stats=stats)
    x = sol.particular
    return DiversePairResult(True, x, x ^ y, stats=stats)


def doubled_system(phi: XorFormula, differ: list[int]) -> F2System:
    """``phi`` on x-copies, ``phi`` on y-copies, and ``x_i ^ y_i = 1`` for ``i`` in ``differ``.

    Columns ``1..n`` are the x-copies and ``n+1..2n`` the y-copies.
    """
    n = phi.num_vars
    m = 2 * n
    rows, rhs = [], []
    for c in phi.clauses:
        for shift in (0, n):
            mask = 0
            for v in c.vars:
                mask |= var_bit(m, v + shift)
            rows.append(mask)
            rhs.append(c.rhs)
    for i in differ:
        rows.append(var_bit(m, i) | var_bit(m, i + n))
        rhs.append(1)
    return F2System(m, tuple(rows), tuple(rhs))


def dissimilar_pair_xor(phi: XorFormula, s: int) -> DiversePairResult:
    """Two models agreeing on at most ``s`` variables, in ``n^(s+O(1))`` time.

    Tries every set of ``min(s, n)`` variables allowed to agree, in
    lexicographic order; the others are forced to differ.  ``s > n`` behaves
    as ``s = n``.
    """
    if s < 0:
        raise ValueError("s must be non-negative")
    n = phi.num_vars
    size = min(s, n)
    tried = 0
    for allowed in itertools.combinations(range(1, n + 1), size):
        tried += 1
        keep = set(allowed)
        sol = gauss_solve(doubled_system(phi, [i for i in range(1, n + 1) if i not in keep]))
        if sol.particular is not None:
            z = sol.particular.bits
            a1 = Assignment(n, z >> n)
            a2 = Assignment(n, z & ((1 << n) - 1))
            return DiversePairResult(
                True, a1, a2, stats={"method": "xor-guess", "guesses": tried, "agree": allowed}
            )
    return DiversePairResult(False, stats={"method": "xor-guess", "guesses": tried})


def evenset_to_xor(sys: F2System) -> XorFormula:
    """One XOR clause per row of ``A``, negating the highest-index variable.

    The clause ``x_i1 ^ ... ^ ~x_ik`` holds iff the row's parity is 0, so the
    formula's models are exactly the solutions of ``A x = 0``.
    """
    n = sys.num_vars
    clauses = []
    for row in sys.rows:
        support = [v for v in range(1, n + 1) if row & var_bit(n, v)]
        if not support:
            raise FormulaError("zero row in even-set matrix")
        lits = support[:-1] + [-support[-1]]
        clauses.append(XorClause.from_literals(lits))
    return XorFormula(n, tuple(clauses))

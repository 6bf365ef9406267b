"""Formula data model: literals, CNF and XOR formulas, assignments, class flags.

Assignments are stored as integers whose ``n``-digit binary representation,
read left to right, lists the values of ``x1 .. xn``.  Variable ``i`` therefore
lives at bit ``n - i`` and integer order coincides with lexicographic order of
the 0/1 strings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence, Union


class FormulaError(ValueError):
    """Raised when a formula or assignment violates a structural invariant."""


class UnsupportedClassError(ValueError):
    """Raised when an algorithm is given a formula outside its class."""


def var_bit(n: int, var: int) -> int:
    """Mask of variable ``var`` in an ``n``-variable assignment integer."""
    return 1 << (n - var)


class Literal(NamedTuple):
    var: int
    negated: bool = False

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        if lit == 0:
            raise FormulaError("literal 0 is not a variable")
        return cls(abs(lit), lit < 0)

    def to_int(self) -> int:
        return -self.var if self.negated else self.var

    def __neg__(self) -> "Literal":
        return Literal(self.var, not self.negated)

    def value(self, alpha: "Assignment") -> int:
        return alpha[self.var] ^ int(self.negated)

    def __str__(self) -> str:
        return ("~x%d" if self.negated else "x%d") % self.var


@dataclass(frozen=True)
class Clause:
    literals: tuple[Literal, ...]

    def __post_init__(self) -> None:
        if not self.literals:
            raise FormulaError("empty clause")
        for lit in self.literals:
            if lit.var < 1:
                raise FormulaError(f"variable index {lit.var} < 1")

    @classmethod
    def of(cls, *lits: int) -> "Clause":
        return cls(tuple(Literal.from_int(x) for x in lits))

    @property
    def width(self) -> int:
        return len(self.literals)

    @property
    def positives(self) -> int:
        return sum(1 for lit in self.literals if not lit.negated)

    @property
    def negatives(self) -> int:
        return sum(1 for lit in self.literals if lit.negated)

    def to_ints(self) -> list[int]:
        return [lit.to_int() for lit in self.literals]

    def satisfied_by(self, alpha: "Assignment") -> bool:
        return any(lit.value(alpha) for lit in self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __str__(self) -> str:
        return "(" + " | ".join(map(str, self.literals)) + ")"


@dataclass(frozen=True)
class CnfFormula:
    """Conjunction of clauses over variables ``1..num_vars``.

    ``unsat`` marks a formula known to be unsatisfiable (e.g. a restriction
    that falsified a clause); the clause list never contains empty clauses.
    """

    num_vars: int
    clauses: tuple[Clause, ...] = ()
    unsat: bool = False

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise FormulaError("negative variable count")
        object.__setattr__(self, "clauses", tuple(self.clauses))
        for c in self.clauses:
            for lit in c.literals:
                if lit.var > self.num_vars:
                    raise FormulaError(
                        f"literal index {lit.var} out of range 1..{self.num_vars}"
                    )

    @classmethod
    def from_ints(cls, num_vars: int, clauses: Iterable[Iterable[int]]) -> "CnfFormula":
        return cls(num_vars, tuple(Clause.of(*c) for c in clauses))

    def to_ints(self) -> list[list[int]]:
        return [c.to_ints() for c in self.clauses]

    def masks(self) -> tuple[list[int], list[int]]:
        """Per-clause (positive-literal mask, negative-literal mask)."""
        n = self.num_vars
        pos, neg = [], []
        for c in self.clauses:
            p = q = 0
            for lit in c.literals:
                if lit.negated:
                    q |= var_bit(n, lit.var)
                else:
                    p |= var_bit(n, lit.var)
            pos.append(p)
            neg.append(q)
        return pos, neg

    def flipped(self) -> "CnfFormula":
        """The formula with every literal's polarity inverted.

        ``alpha`` satisfies ``phi`` iff ``alpha.complement()`` satisfies
        ``phi.flipped()``; flipping swaps Horn and dual Horn.
        """
        return CnfFormula(
            self.num_vars,
            tuple(Clause(tuple(-lit for lit in c.literals)) for c in self.clauses),
            self.unsat,
        )

    def __len__(self) -> int:
        return len(self.clauses)

    def __str__(self) -> str:
        if self.unsat:
            return "UNSAT"
        return " & ".join(map(str, self.clauses)) or "TRUE"


@dataclass(frozen=True)
class XorClause:
    """Parity constraint: XOR of the listed variables equals ``rhs``."""

    vars: tuple[int, ...]
    rhs: int

    def __post_init__(self) -> None:
        if not self.vars:
            raise FormulaError("degenerate XOR clause (no variables)")
        if len(set(self.vars)) != len(self.vars):
            raise FormulaError("XOR clause has repeated variables; canonicalize first")
        if any(v < 1 for v in self.vars):
            raise FormulaError("variable index < 1")
        object.__setattr__(self, "rhs", self.rhs & 1)

    @classmethod
    def from_literals(cls, lits: Iterable[int]) -> "XorClause":
        """Canonicalize ``l1 ^ l2 ^ ... = 1`` given as signed ints.

        Each negation flips the parity; repeated variables cancel in pairs.
        """
        rhs = 1
        odd: set[int] = set()
        for lit in lits:
            if lit == 0:
                raise FormulaError("literal 0 is not a variable")
            if lit < 0:
                rhs ^= 1
            odd ^= {abs(lit)}
        return cls(tuple(sorted(odd)), rhs)

    def mask(self, n: int) -> int:
        m = 0
        for v in self.vars:
            m |= var_bit(n, v)
        return m

    def satisfied_by(self, alpha: "Assignment") -> bool:
        return (bin(alpha.bits & self.mask(alpha.n)).count("1") & 1) == self.rhs

    def __str__(self) -> str:
        return " ^ ".join(f"x{v}" for v in self.vars) + f" = {self.rhs}"


@dataclass(frozen=True)
class XorFormula:
    num_vars: int
    clauses: tuple[XorClause, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(self.clauses))
        for c in self.clauses:
            if max(c.vars) > self.num_vars:
                raise FormulaError(
                    f"literal index {max(c.vars)} out of range 1..{self.num_vars}"
                )

    def __len__(self) -> int:
        return len(self.clauses)

    def __str__(self) -> str:
        return " & ".join(f"({c})" for c in self.clauses) or "TRUE"


@dataclass(frozen=True, order=True)
class Assignment:
    """Total truth assignment on ``n`` variables (see module docstring)."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.n < 0 or self.bits < 0 or self.bits >> self.n:
            raise FormulaError(f"bits {self.bits:#x} do not fit {self.n} variables")

    @classmethod
    def from_str(cls, s: str) -> "Assignment":
        s = s.strip()
        if s and set(s) - {"0", "1"}:
            raise FormulaError(f"not a 0/1 string: {s!r}")
        return cls(len(s), int(s, 2) if s else 0)

    @classmethod
    def from_values(cls, values: Sequence[int]) -> "Assignment":
        return cls.from_str("".join("1" if v else "0" for v in values))

    @classmethod
    def zeros(cls, n: int) -> "Assignment":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "Assignment":
        return cls(n, (1 << n) - 1)

    def __getitem__(self, var: int) -> int:
        if not 1 <= var <= self.n:
            raise IndexError(f"variable {var} out of range 1..{self.n}")
        return (self.bits >> (self.n - var)) & 1

    def values(self) -> list[int]:
        return [self[i] for i in range(1, self.n + 1)]

    def with_value(self, var: int, value: int) -> "Assignment":
        b = var_bit(self.n, var)
        return Assignment(self.n, (self.bits | b) if value else (self.bits & ~b))

    @property
    def weight(self) -> int:
        return bin(self.bits).count("1")

    def complement(self) -> "Assignment":
        return Assignment(self.n, self.bits ^ ((1 << self.n) - 1))

    def _check(self, other: "Assignment") -> None:
        if other.n != self.n:
            raise FormulaError(f"length mismatch: {self.n} vs {other.n}")

    def __xor__(self, other: "Assignment") -> "Assignment":
        self._check(other)
        return Assignment(self.n, self.bits ^ other.bits)

    def __and__(self, other: "Assignment") -> "Assignment":
        self._check(other)
        return Assignment(self.n, self.bits & other.bits)

    def __or__(self, other: "Assignment") -> "Assignment":
        self._check(other)
        return Assignment(self.n, self.bits | other.bits)

    def leq(self, other: "Assignment") -> bool:
        """Componentwise order."""
        self._check(other)
        return self.bits & ~other.bits == 0

    def __str__(self) -> str:
        return format(self.bits, f"0{self.n}b") if self.n else ""


Formula = Union[CnfFormula, XorFormula]


@dataclass(frozen=True)
class FormulaClassSet:
    max_clause_width: int = 0
    horn: bool = True
    dual_horn: bool = True
    double_horn: bool = True
    monotone: bool = True
    antimonotone: bool = True

    @property
    def two_cnf(self) -> bool:
        return self.max_clause_width <= 2

    def label(self) -> str:
        """Space-separated class summary, e.g. ``"2cnf antimonotone horn"``."""
        w = self.max_clause_width
        parts = ["2cnf" if w <= 2 else f"{w}cnf"]
        if self.monotone and not self.antimonotone:
            parts.append("monotone")
        elif self.antimonotone and not self.monotone:
            parts.append("antimonotone")
        if self.double_horn:
            parts.append("double-horn")
        elif self.horn:
            parts.append("horn")
        elif self.dual_horn:
            parts.append("dual-horn")
        return " ".join(parts)


def classify(phi: CnfFormula) -> FormulaClassSet:
    width = 0
    horn = dual = mono = anti = True
    for c in phi.clauses:
        p, q = c.positives, c.negatives
        width = max(width, p + q)
        horn &= p <= 1
        dual &= q <= 1
        mono &= q == 0
        anti &= p == 0
    return FormulaClassSet(width, horn, dual, horn and dual, mono, anti)


def evaluate(phi: Formula, alpha: Assignment) -> bool:
    if alpha.n != phi.num_vars:
        raise FormulaError(
            f"assignment length {alpha.n} != formula variable count {phi.num_vars}"
        )
    if isinstance(phi, CnfFormula) and phi.unsat:
        return False
    return all(c.satisfied_by(alpha) for c in phi.clauses)


def hamming(a1: Assignment, a2: Assignment) -> int:
    return (a1 ^ a2).weight

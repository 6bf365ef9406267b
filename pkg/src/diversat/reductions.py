"""Hardness gadgets (set splitting, graph 2CNF) and seeded instance generators.

Randomness comes from :class:`random.Random` (Mersenne Twister MT19937),
whose output for a given integer seed is stable across platforms and
Python versions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Literal as Lit, Union

from diversat.dimacs import emit_dimacs_graph, emit_set_system, parse_dimacs_graph, parse_set_system
from diversat.formula import Assignment, Clause, CnfFormula, XorClause, XorFormula, var_bit

Polarity = Lit["antimonotone", "monotone"]
KINDS = ("2cnf", "horn", "dual_horn", "double_horn", "xor", "graph", "set_system")


@dataclass(frozen=True)
class SetSystem:
    universe_size: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        for s in self.sets:
            if not s or len(s) > 3:
                raise ValueError(f"set {sorted(s)} must have between 1 and 3 elements")
            if min(s) < 1 or max(s) > self.universe_size:
                raise ValueError(f"set {sorted(s)} leaves the universe 1..{self.universe_size}")

    @classmethod
    def parse(cls, text: str) -> "SetSystem":
        u, sets = parse_set_system(text)
        return cls(u, tuple(sets))

    def to_text(self) -> str:
        return emit_set_system(self.universe_size, [sorted(s) for s in self.sets])

    def is_split_by(self, part: int) -> bool:
        """Does the bipartition with side mask ``part`` (bit ``e-1`` for ``e``) split every set?"""
        for s in self.sets:
            sides = {(part >> (e - 1)) & 1 for e in s}
            if len(sides) < 2:
                return False
        return True


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.num_vertices and 1 <= v <= self.num_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range 1..{self.num_vertices}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def parse(cls, text: str) -> "Graph":
        nv, edges = parse_dimacs_graph(text)
        return cls(nv, tuple(edges))

    def to_dimacs(self) -> str:
        return emit_dimacs_graph(self.num_vertices, list(self.edges))

    def is_independent(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        return not any(u in s and v in s for u, v in self.edges)


def _check_polarity(polarity: str) -> int:
    if polarity not in ("antimonotone", "monotone"):
        raise ValueError(f"polarity must be 'antimonotone' or 'monotone', got {polarity!r}")
    return -1 if polarity == "antimonotone" else 1


def set_splitting_to_cnf(ss: SetSystem, polarity: Polarity = "antimonotone") -> CnfFormula:
    """One clause per set: all-negative (antimonotone) or all-positive (monotone)."""
    sign = _check_polarity(polarity)
    return CnfFormula(
        ss.universe_size, tuple(Clause.of(*(sign * e for e in sorted(s))) for s in ss.sets)
    )


def graph_to_2cnf(g: Graph, polarity: Polarity = "antimonotone") -> CnfFormula:
    """``~x_u | ~x_v`` (antimonotone) or ``x_u | x_v`` (monotone) per edge."""
    sign = _check_polarity(polarity)
    return CnfFormula(g.num_vertices, tuple(Clause.of(sign * u, sign * v) for u, v in g.edges))


def indicator_assignment(subset: Iterable[int], n: int) -> Assignment:
    bits = 0
    for v in subset:
        if not 1 <= v <= n:
            raise ValueError(f"element {v} out of range 1..{n}")
        bits |= var_bit(n, v)
    return Assignment(n, bits)


# --- seeded generators -------------------------------------------------------

Instance = Union[CnfFormula, XorFormula, Graph, SetSystem]


def _int_param(params: dict, key: str, default: int | None = None, lo: int = 0) -> int:
    val = params.get(key, default)
    if val is None:
        raise ValueError(f"missing parameter {key!r}")
    if isinstance(val, bool) or int(val) != val:
        raise ValueError(f"parameter {key!r} must be an integer")
    val = int(val)
    if val < lo:
        raise ValueError(f"parameter {key!r} must be >= {lo}, got {val}")
    return val


def _signed(rng: random.Random, var: int) -> int:
    return var if rng.random() < 0.5 else -var


def _gen_2cnf(rng: random.Random, n: int, m: int, unit_prob: float, planted: bool) -> CnfFormula:
    hidden = rng.getrandbits(n)
    clauses = []
    while len(clauses) < m:
        if n == 1 or rng.random() < unit_prob:
            c = Clause.of(_signed(rng, rng.randint(1, n)))
        else:
            a, b = rng.sample(range(1, n + 1), 2)
            c = Clause.of(_signed(rng, a), _signed(rng, b))
        if planted and not c.satisfied_by(Assignment(n, hidden)):
            continue
        clauses.append(c)
    return CnfFormula(n, tuple(clauses))


def _gen_horn(rng: random.Random, n: int, m: int, max_width: int) -> CnfFormula:
    clauses = []
    for _ in range(m):
        w = rng.randint(1, min(max_width, n))
        vs = rng.sample(range(1, n + 1), w)
        head = rng.randrange(w + 1)  # index w: no positive literal
        clauses.append(Clause.of(*(v if i == head else -v for i, v in enumerate(vs))))
    return CnfFormula(n, tuple(clauses))


def _gen_double_horn(rng: random.Random, n: int, m: int, unit_prob: float) -> CnfFormula:
    clauses = []
    for _ in range(m):
        if n == 1 or rng.random() < unit_prob:
            clauses.append(Clause.of(_signed(rng, rng.randint(1, n))))
        else:
            a, b = rng.sample(range(1, n + 1), 2)
            clauses.append(Clause.of(a, -b))
    return CnfFormula(n, tuple(clauses))


def _gen_xor(rng: random.Random, n: int, m: int, max_width: int, consistent: bool) -> XorFormula:
    planted = rng.getrandbits(n) if n else 0
    clauses = []
    for _ in range(m):
        vs = tuple(sorted(rng.sample(range(1, n + 1), rng.randint(1, min(max_width, n)))))
        if consistent:
            mask = sum(var_bit(n, v) for v in vs)
            rhs = bin(planted & mask).count("1") & 1
        else:
            rhs = rng.getrandbits(1)
        clauses.append(XorClause(vs, rhs))
    return XorFormula(n, tuple(clauses))


def _gen_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
    return Graph(n, tuple(edges))


def _gen_set_system(rng: random.Random, u: int, m: int) -> SetSystem:
    sets = []
    for _ in range(m):
        size = rng.randint(1, min(3, u))
        sets.append(frozenset(rng.sample(range(1, u + 1), size)))
    return SetSystem(u, tuple(sets))


def _prob(params: dict, key: str, default: float) -> float:
    p = float(params.get(key, default))
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"parameter {key!r} must lie in [0, 1], got {p}")
    return p


def random_instance(kind: str, params: dict, seed: int) -> Instance:
    """Deterministic random instance of the requested kind.

    Parameters per kind (``n`` variables/vertices, ``m`` clauses/sets):

    * ``2cnf``: ``n``, ``m``, ``unit_prob`` (default 0.1), ``planted``
      (default False, keeps only clauses satisfied by a hidden assignment)
    * ``horn`` / ``dual_horn``: ``n``, ``m``, ``max_width`` (default 3)
    * ``double_horn``: ``n``, ``m``, ``unit_prob`` (default 0.2); only unit
      clauses and ``x_a | ~x_b`` clauses are emitted
    * ``xor``: ``n``, ``m``, ``max_width`` (default 3), ``consistent``
      (default True, plants a hidden solution)
    * ``graph``: ``n``, ``p`` edge probability (default 0.5)
    * ``set_system``: ``n`` universe size, ``m`` sets of size 1 to 3
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    rng = random.Random(seed)
    n = _int_param(params, "n", lo=1)
    if kind == "graph":
        return _gen_graph(rng, n, _prob(params, "p", 0.5))
    m = _int_param(params, "m", lo=0)
    if kind == "2cnf":
        return _gen_2cnf(
            rng, n, m, _prob(params, "unit_prob", 0.1), bool(params.get("planted", False))
        )
    if kind in ("horn", "dual_horn"):
        phi = _gen_horn(rng, n, m, _int_param(params, "max_width", 3, lo=1))
        return phi.flipped() if kind == "dual_horn" else phi
    if kind == "double_horn":
        return _gen_double_horn(rng, n, m, _prob(params, "unit_prob", 0.2))
    if kind == "xor":
        return _gen_xor(
            rng, n, m, _int_param(params, "max_width", 3, lo=1), bool(params.get("consistent", True))
        )
    return _gen_set_system(rng, n, m)

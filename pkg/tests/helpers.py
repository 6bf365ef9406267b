"""Small constructors and hypothesis strategies shared by the tests."""

from hypothesis import strategies as st

from diversat.formula import Assignment, CnfFormula, XorClause, XorFormula

A = Assignment.from_str


def cnf(n, *clauses):
    return CnfFormula.from_ints(n, clauses)


def xor(n, *clauses):
    return XorFormula(n, tuple(XorClause.from_literals(c) for c in clauses))


P3 = cnf(3, (-1, -2), (-2, -3))
CHAIN4 = cnf(4, (1, -2), (2, 3), (3, -4))  # w, x, y, z


@st.composite
def formulas(draw, max_n=8, max_m=10, max_width=2, kind="any"):
    """Random CNF; ``kind`` restricts clause shapes to horn / dual_horn."""
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    clauses = []
    for _ in range(m):
        w = draw(st.integers(1, min(max_width, n)))
        vs = draw(st.lists(st.integers(1, n), min_size=w, max_size=w, unique=True))
        signs = draw(st.lists(st.booleans(), min_size=w, max_size=w))
        lits = [v if s else -v for v, s in zip(vs, signs)]
        if kind == "horn":
            seen = False
            for i, l in enumerate(lits):
                if l > 0:
                    if seen:
                        lits[i] = -l
                    seen = True
        elif kind == "dual_horn":
            seen = False
            for i, l in enumerate(lits):
                if l < 0:
                    if seen:
                        lits[i] = -l
                    seen = True
        clauses.append(lits)
    return CnfFormula.from_ints(n, clauses)


@st.composite
def assignments(draw, n):
    return Assignment(n, draw(st.integers(0, (1 << n) - 1)))

import pytest
from hypothesis import given, strategies as st

from diversat.formula import Assignment, FormulaError, XorFormula, evaluate, hamming
from diversat.oracle import (
    enumerate_solutions,
    max_hamming_pair,
    max_kernel_weight_bruteforce,
    solution_ints,
)
from diversat.satsolvers import F2System
from diversat.xor_affine import (
    KernelCapacityError,
    KernelSearchConfig,
    dissimilar_pair_xor,
    diverse_pair_xor,
    doubled_system,
    evenset_to_xor,
    max_weight_kernel_vector,
    system_to_xor,
    xor_to_system,
)
from helpers import A, xor


def test_xor_to_system_examples():
    s = xor_to_system(xor(2, (1, 2)))
    assert s.dense() == [[1, 1]] and s.rhs == (1,)
    s = xor_to_system(xor(3, (1, -2), (2, -3)))
    assert s.dense() == [[1, 1, 0], [0, 1, 1]] and s.rhs == (0, 0)
    assert xor_to_system(XorFormula(3)).rows == ()
    assert system_to_xor(s) == xor(3, (1, -2), (2, -3))


def test_kernel_vector_examples():
    assert max_weight_kernel_vector(F2System.from_dense([[1, 1]]), 2) == A("11")
    assert max_weight_kernel_vector(F2System.from_dense([[1, 0], [0, 1]]), 1) is None
    # kernel spanned by 1100 and 0011
    sys = F2System.from_dense([[1, 1, 0, 0], [0, 0, 1, 1]])
    for cfg in (KernelSearchConfig(), KernelSearchConfig(meet_in_middle=True)):
        assert max_weight_kernel_vector(sys, 4, cfg) == A("1111")
    with pytest.raises(KernelCapacityError):
        max_weight_kernel_vector(F2System(4), 1, KernelSearchConfig(enumeration_cap=3))
    with pytest.raises(ValueError):
        KernelSearchConfig(enumeration_cap=-1)


@given(st.integers(1, 11), st.data(), st.booleans())
def test_kernel_search_matches_bruteforce(n, data, mitm):
    rows = data.draw(st.lists(st.integers(0, (1 << n) - 1), max_size=6))
    sys = F2System(n, tuple(rows), (0,) * len(rows))
    best = max_kernel_weight_bruteforce(sys)
    cfg = KernelSearchConfig(meet_in_middle=mitm)
    for d in range(n + 1):
        y = max_weight_kernel_vector(sys, d, cfg)
        assert (y is not None) == (best >= d)
        if y is not None:
            assert y.weight >= d and not any(sys.apply(y))


def test_diverse_xor_examples():
    r = diverse_pair_xor(xor(2, (1, 2)), 2)
    assert r.found and (r.alpha1, r.alpha2) == (A("10"), A("01"))
    assert not diverse_pair_xor(xor(2, (1, 2)), 3).found
    bad = xor(2, (1, 2), (1, -2))
    bad = XorFormula(2, bad.clauses + xor(2, (1,), (-1,)).clauses)
    assert not diverse_pair_xor(bad, 0).found


def test_dissimilar_xor_examples():
    r = dissimilar_pair_xor(xor(2, (1, 2)), 0)
    assert r.found and r.distance == 2 and {str(r.alpha1), str(r.alpha2)} == {"10", "01"}
    r = dissimilar_pair_xor(xor(2, (1, -2)), 0)
    assert r.found and {str(r.alpha1), str(r.alpha2)} == {"00", "11"}
    forced = xor(2, (1,))
    assert not dissimilar_pair_xor(forced, 0).found
    assert dissimilar_pair_xor(forced, 1).found
    assert dissimilar_pair_xor(forced, 5).found
    with pytest.raises(ValueError):
        dissimilar_pair_xor(forced, -1)


@st.composite
def xor_formulas(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.integers(1, (1 << n) - 1), max_size=6))
    rhs = draw(st.lists(st.integers(0, 1), min_size=len(rows), max_size=len(rows)))
    return system_to_xor(F2System(n, tuple(rows), tuple(rhs)))


@given(xor_formulas())
def test_xor_pairs_match_oracle(phi):
    n = phi.num_vars
    best = max_hamming_pair(phi)
    if best is not None:
        assert best[1] == max_kernel_weight_bruteforce(xor_to_system(phi))
    for d in range(n + 1):
        r = diverse_pair_xor(phi, d)
        assert r.found == (best is not None and best[1] >= d)
        if r.found:
            assert evaluate(phi, r.alpha1) and evaluate(phi, r.alpha2)
            assert r.distance >= d
    for s in range(n + 1):
        r = dissimilar_pair_xor(phi, s)
        assert r.found == (best is not None and best[1] >= n - s)
        if r.found:
            assert evaluate(phi, r.alpha1) and evaluate(phi, r.alpha2)
            assert r.distance >= n - s


@given(xor_formulas(max_n=7))
def test_distance_is_weight_of_xor(phi):
    sols = enumerate_solutions(phi)
    sys = xor_to_system(phi)
    for a in sols:
        for b in sols:
            y = a ^ b
            assert hamming(a, b) == y.weight and not any(sys.apply(y))


def test_doubled_system_shape():
    sys = doubled_system(xor(2, (1, 2)), [2])
    assert sys.num_vars == 4
    assert sys.dense() == [[1, 1, 0, 0], [0, 0, 1, 1], [0, 1, 0, 1]]
    assert sys.rhs == (1, 1, 1)


def test_evenset_examples():
    phi = evenset_to_xor(F2System.from_dense([[1, 1, 0]]))
    assert phi.clauses[0].vars == (1, 2) and phi.clauses[0].rhs == 0
    phi = evenset_to_xor(F2System.from_dense([[1, 1], [0, 1]]))
    assert [(c.vars, c.rhs) for c in phi.clauses] == [((1, 2), 0), ((2,), 0)]
    phi = evenset_to_xor(F2System.from_dense([[1, 1]]))
    assert dissimilar_pair_xor(phi, 0).found
    with pytest.raises(FormulaError):
        evenset_to_xor(F2System.from_dense([[0, 0]]))


@given(st.integers(1, 9), st.data())
def test_evenset_roundtrip(n, data):
    rows = data.draw(st.lists(st.integers(1, (1 << n) - 1), max_size=5))
    sys = F2System(n, tuple(rows), (0,) * len(rows))
    phi = evenset_to_xor(sys)
    direct = [y for y in range(1 << n) if not any(sys.apply(Assignment(n, y)))]
    assert solution_ints(phi) == direct
    reencoded = xor_to_system(phi)
    assert solution_ints(system_to_xor(reencoded)) == direct if reencoded.rows else True
    best = max_kernel_weight_bruteforce(sys)
    for s in range(n + 1):
        assert dissimilar_pair_xor(phi, s).found == (best >= n - s)

import pytest
from hypothesis import given, strategies as st

from diversat.formula import CnfFormula
from diversat.oracle import (
    UNBOUNDED,
    CapExceededError,
    OracleCaps,
    best_k_tuple_bruteforce,
    enumerate_solutions,
    max_hamming_pair,
    max_induced_bipartite_bruteforce,
    max_pair_distance_naive,
    min_vertex_cover_bruteforce,
)
from diversat.reductions import Graph
from helpers import A, P3, cnf, formulas


def test_enumerate_examples():
    assert enumerate_solutions(cnf(2, (-1, -2))) == [A("00"), A("01"), A("10")]
    assert enumerate_solutions(cnf(1, (1,), (-1,))) == []
    assert enumerate_solutions(CnfFormula(1)) == [A("0"), A("1")]
    with pytest.raises(CapExceededError):
        enumerate_solutions(CnfFormula(21))


def test_max_pair_examples():
    (a, b), d = max_hamming_pair(P3)
    assert d == 3 and {str(a), str(b)} == {"101", "010"}
    assert max_hamming_pair(cnf(2, (1,), (2,)))[1] == 0
    assert max_hamming_pair(cnf(1, (1,), (-1,))) is None


@given(formulas(max_n=8, max_m=10, max_width=3))
def test_pair_loops_agree(phi):
    best = max_hamming_pair(phi)
    assert (None if best is None else best[1]) == max_pair_distance_naive(phi)


def test_vertex_cover_examples():
    assert min_vertex_cover_bruteforce(Graph(3, ((1, 2), (1, 3), (2, 3)))) == 2
    assert min_vertex_cover_bruteforce(Graph(4, ((1, 3), (1, 4), (2, 3), (2, 4)))) == 2
    assert min_vertex_cover_bruteforce(Graph(5, ())) == 0
    with pytest.raises(CapExceededError):
        min_vertex_cover_bruteforce(Graph(19, ()))


def test_bipartite_examples():
    assert max_induced_bipartite_bruteforce(Graph(3, ((1, 2), (1, 3), (2, 3)))) == 2
    assert max_induced_bipartite_bruteforce(Graph(3, ((1, 2), (2, 3)))) == 3
    k4 = Graph(4, tuple((u, v) for u in range(1, 5) for v in range(u + 1, 5)))
    assert max_induced_bipartite_bruteforce(k4) == 2


def test_k_tuple_examples():
    assert best_k_tuple_bruteforce(cnf(2, (1, -2), (-1, 2)), 2)[1] == 2
    assert best_k_tuple_bruteforce(cnf(2, (1, -2), (-1, 2)), 1)[1] == 0
    tup, f = best_k_tuple_bruteforce(cnf(2, (1, -2)), 3)  # solutions 00, 10, 11
    assert f == 4
    with pytest.raises(ValueError):
        best_k_tuple_bruteforce(cnf(1, (1,), (-1,)), 2)
    with pytest.raises(CapExceededError):
        best_k_tuple_bruteforce(CnfFormula(6), 4, OracleCaps(max_tuple_base=10), method="scan")


@given(formulas(max_n=5, max_m=6, max_width=3), st.integers(1, 4))
def test_k_tuple_bnb_matches_scan(phi, k):
    if max_hamming_pair(phi) is None:
        return
    _, f_scan = best_k_tuple_bruteforce(phi, k, method="scan")
    tup, f_bnb = best_k_tuple_bruteforce(phi, k, method="bnb")
    assert f_scan == f_bnb and len(tup) == k


def test_unbounded_repr():
    assert repr(UNBOUNDED) == "UNBOUNDED"
    with pytest.raises(ValueError):
        OracleCaps(max_vars=0)

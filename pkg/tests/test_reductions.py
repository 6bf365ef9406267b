import itertools

import pytest
from hypothesis import given, strategies as st

from diversat.formula import CnfFormula, classify, evaluate
from diversat.oracle import (
    enumerate_solutions,
    max_hamming_pair,
    max_induced_bipartite_bruteforce,
)
from diversat.reductions import (
    Graph,
    SetSystem,
    graph_to_2cnf,
    indicator_assignment,
    random_instance,
    set_splitting_to_cnf,
)
from helpers import A

K3 = Graph(3, ((1, 2), (1, 3), (2, 3)))
P3G = Graph(3, ((1, 2), (2, 3)))


def test_set_splitting_examples():
    ss = SetSystem(3, ({1, 2}, {2, 3}))
    assert set_splitting_to_cnf(ss, "antimonotone").to_ints() == [[-1, -2], [-2, -3]]
    assert set_splitting_to_cnf(ss, "monotone").to_ints() == [[1, 2], [2, 3]]
    single = set_splitting_to_cnf(SetSystem(1, ({1},)))
    assert single.to_ints() == [[-1]]
    best = max_hamming_pair(single)
    assert best[1] < 1
    with pytest.raises(ValueError):
        set_splitting_to_cnf(ss, "both")


def test_set_system_validation():
    with pytest.raises(ValueError):
        SetSystem(3, ({1, 2, 3, 4},))
    with pytest.raises(ValueError):
        SetSystem(2, ({3},))
    ss = SetSystem.parse(SetSystem(4, ({1, 2}, {3, 4, 1})).to_text())
    assert ss == SetSystem(4, ({1, 2}, {1, 3, 4}))


def test_graph_examples():
    assert graph_to_2cnf(K3).to_ints() == [[-1, -2], [-1, -3], [-2, -3]]
    assert graph_to_2cnf(P3G).to_ints() == [[-1, -2], [-2, -3]]
    assert graph_to_2cnf(Graph(4, ())) == CnfFormula(4)
    assert graph_to_2cnf(P3G, "monotone").to_ints() == [[1, 2], [2, 3]]


def test_graph_validation_and_io():
    with pytest.raises(ValueError):
        Graph(2, ((1, 1),))
    with pytest.raises(ValueError):
        Graph(2, ((1, 2), (2, 1)))
    with pytest.raises(ValueError):
        Graph(2, ((1, 3),))
    assert Graph.parse(K3.to_dimacs()) == K3


def test_indicator_examples():
    assert indicator_assignment({1, 3}, 3) == A("101")
    assert indicator_assignment(set(), 3) == A("000")
    assert evaluate(graph_to_2cnf(K3), indicator_assignment({2}, 3))
    with pytest.raises(ValueError):
        indicator_assignment({4}, 3)


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    return Graph(n, tuple(draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else ()))


@given(graphs())
def test_independent_sets_are_models(g):
    phi = graph_to_2cnf(g)
    for r in range(g.num_vertices + 1):
        for sub in itertools.combinations(range(1, g.num_vertices + 1), r):
            assert g.is_independent(sub) == evaluate(phi, indicator_assignment(sub, g.num_vertices))


@given(graphs())
def test_bipartite_iff(g):
    target = max_induced_bipartite_bruteforce(g)
    for pol in ("antimonotone", "monotone"):
        assert max_hamming_pair(graph_to_2cnf(g, pol))[1] == target


@st.composite
def set_systems(draw, max_u=7):
    u = draw(st.integers(1, max_u))
    sets = draw(st.lists(st.sets(st.integers(1, u), min_size=1, max_size=3), max_size=8))
    return SetSystem(u, tuple(sets))


@given(set_systems())
def test_splitting_iff(ss):
    u = ss.universe_size
    splittable = any(ss.is_split_by(p) for p in range(1 << u))
    for pol in ("antimonotone", "monotone"):
        best = max_hamming_pair(set_splitting_to_cnf(ss, pol))
        assert splittable == (best is not None and best[1] == u)


@given(graphs(max_n=6))
def test_antimonotone_downward_closed(g):
    phi = graph_to_2cnf(g)
    sols = set(enumerate_solutions(phi))
    for a in sols:
        for v in range(1, g.num_vertices + 1):
            assert a.with_value(v, 0) in sols


@pytest.mark.parametrize(
    "kind,check",
    [
        ("2cnf", lambda c: c.max_clause_width <= 2),
        ("horn", lambda c: c.horn),
        ("dual_horn", lambda c: c.dual_horn),
        ("double_horn", lambda c: c.double_horn),
    ],
)
def test_random_cnf_classes(kind, check):
    for seed in range(30):
        phi = random_instance(kind, {"n": 6, "m": 8}, seed)
        assert check(classify(phi))
        assert phi == random_instance(kind, {"n": 6, "m": 8}, seed)


def test_random_double_horn_clause_shapes():
    for seed in range(30):
        for c in random_instance("double_horn", {"n": 5, "m": 10}, seed).clauses:
            assert c.width == 1 or (c.positives, c.negatives) == (1, 1)


def test_random_planted_and_consistent():
    for seed in range(20):
        assert max_hamming_pair(random_instance("2cnf", {"n": 8, "m": 20, "planted": True}, seed))
        assert enumerate_solutions(random_instance("xor", {"n": 8, "m": 10}, seed))


def test_random_other_kinds():
    g = random_instance("graph", {"n": 6, "p": 0.5}, 3)
    assert isinstance(g, Graph) and g == random_instance("graph", {"n": 6, "p": 0.5}, 3)
    ss = random_instance("set_system", {"n": 6, "m": 5}, 3)
    assert isinstance(ss, SetSystem) and len(ss.sets) == 5


@pytest.mark.parametrize(
    "kind,params",
    [("bogus", {"n": 3}), ("2cnf", {"m": 3}), ("2cnf", {"n": 0, "m": 1}),
     ("graph", {"n": 3, "p": 2.0}), ("2cnf", {"n": 3, "m": 1.5})],
)
def test_random_invalid_params(kind, params):
    with pytest.raises(ValueError):
        random_instance(kind, params, 0)

"""Acceptance criteria 1-9, each at its instance count, tolerance and time budget.

Every test prints one ``[criterion N] PASS|FAIL ...`` line.  Seeds are fixed,
so the runs are reproducible.
"""

import random
import time

import pytest

from diversat import _backend
from diversat.dissimilar_fpt import (
    build_async_formula,
    build_gadget_graph,
    dissimilar_pair_2sat,
)
from diversat.diverse_pair import (
    chain_uncross,
    diverse_pair_xp,
    k_diverse_double_horn,
    sum_pairwise_distance,
)
from diversat.formula import evaluate, hamming
from diversat.oracle import (
    UNBOUNDED,
    best_k_tuple_bruteforce,
    enumerate_solutions,
    max_hamming_pair,
    max_induced_bipartite_bruteforce,
    max_kernel_weight_bruteforce,
    min_soft_deletions_bruteforce,
    min_soft_violations,
    min_vertex_cover_exact,
)
from diversat.reductions import graph_to_2cnf, random_instance, set_splitting_to_cnf
from diversat.satsolvers import double_horn_bounds, solve_2sat
from diversat.vertex_cover import vc_above_lp
from diversat.xor_affine import dissimilar_pair_xor, diverse_pair_xor, xor_to_system
from helpers import CHAIN4


@pytest.fixture
def report(capsys):
    """Run a criterion body, print its verdict line, then re-raise any failure."""

    def _report(number, budget, body):
        start = time.perf_counter()
        err = None
        try:
            detail = body()
        except AssertionError as exc:
            detail, err = f"assertion failed: {exc}".splitlines()[0], exc
        elapsed = time.perf_counter() - start
        if err is None and elapsed > budget:
            err = AssertionError(f"took {elapsed:.1f}s, budget {budget}s")
            detail = str(err)
        verdict = "PASS" if err is None else "FAIL"
        with capsys.disabled():
            print(f"\n[criterion {number}] {verdict} {detail} "
                  f"({elapsed:.1f}s / {budget}s, backend={_backend.BACKEND})")
        if err is not None:
            raise err

    return _report


def _seeded(kind, count, param_fn, keep=lambda inst: True, start=0):
    """``count`` instances from consecutive seeds that pass ``keep``."""
    out, seed = [], start
    while len(out) < count:
        rng = random.Random(10_000 + seed)
        inst = random_instance(kind, param_fn(rng), seed)
        if keep(inst):
            out.append(inst)
        seed += 1
    return out


def _oracle_dist(phi):
    best = max_hamming_pair(phi)
    return None if best is None else best[1]


@pytest.mark.parametrize("kind", ["2cnf", "horn", "dual_horn"])
def test_criterion_1_xp_matches_oracle(report, kind):
    def body():
        params = lambda r: {"n": r.randint(1, 12), "m": r.randint(0, 20)}
        checked = 0
        for phi in _seeded(kind, 500, params):
            dmax = _oracle_dist(phi)
            for d in range(phi.num_vars + 1):
                r = diverse_pair_xp(phi, d)
                assert r.found == (dmax is not None and dmax >= d), (phi.to_ints(), d)
                if r.found:
                    assert evaluate(phi, r.alpha1) and evaluate(phi, r.alpha2)
                    assert hamming(r.alpha1, r.alpha2) >= d
                checked += 1
        return f"{kind}: 500 formulas, {checked} (phi, d) checks agree"

    report("1", 300 / 3, body)


def test_criterion_2_async_identity(report):
    def body():
        params = lambda r: {"n": r.randint(1, 8), "m": r.randint(0, 12)}
        formulas = _seeded("2cnf", 200, params, keep=lambda p: solve_2sat(p) is not None)
        for phi in formulas:
            k = min_soft_deletions_bruteforce(build_async_formula(phi))
            assert k is not UNBOUNDED and phi.num_vars - _oracle_dist(phi) == k, phi.to_ints()
        return "200 satisfiable 2CNF: n - max distance == min soft deletions"

    report("2", 120, body)


def test_criterion_3_gadget_chain(report):
    def body():
        rng = random.Random(3)
        params = lambda r: {"n": r.randint(1, 5), "m": r.randint(1, 6), "unit_prob": 0.2}
        yes = 0
        for phi in _seeded("2cnf", 100, params):
            m = len(phi.clauses)
            soft = {i for i in range(m) if rng.random() < 0.5}
            s = rng.randint(0, 2)
            g = build_gadget_graph(phi, soft, s)
            k = min_soft_violations(phi, soft)
            truth = k is not UNBOUNDED and k <= s
            res = vc_above_lp(g, g.N + s)
            assert res.found == truth, (phi.to_ints(), sorted(soft), s)
            assert (min_vertex_cover_exact(g) <= g.N + s) == truth
            if res.found:
                assert len(res.cover) <= g.N + s
                assert all(u in res.cover or v in res.cover for u, v in g.edge_pairs())
            yes += truth
        return f"100 (phi, S, s): vc_above_lp == Almost-2SAT == exact cover ({yes} yes)"

    report("3", 300, body)


def test_criterion_4_chain4_fixture(report):
    def body():
        g = build_gadget_graph(CHAIN4, [1, 2], 1)
        assert g.num_vertices == 24
        assert (len(g.variable_edges), len(g.hard_edges), len(g.soft_edges)) == (40, 2, 2)
        assert g.N == 12
        ends = sorted(v for e in g.matching for v in e)
        assert ends == list(range(1, 25)) and set(g.matching) <= set(g.variable_edges)
        res = vc_above_lp(g, 12)
        assert res.found and len(res.cover) == 12
        assert min_vertex_cover_exact(g) == 12
        assert min_soft_violations(CHAIN4, {1, 2}) == 0
        return "24 vertices, 40/2/2 edges, N=12, perfect matching, cover of size 12"

    report("4", 10, body)


def test_criterion_5_dissimilar_end_to_end(report):
    def body():
        params = lambda r: {"n": r.randint(1, 10), "m": r.randint(0, 16), "unit_prob": 0.1}
        found = 0
        for phi in _seeded("2cnf", 300, params):
            n = phi.num_vars
            dmax = _oracle_dist(phi)
            for s in range(n + 1):
                r = dissimilar_pair_2sat(phi, s)
                assert r.found == (dmax is not None and dmax >= n - s), (phi.to_ints(), s)
                if r.found:
                    assert evaluate(phi, r.alpha1) and evaluate(phi, r.alpha2)
                    assert hamming(r.alpha1, r.alpha2) >= n - s
                    found += 1
        return f"300 2CNF, every s agrees ({found} pairs verified)"

    report("5", 300, body)


def test_criterion_6_fpt_scaling(report):
    def body():
        params = lambda r: {"n": 200, "m": 300, "planted": True, "unit_prob": 0.0}
        phi = _seeded("2cnf", 1, params, keep=lambda p: solve_2sat(p) is not None)[0]
        rows = []
        for s in range(5):
            t = time.perf_counter()
            r = dissimilar_pair_2sat(phi, s)
            dt = time.perf_counter() - t
            assert dt < 60, f"s={s} took {dt:.1f}s"
            rows.append(f"s={s}:{dt:.2f}s/{r.stats.get('branches', '-')}br")
        return "n=200 m=300 growth " + " ".join(rows)

    report("6", 5 * 60, body)


def test_criterion_7_xor(report):
    def body():
        params = lambda r: {"n": r.randint(1, 12), "m": r.randint(0, 10), "max_width": 4}
        for phi in _seeded("xor", 300, params):
            n = phi.num_vars
            dmax = _oracle_dist(phi)
            assert dmax is not None
            assert dmax == max_kernel_weight_bruteforce(xor_to_system(phi))
            for d in range(n + 1):
                r = diverse_pair_xor(phi, d)
                assert r.found == (dmax >= d)
                if r.found:
                    assert evaluate(phi, r.alpha1) and evaluate(phi, r.alpha2) and r.distance >= d
            for s in range(n + 1):
                r = dissimilar_pair_xor(phi, s)
                assert r.found == (dmax >= n - s)
                if r.found:
                    assert evaluate(phi, r.alpha1) and evaluate(phi, r.alpha2)
                    assert r.distance >= n - s
        return "300 consistent systems: pair distance == kernel weight, all d and s agree"

    report("7", 180, body)


def test_criterion_8_double_horn(report):
    def body():
        params = lambda r: {"n": r.randint(1, 10), "m": r.randint(0, 12)}
        formulas = _seeded("double_horn", 200, params,
                           keep=lambda p: double_horn_bounds(p) is not None)
        for phi in formulas:
            lo, hi = double_horn_bounds(phi)
            for k in range(1, 5):
                res = k_diverse_double_horn(phi, k)
                assert all(evaluate(phi, a) for a in res.assignments)
                assert res.objective == sum_pairwise_distance(res.assignments)
                assert res.objective == best_k_tuple_bruteforce(phi, k)[1], (phi.to_ints(), k)
                assert res.objective == (k // 2) * ((k + 1) // 2) * (hi.weight - lo.weight)
        rng = random.Random(8)
        for t in range(1000):
            phi = formulas[t % len(formulas)]
            sols = enumerate_solutions(phi)
            k = rng.randint(2, 5)
            tup = [rng.choice(sols) for _ in range(k)]
            i, j = sorted(rng.sample(range(1, k + 1), 2))
            out = chain_uncross(tup, i, j)
            assert sum_pairwise_distance(out) == sum_pairwise_distance(tup)
            assert all(evaluate(phi, a) for a in out)
        return "200 formulas x k=1..4 match the tuple oracle and closed form; 1000 uncrossings"

    report("8", 180, body)


def test_criterion_9_reductions(report):
    def body():
        sets = _seeded("set_system", 200, lambda r: {"n": r.randint(1, 8), "m": r.randint(1, 10)})
        yes = 0
        for ss in sets:
            u = ss.universe_size
            splittable = any(ss.is_split_by(p) for p in range(1 << u))
            for pol in ("antimonotone", "monotone"):
                assert splittable == (_oracle_dist(set_splitting_to_cnf(ss, pol)) == u)
            yes += splittable
        graphs = _seeded("graph", 200, lambda r: {"n": r.randint(1, 7), "p": r.random()})
        for g in graphs:
            target = max_induced_bipartite_bruteforce(g)
            for pol in ("antimonotone", "monotone"):
                assert _oracle_dist(graph_to_2cnf(g, pol)) == target
        return f"200 set systems ({yes} splittable) and 200 graphs: iff holds"

    report("9", 300, body)

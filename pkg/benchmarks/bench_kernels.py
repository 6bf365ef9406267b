"""Time the compiled kernels against the pure-Python fallback on identical inputs.

Usage: python3 benchmarks/bench_kernels.py [--repeat R] [--seed S]
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
import time

from diversat import _pykernels as py
from diversat.dissimilar_fpt import build_async_formula, build_gadget_graph
from diversat.reductions import graph_to_2cnf, random_instance
from diversat.satsolvers import horn_rules, implication_closure, solve_2sat
from diversat.vertex_cover import to_csr

try:
    from diversat import _ckernels as c
except ImportError:
    c = None


def _masks(rng: random.Random, n: int, m: int, width: int = 3):
    pos, neg = [], []
    for _ in range(m):
        p = q = 0
        for v in rng.sample(range(n), width):
            if rng.random() < 0.5:
                p |= 1 << v
            else:
                q |= 1 << v
        pos.append(p)
        neg.append(q)
    return pos, neg


def cases(seed: int):
    rng = random.Random(seed)
    n = 16
    pos, neg = _masks(rng, n, 20)
    yield "cnf_solutions n=16", lambda k: k.cnf_solutions(n, pos, neg)

    sols = py.cnf_solutions(n, pos, neg)[:3000]
    yield f"max_pair_distance |S|={len(sols)}", lambda k: k.max_pair_distance(sols)

    basis = [rng.getrandbits(40) for _ in range(18)]
    yield "max_weight_span dim=18", lambda k: k.max_weight_span(basis, 41)

    # antimonotone 2CNF of a random graph: many models, so the search does real work
    phi = graph_to_2cnf(random_instance("graph", {"n": 22, "p": 0.3}, seed))
    clo = implication_closure(phi)
    rules = horn_rules(phi)
    yield "xp_search_2cnf n=22 d=all", lambda k: [k.xp_search_2cnf(22, d, clo) for d in range(23)]
    yield "xp_search_horn n=22 d=all", lambda k: [k.xp_search_horn(22, d, *rules) for d in range(23)]

    big = random_instance("2cnf", {"n": 200, "m": 300, "planted": True, "unit_prob": 0.0}, seed)
    assert solve_2sat(big) is not None
    inst = build_async_formula(big)
    g = build_gadget_graph(inst.phi_star, inst.soft, 4)
    ip, ix = to_csr(g.num_vertices, g.edge_pairs())
    warm = [(u - 1, v - 1) for u, v in g.matching]
    nv, budget = g.num_vertices, g.budget
    yield f"vc_search gadget |V|={nv} s=4", lambda k: k.vc_search(nv, ip, ix, budget, warm)


def time_it(fn, repeat: int) -> float:
    runs = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t)
    return statistics.median(runs)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if c is None:
        print("compiled kernels not built; only the Python timings are shown", file=sys.stderr)
    print(f"{'kernel':34} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in cases(args.seed):
        t_py = time_it(lambda: fn(py), args.repeat)
        if c is None:
            print(f"{name:34} {t_py:10.4f} {'-':>10} {'-':>8}")
            continue
        assert fn(py) == fn(c), f"backends disagree on {name}"
        t_c = time_it(lambda: fn(c), args.repeat)
        print(f"{name:34} {t_py:10.4f} {t_c:10.4f} {t_py / max(t_c, 1e-9):7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

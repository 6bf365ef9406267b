"""Command-line front end: classify, solve, k-diverse, gen, check.

Exit codes: 0 found / agree, 1 not found / unsat / disagree, 2 input or cap
error, 3 unsupported class.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence, Union

from diversat import dissimilar_fpt, diverse_pair, oracle, xor_affine
from diversat.dimacs import (
    ParseError,
    emit_dimacs,
    emit_xdimacs,
    is_matrix,
    is_xdimacs,
    parse_dimacs,
    parse_matrix,
    parse_xdimacs,
)
from diversat.formula import (
    CnfFormula,
    FormulaError,
    UnsupportedClassError,
    XorFormula,
    classify,
    evaluate,
    hamming,
    var_bit,
)
from diversat.reductions import (
    KINDS,
    Graph,
    SetSystem,
    graph_to_2cnf,
    random_instance,
    set_splitting_to_cnf,
)
from diversat.satsolvers import F2System

Formula = Union[CnfFormula, XorFormula]

EXIT_FOUND, EXIT_NOT_FOUND, EXIT_INPUT, EXIT_UNSUPPORTED = 0, 1, 2, 3
STATUSES = ("found", "not-found", "unsat", "unsupported-class", "error", "agree", "disagree")
EXIT_OF_STATUS = {
    "found": EXIT_FOUND,
    "agree": EXIT_FOUND,
    "not-found": EXIT_NOT_FOUND,
    "unsat": EXIT_NOT_FOUND,
    "disagree": EXIT_NOT_FOUND,
    "error": EXIT_INPUT,
    "unsupported-class": EXIT_UNSUPPORTED,
}
CLASSES = ("2cnf", "horn", "dual-horn", "double-horn", "xor")

REPORT_SCHEMA = {
    "type": "object",
    "required": ["status", "distance", "alpha1", "alpha2", "params", "stats"],
    "properties": {
        "status": {"enum": list(STATUSES)},
        "distance": {"type": ["integer", "null"], "minimum": 0},
        "alpha1": {"type": ["string", "null"], "pattern": "^[01]*$"},
        "alpha2": {"type": ["string", "null"], "pattern": "^[01]*$"},
        "params": {"type": "object"},
        "stats": {"type": "object"},
        "message": {"type": "string"},
        "assignments": {"type": "array", "items": {"type": "string", "pattern": "^[01]*$"}},
        "objective": {"type": "integer", "minimum": 0},
    },
}


class InputError(Exception):
    pass


class Unsupported(Exception):
    pass


# --- reports -----------------------------------------------------------------


def make_report(status: str, params: dict, stats: dict, result=None, **extra) -> dict:
    rep = {"status": status, "distance": None, "alpha1": None, "alpha2": None,
           "params": params, "stats": stats}
    if result is not None and result.found:
        rep.update(distance=result.distance, alpha1=str(result.alpha1), alpha2=str(result.alpha2))
    rep.update(extra)
    return rep


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    return str(obj)


def emit(rep: dict, as_json: bool, out=None) -> int:
    out = out or sys.stdout
    if as_json:
        print(json.dumps(_jsonable(rep), sort_keys=True), file=out)
    else:
        st = rep["status"]
        parts = [st.upper() if st in ("agree", "disagree") else st]
        if rep["distance"] is not None:
            parts.append(f"distance={rep['distance']}")
        if rep["alpha1"] is not None:
            parts.append(f"alpha1={rep['alpha1']} alpha2={rep['alpha2']}")
        if "objective" in rep:
            parts.append(f"objective={rep['objective']} tuple={','.join(rep['assignments'])}")
        parts += [f"{k}={v}" for k, v in rep["params"].items()]
        if "message" in rep:
            parts.append(f"({rep['message']})")
        print(" ".join(parts), file=out)
    return EXIT_OF_STATUS[rep["status"]]


# --- input -------------------------------------------------------------------


def matrix_to_xor(text: str) -> XorFormula:
    cols, rows, rhs = parse_matrix(text)
    masks = [sum(var_bit(cols, j + 1) for j, b in enumerate(r) if b) for r in rows]
    rhs = rhs if rhs is not None else [0] * len(rows)
    for m, b in zip(masks, rhs):
        if not m and b:
            raise ParseError("row 0 = 1 makes the system inconsistent; not expressible as XOR clauses")
    sys_ = F2System(cols, tuple(m for m in masks if m), tuple(b for m, b in zip(masks, rhs) if m))
    return xor_affine.system_to_xor(sys_)


def load_formula(path: str) -> Formula:
    try:
        with open(path, "rb") as fh:
            text = fh.read().decode("utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        if is_xdimacs(text):
            return parse_xdimacs(text)
        if is_matrix(text):
            return matrix_to_xor(text)
        return parse_dimacs(text)
    except (ParseError, FormulaError) as exc:
        raise InputError(f"{path}: {exc}") from None


def detect_class(phi: Formula) -> Optional[str]:
    """Most specific supported class, or ``None``."""
    if isinstance(phi, XorFormula):
        return "xor"
    cls = classify(phi)
    if cls.double_horn:
        return "double-horn"
    if cls.horn:
        return "horn"
    if cls.dual_horn:
        return "dual-horn"
    if cls.two_cnf:
        return "2cnf"
    return None


def _holds(phi: Formula, name: str) -> bool:
    if name == "xor":
        return isinstance(phi, XorFormula)
    if isinstance(phi, XorFormula):
        return False
    cls = classify(phi)
    return {"2cnf": cls.two_cnf, "horn": cls.horn, "dual-horn": cls.dual_horn,
            "double-horn": cls.double_horn}[name]


# --- dispatch ----------------------------------------------------------------


def run_solver(phi: Formula, mode: str, threshold: int, forced: Optional[str] = None,
               cap: Optional[int] = None):
    """Dispatch to the solver for ``phi``'s class; returns ``(result, class)``.

    Raises :class:`Unsupported` when no algorithm covers the combination.
    """
    if forced is not None:
        if not _holds(phi, forced):
            raise Unsupported(f"input is not {forced}")
        kind = forced
    else:
        kind = detect_class(phi)
    if kind is None:
        raise Unsupported("no supported class (need 2CNF, Horn, dual Horn, double Horn or XOR)")
    n = phi.num_vars
    cfg = xor_affine.KernelSearchConfig(enumeration_cap=cap) if cap is not None else xor_affine.KernelSearchConfig()
    if mode == "diverse":
        if kind == "xor":
            return xor_affine.diverse_pair_xor(phi, threshold, cfg), kind
        if kind == "double-horn":
            return diverse_pair.diverse_pair_double_horn(phi, threshold), kind
        return diverse_pair.diverse_pair_xp(phi, threshold), kind
    if kind == "xor":
        return xor_affine.dissimilar_pair_xor(phi, threshold), kind
    if kind == "double-horn":
        return diverse_pair.diverse_pair_double_horn(phi, max(n - threshold, 0)), kind
    if kind in ("horn", "dual-horn") and not (forced is None and classify(phi).two_cnf):
        raise Unsupported(
            "dissimilar pair is NP-hard on antimonotone 3CNF (hence Horn) and monotone "
            "3CNF (hence dual Horn) formulas, by reduction from set splitting"
        )
    return dissimilar_fpt.dissimilar_pair_2sat(phi, threshold), "2cnf"


def _threshold(args) -> int:
    val = args.d if args.mode == "diverse" else args.s
    if val is None:
        raise InputError(f"--{'d' if args.mode == 'diverse' else 's'} is required for mode {args.mode}")
    if val < 0:
        raise InputError("threshold must be non-negative")
    return val


# --- subcommands -------------------------------------------------------------


def cmd_classify(args) -> int:
    phi = load_formula(args.input)
    if isinstance(phi, XorFormula):
        label = "xor"
    else:
        label = classify(phi).label()
    if args.json:
        print(json.dumps({"input": args.input, "classes": label.split(), "num_vars": phi.num_vars,
                          "num_clauses": len(phi.clauses)}))
    else:
        print(label)
    return 0


def cmd_solve(args) -> int:
    phi = load_formula(args.input)
    t = _threshold(args)
    params = {"mode": args.mode, ("d" if args.mode == "diverse" else "s"): t, "n": phi.num_vars}
    start = time.perf_counter()
    try:
        res, kind = run_solver(phi, args.mode, t, args.cls, args.cap)
    except Unsupported as exc:
        params["class"] = args.cls or detect_class(phi)
        return emit(make_report("unsupported-class", params, {}, message=str(exc)), args.json)
    params["class"] = kind
    stats = {"elapsed": round(time.perf_counter() - start, 6), **res.stats}
    if res.found:
        status = "found"
    else:
        status = "unsat" if res.stats.get("unsat") else "not-found"
    return emit(make_report(status, params, stats, res), args.json)


def cmd_k_diverse(args) -> int:
    phi = load_formula(args.input)
    if args.k is None or args.k < 1:
        raise InputError("--k must be a positive integer")
    params = {"k": args.k, "n": phi.num_vars}
    if isinstance(phi, XorFormula) or not classify(phi).double_horn:
        return emit(make_report("unsupported-class", params, {},
                                message="k-diverse tuples need a double Horn formula"), args.json)
    start = time.perf_counter()
    try:
        res = diverse_pair.k_diverse_double_horn(phi, args.k)
    except diverse_pair.UnsatisfiableError:
        return emit(make_report("unsat", params, {}), args.json)
    stats = {"elapsed": round(time.perf_counter() - start, 6)}
    a = res.assignments
    rep = make_report("found", params, stats, assignments=[str(x) for x in a],
                      objective=res.objective)
    rep.update(alpha1=str(a[0]), alpha2=str(a[-1]), distance=hamming(a[0], a[-1]))
    return emit(rep, args.json)


GEN_KINDS = KINDS + ("set-splitting", "graph-2cnf")


def _gen_params(args) -> dict:
    params = {}
    for key in ("n", "m", "p", "max_width", "unit_prob"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    if args.inconsistent:
        params["consistent"] = False
    return params


def cmd_gen(args) -> int:
    kind = args.kind if args.kind in ("set-splitting", "graph-2cnf") else args.kind.replace("-", "_")
    meta = {"kind": args.kind, "seed": args.seed}
    try:
        if kind in ("set-splitting", "graph-2cnf"):
            polarity = "monotone" if args.monotone else "antimonotone"
            meta["polarity"] = polarity
            if kind == "set-splitting":
                ss = (SetSystem.parse(_read(args.input)) if args.input
                      else random_instance("set_system", _gen_params(args), args.seed))
                inst = set_splitting_to_cnf(ss, polarity)
                if ss.universe_size <= args.truth_cap:
                    u = ss.universe_size
                    meta["splittable"] = any(ss.is_split_by(p) for p in range(1 << u))
                    meta["pair_at_distance_n"] = meta["splittable"]
            else:
                g = (Graph.parse(_read(args.input)) if args.input
                     else random_instance("graph", _gen_params(args), args.seed))
                inst = graph_to_2cnf(g, polarity)
                if g.num_vertices <= min(args.truth_cap, oracle.DEFAULT_CAPS.max_graph_vertices):
                    meta["max_induced_bipartite"] = oracle.max_induced_bipartite_bruteforce(g)
                    meta["max_pair_distance"] = meta["max_induced_bipartite"]
        else:
            inst = random_instance(kind, _gen_params(args), args.seed)
    except (ValueError, ParseError) as exc:
        raise InputError(str(exc)) from None

    if isinstance(inst, CnfFormula):
        text = emit_dimacs(inst)
        meta["class"] = classify(inst).label()
    elif isinstance(inst, XorFormula):
        text = emit_xdimacs(inst)
        meta["class"] = "xor"
    else:
        text = inst.to_dimacs() if isinstance(inst, Graph) else inst.to_text()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        meta["output"] = args.output
    else:
        sys.stdout.write(text)
    info = json.dumps(meta, sort_keys=True) if args.json else " ".join(f"{k}={v}" for k, v in meta.items())
    print(info, file=sys.stderr if not args.output else sys.stdout)
    return 0


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _oracle_distance(phi: Formula, caps: oracle.OracleCaps) -> Optional[int]:
    best = oracle.max_hamming_pair(phi, caps)
    return None if best is None else best[1]


def _check_one(phi: Formula, mode: str, t: int, dmax: Optional[int], forced, cap) -> dict:
    n = phi.num_vars
    need = t if mode == "diverse" else n - t
    expect = dmax is not None and dmax >= need
    res, _ = run_solver(phi, mode, t, forced, cap)
    ok = res.found == expect
    if ok and res.found:
        ok = (evaluate(phi, res.alpha1) and evaluate(phi, res.alpha2)
              and hamming(res.alpha1, res.alpha2) >= need)
    return {"threshold": t, "expected": expect, "got": res.found, "ok": ok}


def cmd_check(args) -> int:
    phi = load_formula(args.input)
    n = phi.num_vars
    caps = oracle.OracleCaps(max_vars=args.oracle_cap) if args.oracle_cap else oracle.DEFAULT_CAPS
    key = "d" if args.mode == "diverse" else "s"
    given = args.d if args.mode == "diverse" else args.s
    thresholds = [given] if given is not None else list(range(n + 1))
    params = {"mode": args.mode, key: given if given is not None else "all", "n": n}
    start = time.perf_counter()
    try:
        dmax = _oracle_distance(phi, caps)
        with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
            rows = list(pool.map(
                lambda t: _check_one(phi, args.mode, t, dmax, args.cls, args.cap), thresholds))
    except Unsupported as exc:
        return emit(make_report("unsupported-class", params, {}, message=str(exc)), args.json)
    bad = [r for r in rows if not r["ok"]]
    stats = {"elapsed": round(time.perf_counter() - start, 6), "oracle_max_distance": dmax,
             "checked": len(rows), "mismatches": [r["threshold"] for r in bad]}
    status = "disagree" if bad else "agree"
    return emit(make_report(status, params, stats), args.json)


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diversat", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--threads", type=int, default=1, help="worker cap (default 1)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="print the formula's classes")
    c.add_argument("input")
    c.set_defaults(func=cmd_classify)

    def threshold_args(sp):
        sp.add_argument("input")
        sp.add_argument("--mode", choices=("diverse", "dissimilar"), default="diverse")
        sp.add_argument("--d", type=int, help="minimum distance (diverse mode)")
        sp.add_argument("--s", type=int, help="maximum agreement (dissimilar mode)")
        sp.add_argument("--class", dest="cls", choices=CLASSES, help="force a dispatch class")
        sp.add_argument("--cap", type=int, help="XOR kernel enumeration cap (dimension)")

    s = sub.add_parser("solve", parents=[common], help="decide diverse / dissimilar pair")
    threshold_args(s)
    s.set_defaults(func=cmd_solve)

    k = sub.add_parser("k-diverse", parents=[common], help="k-tuple of a double Horn formula")
    k.add_argument("input")
    k.add_argument("--k", type=int, required=True)
    k.set_defaults(func=cmd_k_diverse)

    g = sub.add_parser("gen", parents=[common], help="generate an instance")
    g.add_argument("kind", choices=GEN_KINDS + ("dual-horn", "double-horn", "set-system"))
    g.add_argument("--n", type=int, help="variables / vertices / universe size")
    g.add_argument("--m", type=int, help="clauses / sets")
    g.add_argument("--p", type=float, help="edge probability (graph kinds)")
    g.add_argument("--max-width", dest="max_width", type=int)
    g.add_argument("--unit-prob", dest="unit_prob", type=float)
    g.add_argument("--inconsistent", action="store_true", help="xor: do not plant a solution")
    pol = g.add_mutually_exclusive_group()
    pol.add_argument("--antimonotone", action="store_true", help="negative clauses (default)")
    pol.add_argument("--monotone", action="store_true", help="positive clauses")
    g.add_argument("--input", help="set system / graph file for the reduction kinds")
    g.add_argument("--truth-cap", dest="truth_cap", type=int, default=12,
                   help="largest size for which ground truth is brute-forced")
    g.add_argument("-o", "--output", help="output path (default stdout)")
    g.set_defaults(func=cmd_gen)

    ch = sub.add_parser("check", parents=[common], help="compare solver with brute force")
    threshold_args(ch)
    ch.add_argument("--oracle-cap", dest="oracle_cap", type=int,
                    help="max variables for brute force (default 20)")
    ch.set_defaults(func=cmd_check)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except oracle.CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnsupportedClassError as exc:
        print(f"unsupported-class: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())

import json

import jsonschema
import pytest

from diversat import cli, diverse_pair
from diversat.dimacs import emit_dimacs, emit_xdimacs
from diversat.formula import classify
from diversat.reductions import random_instance
from helpers import CHAIN4, P3, cnf, xor


@pytest.fixture
def write(tmp_path):
    def _write(obj, name="f.cnf"):
        p = tmp_path / name
        if isinstance(obj, str):
            p.write_text(obj)
        elif hasattr(obj, "clauses") and obj.clauses and hasattr(obj.clauses[0], "rhs"):
            p.write_text(emit_xdimacs(obj))
        else:
            p.write_text(emit_dimacs(obj))
        return str(p)
    return _write


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    rep = json.loads(out)
    jsonschema.validate(rep, cli.REPORT_SCHEMA)
    assert cli.EXIT_OF_STATUS[rep["status"]] == code
    return code, rep


def test_classify(capsys, write):
    assert run(capsys, "classify", write(CHAIN4)) == (0, "2cnf dual-horn\n", "")
    assert run(capsys, "classify", write(P3))[1] == "2cnf antimonotone horn\n"
    assert run(capsys, "classify", write(xor(2, (1, 2)), "f.xcnf"))[1] == "xor\n"
    code, out, _ = run(capsys, "classify", write(CHAIN4), "--json")
    assert json.loads(out)["classes"] == ["2cnf", "dual-horn"]


def test_classify_parse_error(capsys, write):
    code, _, err = run(capsys, "classify", write("p cnf x y\n"))
    assert code == 2 and err
    assert run(capsys, "classify", "/nonexistent/file.cnf")[0] == 2


def test_matrix_input(capsys, write):
    path = write("1 2\n1 1\nb 1\n", "m.txt")
    assert run(capsys, "classify", path)[1] == "xor\n"
    code, rep = run_json(capsys, "solve", path, "--d", "2")
    assert code == 0 and rep["distance"] == 2


def test_solve_examples(capsys, write):
    code, rep = run_json(capsys, "solve", write(P3), "--d", "3")
    assert code == 0 and rep["distance"] == 3 and rep["params"]["class"] == "horn"
    assert {rep["alpha1"], rep["alpha2"]} == {"101", "010"}
    unique = write(cnf(2, (1,), (2,)))
    code, rep = run_json(capsys, "solve", unique, "--mode", "dissimilar", "--s", "0")
    assert code == 1 and rep["status"] == "not-found" and rep["alpha1"] is None
    three = write(cnf(3, (1, 2, 3), (-1, -2, -3)))
    for mode, flag in (("diverse", "--d"), ("dissimilar", "--s")):
        code, rep = run_json(capsys, "solve", three, "--mode", mode, flag, "1")
        assert code == 3 and rep["status"] == "unsupported-class"


def test_solve_dispatch(capsys, write):
    horn3 = write(cnf(3, (-1, -2, 3), (-1, 2)))
    code, rep = run_json(capsys, "solve", horn3, "--mode", "dissimilar", "--s", "1")
    assert code == 3 and "set splitting" in rep["message"]
    code, rep = run_json(capsys, "solve", horn3, "--d", "2")
    assert code == 0 and rep["params"]["class"] == "horn"
    dh = write(cnf(2, (1, -2)))
    code, rep = run_json(capsys, "solve", dh, "--mode", "dissimilar", "--s", "0")
    assert code == 0 and rep["params"]["class"] == "double-horn"
    code, rep = run_json(capsys, "solve", write(CHAIN4), "--mode", "dissimilar", "--s", "1")
    assert rep["params"]["class"] == "2cnf" and rep["stats"]["method"] == "fpt"
    code, rep = run_json(capsys, "solve", write(P3), "--d", "2", "--class", "xor")
    assert code == 3
    code, rep = run_json(capsys, "solve", write(P3), "--mode", "dissimilar", "--s", "0",
                         "--class", "horn")
    assert code == 3
    xf = write(xor(3, (1, 2), (3,)), "x.xcnf")
    code, rep = run_json(capsys, "solve", xf, "--mode", "dissimilar", "--s", "0")
    assert code == 1 and rep["params"]["class"] == "xor"


def test_solve_unsat(capsys, write):
    code, rep = run_json(capsys, "solve", write(cnf(1, (1,), (-1,))), "--d", "0")
    assert code == 1 and rep["status"] in ("unsat", "not-found")


def test_solve_threshold_errors(capsys, write):
    assert run(capsys, "solve", write(P3))[0] == 2
    assert run(capsys, "solve", write(P3), "--d", "-1")[0] == 2


def test_cap_exceeded(capsys, write):
    big = write(xor(12, (1, 2)), "x.xcnf")
    code, out, err = run(capsys, "solve", big, "--d", "12", "--cap", "2")
    assert code == 2 and err


def test_human_output(capsys, write):
    code, out, _ = run(capsys, "solve", write(P3), "--d", "3")
    assert out.startswith("found distance=3 ") and out.count("\n") == 1


def test_k_diverse(capsys, write):
    free = write(cnf(2, (1, -1)))
    code, rep = run_json(capsys, "k-diverse", free, "--k", "3")
    assert code == 0 and rep["objective"] == 4 and len(rep["assignments"]) == 3
    code, rep = run_json(capsys, "k-diverse", free, "--k", "1")
    assert code == 0 and rep["objective"] == 0
    code, rep = run_json(capsys, "k-diverse", write(P3), "--k", "2")
    assert code == 3
    assert run(capsys, "k-diverse", free, "--k", "0")[0] == 2
    code, rep = run_json(capsys, "k-diverse", write(cnf(1, (1,), (-1,))), "--k", "2")
    assert code == 1 and rep["status"] == "unsat"


@pytest.mark.parametrize("kind", ["2cnf", "horn", "dual-horn", "double-horn", "xor"])
def test_gen_deterministic_and_class(capsys, tmp_path, kind):
    outs = []
    for name in ("a", "b"):
        path = str(tmp_path / name)
        code, _, _ = run(capsys, "gen", kind, "--n", "6", "--m", "9", "--seed", "7", "-o", path)
        assert code == 0
        outs.append(open(path, "rb").read())
    assert outs[0] == outs[1]
    code, out, _ = run(capsys, "classify", str(tmp_path / "a"))
    assert kind in out.split() or (kind == "double-horn" and "double-horn" in out)
    code, rep = run_json(capsys, "solve", str(tmp_path / "a"), "--d", "1")
    assert rep["params"]["class"] == cli.detect_class(cli.load_formula(str(tmp_path / "a")))


def test_gen_reductions(capsys, write):
    tri = write("p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n", "g.txt")
    code, out, err = run(capsys, "gen", "graph-2cnf", "--input", tri)
    assert code == 0 and "p cnf 3 3" in out and "max_induced_bipartite=2" in err
    code, out, err = run(capsys, "gen", "set-splitting", "--antimonotone", "--n", "6",
                         "--m", "5", "--seed", "2")
    assert code == 0 and "splittable=" in err
    assert all(int(t) < 0 for line in out.splitlines()[1:] for t in line.split()[:-1])
    code, out, _ = run(capsys, "gen", "set-splitting", "--monotone", "--n", "4", "--m", "3")
    assert all(int(t) > 0 for line in out.splitlines()[1:] for t in line.split()[:-1])
    assert run(capsys, "gen", "2cnf", "--m", "3")[0] == 2


def test_check_agrees(capsys, write):
    for seed in range(5):
        phi = random_instance("2cnf", {"n": 6, "m": 7}, seed)
        code, rep = run_json(capsys, "check", write(phi), "--threads", "2")
        assert code == 0 and rep["status"] == "agree"
        code, rep = run_json(capsys, "check", write(phi), "--mode", "dissimilar")
        assert code == 0
        x = random_instance("xor", {"n": 6, "m": 3}, seed)
        code, rep = run_json(capsys, "check", write(x, "x.xcnf"), "--mode", "dissimilar")
        assert code == 0 and rep["stats"]["checked"] == 7
    code, out, _ = run(capsys, "check", write(P3))
    assert out.startswith("AGREE")


def test_check_detects_injected_bug(capsys, write, monkeypatch):
    real = diverse_pair.diverse_pair_xp

    def off_by_one(phi, d, **kw):
        return real(phi, max(d - 1, 0), **kw)

    monkeypatch.setattr(diverse_pair, "diverse_pair_xp", off_by_one)
    code, out, _ = run(capsys, "check", write(P3))
    assert code == 1 and out.startswith("DISAGREE")


def test_check_cap_exceeded(capsys, write):
    code, _, err = run(capsys, "check", write(cnf(8, (1, 2))), "--oracle-cap", "4")
    assert code == 2 and err


def test_schema_rejects_bad_report():
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"status": "maybe"}, cli.REPORT_SCHEMA)

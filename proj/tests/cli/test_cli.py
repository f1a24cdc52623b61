import json
import os
import subprocess
from pathlib import Path

import pytest

BIN = os.environ.get("QCHEV_BIN", "build/tools/qchev")


def run(*args, check=None):
    p = subprocess.run([BIN, *map(str, args)], capture_output=True, text=True)
    if check is not None:
        assert p.returncode == check, p.stderr
    return p


def add_functions(a, b):
    terms = {}
    for t in a["terms"] + b["terms"]:
        key = tuple(t["weight"])
        if key not in terms:
            terms[key] = list(t["coeffs"])
        else:
            terms[key] = [y if x == "0" else x if y == "0" else f"{x}+{y}"
                          for x, y in zip(terms[key], t["coeffs"])]
    out = {k: a[k] for k in ("cartan", "module_V")}
    out["terms"] = [{"weight": list(k), "coeffs": v} for k, v in terms.items()]
    return out


def test_generate_is_deterministic(tmp_path):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    run("generate", "--type", "A2", "--v", "adjoint", "--mu-max", "1", "--out", d1, check=0)
    run("generate", "--type", "A2", "--v", "adjoint", "--mu-max", "1", "--jobs", 4, "--out", d2, check=0)
    names = sorted(p.name for p in d1.iterdir())
    assert names == sorted(p.name for p in d2.iterdir())
    assert len(names) == 4  # (1,0), (0,1) one each; (1,1) two
    for n in names:
        assert (d1 / n).read_bytes() == (d2 / n).read_bytes()


def test_generated_traces_pass_check(tmp_path):
    run("generate", "--type", "B2", "--v", "0,2", "--mu", "1,1", "--out", tmp_path, check=0)
    files = sorted(tmp_path.iterdir())
    assert files
    for f in files:
        p = run("check", f, check=0)
        assert json.loads(p.stdout)["pass"] is True


def test_decompose_sum_of_traces(tmp_path):
    run("generate", "--type", "A1", "--v", "2", "--mu", "1;3", "--out", tmp_path, check=0)
    a = json.loads((tmp_path / "trace_A1_mu1_1.json").read_text())
    b = json.loads((tmp_path / "trace_A1_mu3_1.json").read_text())
    s = tmp_path / "sum.json"
    s.write_text(json.dumps(add_functions(a, b)))
    p = run("decompose", s, check=0)
    terms = json.loads(p.stdout)["terms"]
    got = sorted((t["mu"], t["v"]) for t in terms)
    assert got == [([1], ["1*q^(0/1)"]), ([3], ["1*q^(0/1)"])]


def test_condition_failure_exit_code(tmp_path):
    f = tmp_path / "const.json"
    f.write_text(json.dumps({"cartan": "A1", "module_V": {"highest_weights": [[2]]},
                             "terms": [{"weight": [0], "coeffs": ["0", "1", "0"]}]}))
    p = run("check", f, check=1)
    rep = json.loads(p.stdout)
    assert rep["pass"] is False
    assert rep["cond2_dynamical_invariance"]["pass"] is False
    run("decompose", f, check=1)


@pytest.mark.parametrize("args", [
    ["generate", "--type", "Z9", "--v", "2", "--mu", "1"],
    ["generate", "--type", "A1", "--v", "2", "--mu", "-1"],
    ["no-such-command"],
])
def test_usage_errors(args, tmp_path):
    run(*args, "--out", tmp_path, check=2) if args[0] == "generate" else run(*args, check=2)


def test_malformed_json(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    run("check", f, check=2)


def test_verify_suite_outputs(tmp_path):
    run("verify-suite", "--criteria", "1,2", "--out", tmp_path, check=0)
    data = json.loads((tmp_path / "suite.json").read_text())
    assert data
    csv = (tmp_path / "suite.csv").read_text().splitlines()
    assert csv[0] == "suite,case,pass,runtime_ms"
    assert len(csv) > 1

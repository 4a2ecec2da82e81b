import json
import os
import subprocess
import sys

import pytest

from filtra.group import group_to_spec, make_ut


def run_cli(*args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    proc = subprocess.run(
        [sys.executable, "-m", "filtra.cli", *args],
        capture_output=True, text=True, env=full_env,
    )
    return proc.returncode, proc.stdout, proc.stderr


def chain_exps(doc):
    return [t["order_exp"] for t in doc["filter"]["terms"]] + [0]


def distinct_chain_exps(doc):
    # support indices may share a value; the chain is the distinct drops
    return sorted({t["order_exp"] for t in doc["filter"]["terms"]}, reverse=True) + [0]


@pytest.mark.parametrize(
    "args,want",
    [
        (("series", "--ut", "4", "2", "--which", "gamma"), [6, 3, 1, 0]),
        (("series", "--heisenberg", "2,0,0,1", "--which", "gamma"), [6, 2, 0]),
        (("series", "--ut", "3", "2", "--which", "eta"), [3, 1, 0]),
        (("series", "--ut", "3", "2", "--series", "kappa"), [3, 1, 0]),
    ],
)
def test_series_examples(args, want):
    code, out, _ = run_cli(*args)
    assert code == 0
    doc = json.loads(out)
    assert chain_exps(doc) == want


def test_series_json_shape():
    code, out, _ = run_cli("series", "--ut", "3", "2")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"group", "series", "filter"}
    assert doc["group"] == "UT(3,2)"
    assert doc["series"] == "gamma"
    assert doc["filter"]["dim"] == 1


def test_refine_ut4():
    code, out, _ = run_cli("refine", "--ut", "4", "2", "--method", "adjoint")
    assert code == 0
    doc = json.loads(out)
    assert doc["converged"] is True
    assert distinct_chain_exps(doc) == [6, 5, 3, 1, 0]
    assert len(doc["rounds"]) == 1
    r = doc["rounds"][0]
    assert r["index"] == [1]
    assert r["section_dim"] == 3
    assert r["ring_dim"] == 4
    assert r["radical_chain"] == [2]
    assert r["inserted_order_exps"] == [5, 3]


def test_refine_rounds_flag():
    code, out, _ = run_cli("refine", "--ut", "4", "2", "--rounds", "1")
    assert code == 0
    doc = json.loads(out)
    assert "converged" not in doc
    assert distinct_chain_exps(doc) == [6, 5, 3, 1, 0]


def test_refine_ut3_unchanged():
    code, out, _ = run_cli("refine", "--ut", "3", "2", "--method", "adjoint")
    assert code == 0
    doc = json.loads(out)
    assert doc["rounds"] == []
    assert doc["converged"] is True
    assert chain_exps(doc) == [3, 1, 0]


def test_refine_heisenberg_with_check():
    code, out, _ = run_cli("refine", "--heisenberg", "2,0,0,1", "--check")
    assert code == 0
    doc = json.loads(out)
    assert distinct_chain_exps(doc) == [6, 4, 2, 1, 0]
    assert doc["filter"]["length"] == 4


def test_fingerprint_single_group():
    code, out, _ = run_cli("fingerprint", "--ut", "3", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["group"] == "UT(3,2)"
    assert doc["fingerprint"]["length"] == 2


def test_fingerprint_equal_groups_exit_zero(tmp_path):
    spec = group_to_spec(make_ut(4, 2))
    spec["generators"] = spec["generators"][::-1]
    path = tmp_path / "group.json"
    path.write_text(json.dumps(spec))
    code, out, _ = run_cli("fingerprint", "--ut", "4", "2", "--group", str(path))
    assert code == 0
    doc = json.loads(out)
    assert doc["equal"] is True
    assert doc["first"]["fingerprint"] == doc["second"]["fingerprint"]


def test_fingerprint_differ_exit_three():
    code, out, _ = run_cli(
        "fingerprint", "--heisenberg", "2,1,1,1", "--heisenberg", "2,0,0,1")
    assert code == 3
    doc = json.loads(out)
    assert doc["equal"] is False


def test_verify_ok():
    code, out, _ = run_cli("verify", "--ut", "3", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True and doc["violations"] == []
    assert doc["series"] == "eta"


def test_no_group_is_usage_error():
    code, _, err = run_cli("series")
    assert code == 1
    assert "no group" in err


def test_unknown_series_is_usage_error():
    code, _, _ = run_cli("series", "--ut", "3", "2", "--which", "omega")
    assert code == 1


def test_bad_group_file_is_input_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, _ = run_cli("series", "--group", str(path))
    assert code == 1

    path2 = tmp_path / "badshape.json"
    path2.write_text(json.dumps({"p": 2, "degree": 3, "generators": [[1, 0, 1]]}))
    code2, _, err2 = run_cli("series", "--group", str(path2))
    assert code2 == 1
    assert "bad group spec" in err2


def test_cap_exceeded_is_compute_error():
    code, _, err = run_cli("series", "--ut", "4", "2", env={"FILTRA_CAP": "4"})
    assert code == 2
    assert "cap" in err.lower()


def test_cap_flag_overrides_env():
    code, _, _ = run_cli(
        "series", "--ut", "4", "2", "--cap", "100000", env={"FILTRA_CAP": "4"})
    assert code == 0


def test_output_is_byte_stable():
    runs = [run_cli("refine", "--ut", "4", "2") for _ in range(2)]
    assert runs[0][0] == runs[1][0] == 0
    assert runs[0][1] == runs[1][1]
    assert "\n" == runs[0][1][-1] and " " not in runs[0][1].strip()


def test_out_file(tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run_cli("series", "--ut", "3", "2", "--out", str(path))
    assert code == 0
    assert out == ""
    doc = json.loads(path.read_text())
    assert doc["group"] == "UT(3,2)"

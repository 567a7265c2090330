import json
import subprocess
import sys

import pytest

from arcalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--m", "1", "--n", "1")
    assert code == 0 and "dim H = 2" in out


def test_dims_json(capsys):
    code, out, _ = run(capsys, "dims", "--m", "2", "--n", "2", "--format", "json")
    assert json.loads(out) == {"ctx": [2, 2], "dim_H": 12, "dim_K": 47}


def test_extquiver_dot_p2(capsys):
    code, out, _ = run(capsys, "extquiver", "--m", "3", "--n", "3", "--p", "2", "--format", "dot")
    assert code == 0
    lines = [ln.strip() for ln in out.splitlines()]
    verts = [ln for ln in lines if ln.endswith(";") and "->" not in ln]
    loops = [ln for ln in lines if "->" in ln and ln.split(" -> ")[0] == ln.split(" -> ")[1].rstrip(";")]
    assert len(verts) == 5 and len(loops) == 5


def test_verify_all_small(capsys):
    code, out, err = run(capsys, "verify", "all", "--m", "2", "--n", "2")
    assert code == 0 and "FAIL" not in out
    assert "verifying" in err


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "iso", "--m", "2", "--n", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"] is True
    assert set(data["results"][0]) >= {"ctx", "relation_counts", "failures", "snf_invariants", "dim_H"}


def test_verify_parallel(monkeypatch, capsys):
    monkeypatch.setenv("ARCALG_THREADS", "2")
    code, out, _ = run(capsys, "verify", "all", "--m", "1", "--n", "2", "--format", "json")
    assert code == 0 and [r["check"] for r in json.loads(out)["results"]] == ["relations", "lemmas", "iso"]


@pytest.mark.parametrize("value", ["0", "-3", "many"])
def test_bad_thread_count(monkeypatch, capsys, value):
    monkeypatch.setenv("ARCALG_THREADS", value)
    code, _, err = run(capsys, "dims", "--m", "1", "--n", "1")
    assert code == 2 and "ARCALG_THREADS" in err


@pytest.mark.parametrize("argv", [
    ["dims", "--m", "3", "--n", "2"],
    ["dims", "--m", "1"],
    ["extquiver", "--m", "2", "--n", "2", "--p", "4"],
    ["nonsense", "--m", "1", "--n", "1"],
    ["reg", "5", "--m", "2", "--n", "2"],
    ["tiling", "2,2", "-", "--m", "2", "--n", "2"],
    ["multiply", "1|2,2|1", "1|1|1", "--m", "2", "--n", "2"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("arcalg: error")


def test_reg_text(capsys):
    code, out, _ = run(capsys, "reg", "8,6,6,2,2,1,1", "--m", "8", "--n", "9")
    assert "8,7,7,7,5,5,4,2" in out and "[1,1] [0,4] [-5,7]" in out


def test_cupdiagram_json(capsys):
    _, out, _ = run(capsys, "cupdiagram", "5,4,2,2", "--m", "5", "--n", "6", "--format", "json")
    data = json.loads(out)
    assert data["cups"] == [[1, 2], [3, 4], [6, 9], [7, 8]] and data["defect"] == -1


def test_tiling_and_pkl(capsys):
    _, out, _ = run(capsys, "tiling", "-", "2,2", "--m", "2", "--n", "2", "--format", "json")
    assert json.loads(out)["degree"] == 2
    _, out, _ = run(capsys, "pkl", "-", "2,2", "--m", "2", "--n", "2")
    assert out.strip() == "q^2"


def test_multiply_golden(capsys):
    _, out, _ = run(capsys, "multiply", "2,1|2,1|2,2", "2,2|2,1|2,1", "--m", "2", "--n", "2",
                    "--format", "json")
    terms = {t["diagram"]: t["coefficient"] for t in json.loads(out)["terms"]}
    assert terms == {"2,1|1,1|2,1": 1, "2,1|2|2,1": 1}


def test_cellmod_and_plan(capsys):
    _, out, _ = run(capsys, "cellmod", "2,1", "--m", "2", "--n", "2", "--specht", "--format", "json")
    data = json.loads(out)
    assert [b["partition"] for b in data["basis"]] == ["2,1", "2,2"]
    code, out, _ = run(capsys, "plan", "-", "2,2", "--m", "2", "--n", "2", "--format", "json")
    assert code == 0 and json.loads(out)["chain"][-1] == "2,2"


def test_enumerate_and_out(tmp_path, capsys):
    target = tmp_path / "parts.txt"
    code, out, _ = run(capsys, "enumerate", "regular", "--m", "2", "--n", "2", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().split() == ["2,1", "2,2"]


def test_output_is_deterministic(capsys):
    first = run(capsys, "extquiver", "--m", "2", "--n", "3", "--format", "json")[1]
    second = run(capsys, "extquiver", "--m", "2", "--n", "3", "--format", "json")[1]
    assert first == second


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "arcalg", "dims", "--m", "1", "--n", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "dim H = 2" in res.stdout

import json

import pytest

from gsinv.cli import main


def run_cli(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_coeffs_json(capsys):
    rc, out, _ = run_cli(capsys, "coeffs", "--n", "2", "--output", "json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["a"] == ["-2", "26", "-48", "24"]


def test_coeffs_csv(capsys):
    rc, out, _ = run_cli(capsys, "coeffs", "--n", "3", "--output", "csv", "--set", "c")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,c_k"
    assert lines[1] == "1,1/2"


def test_invert_step_ladder_csv(capsys):
    rc, out, _ = run_cli(
        capsys,
        "invert", "--pair", "step", "--x", "1", "--n-max", "18",
        "--digits", "auto", "--output", "csv",
    )
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,value,abs_error,digits"
    last = lines[-1].split(",")
    assert last[0] == "18"
    assert 0.45 < float(last[1]) < 0.55  # ends near the jump midpoint


def test_invert_single_order_json(capsys):
    rc, out, _ = run_cli(
        capsys,
        "invert", "--transform", "1/(z+1)", "--x", "1,2", "--n", "8",
        "--output", "json",
    )
    assert rc == 0
    doc = json.loads(out)
    assert len(doc["reports"]) == 2
    assert len(doc["reports"][0]["entries"]) == 1
    assert doc["reports"][0]["entries"][0]["n"] == 8
    assert abs(float(doc["reports"][0]["entries"][0]["value"]) - 0.367879) < 1e-4


def test_ladder_requires_n_max(capsys):
    rc, _, _ = run_cli(capsys, "ladder", "--pair", "constant", "--x", "1")
    assert rc == 2


def test_invert_unknown_pair(capsys):
    rc, _, err = run_cli(capsys, "invert", "--pair", "bogus", "--x", "1", "--n", "4")
    assert rc == 2


def test_invert_rejects_nonpositive_x(capsys):
    rc, _, err = run_cli(capsys, "invert", "--pair", "constant", "--x", "-1", "--n", "4")
    assert rc == 2
    assert "positive" in err


def test_invert_low_digits_warns(capsys):
    rc, out, err = run_cli(
        capsys,
        "invert", "--pair", "constant", "--x", "1", "--n-max", "10",
        "--digits", "20", "--output", "csv",
    )
    assert rc == 0
    assert "required_digits" in err


def test_corpus_manifest(capsys):
    rc, out, _ = run_cli(capsys, "corpus")
    assert rc == 0
    names = {r["name"] for r in json.loads(out)["pairs"]}
    assert "square-wave" in names


def test_verify_single_suite(capsys):
    rc, out, _ = run_cli(capsys, "verify", "--suite", "vandermonde")
    assert rc == 0
    doc = json.loads(out)
    assert doc["all_passed"] is True
    assert doc["checks"][0]["check"] == "coefficient-identities"
    assert doc["checks"][0]["status"] == "pass"
    assert "metrics" in doc["checks"][0] and "grid" in doc["checks"][0]


def test_verify_unknown_suite(capsys):
    rc, _, err = run_cli(capsys, "verify", "--suite", "nope")
    assert rc == 2


def test_verify_failed_check_exits_1(capsys, monkeypatch):
    import gsinv.verify as verify

    def broken():
        return [{"check": "synthetic", "status": "fail", "metrics": {}, "grid": {}}]

    monkeypatch.setitem(verify.SUITES, "vandermonde", broken)
    rc, out, _ = run_cli(capsys, "verify", "--suite", "vandermonde")
    assert rc == 1
    assert json.loads(out)["all_passed"] is False


def test_invert_oscillatory_flag_in_report(capsys):
    rc, out, err = run_cli(
        capsys,
        "invert", "--pair", "sine", "--x", "1", "--n", "6", "--output", "json",
    )
    assert rc == 0
    assert "oscillatory" in err
    doc = json.loads(out)
    assert doc["reports"][0]["flags"] == ["oscillatory"]


@pytest.mark.slow
def test_verify_all_suites(capsys):
    rc, out, _ = run_cli(capsys, "verify", "--suite", "all")
    assert rc == 0
    doc = json.loads(out)
    assert doc["all_passed"] is True
    assert len(doc["checks"]) >= 13


def test_verify_deterministic_output(capsys):
    rc1, out1, _ = run_cli(capsys, "verify", "--suite", "genfun")
    rc2, out2, _ = run_cli(capsys, "verify", "--suite", "genfun")
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_invert_deterministic_output(capsys):
    args = ("invert", "--pair", "exponential", "--x", "1", "--n-max", "6",
            "--output", "json")
    rc1, out1, _ = run_cli(capsys, *args)
    rc2, out2, _ = run_cli(capsys, *args)
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_weval(capsys):
    rc, out, _ = run_cli(capsys, "weval", "--z=-0.5,0.5", "--digits", "25")
    assert rc == 0
    doc = json.loads(out)
    assert float(doc["residual"].replace("e", "E").split("E")[0]) == pytest.approx(0, abs=1)
    assert doc["w"]


def test_weval_cut_real(capsys):
    rc, out, _ = run_cli(capsys, "weval", "--z", "-1.5")
    assert rc == 0
    doc = json.loads(out)
    assert "j" in doc["w"]  # boundary value is complex


def test_out_path(tmp_path, capsys):
    target = tmp_path / "coeffs.json"
    rc, out, _ = run_cli(capsys, "coeffs", "--n", "2", "--out", str(target))
    assert rc == 0
    assert out == ""
    assert json.loads(target.read_text())["n"] == 2

"""Command-line interface: formats, exit codes, determinism."""

import json

from umbralops.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_series_invert(capsys):
    code, out, _ = run_cli(capsys, "series", "invert", "--f", "1,1")
    assert code == 0
    assert "0, 1, -1, 2, -5, 14" in out


def test_series_itlog_json(capsys):
    code, out, _ = run_cli(capsys, "series", "itlog", "--f", "1,1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["series"]["coeffs"][2] == "1"
    assert payload["series"]["coeffs"][3] == "-1"


def test_series_half_iterate_squares_back(capsys):
    code, out, _ = run_cli(
        capsys, "series", "iterate", "--f", "1,1", "--s", "1/2", "--format", "json"
    )
    assert code == 0
    half = json.loads(out)["series"]["coeffs"]
    tail = ",".join(half[1:])
    code, out, _ = run_cli(
        capsys, "series", "compose", "--f", tail, "--g", tail, "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["series"]["coeffs"][:4] == ["0", "1", "1", "0"]


def test_umbral_all_formulas_agree(capsys):
    code, out, _ = run_cli(
        capsys, "umbral", "--f", "1,-1,1,-1,1,-1,1,-1,1,-1,1,-1", "--n", "2", "--formulas", "all"
    )
    assert code == 0
    assert "x^2 - 2*x" in out
    assert "agree" in out


def test_umbral_q2_pair(capsys):
    code, out, _ = run_cli(
        capsys, "umbral", "--f", "2,1", "--n", "2", "--formulas", "bucc,expitlog"
    )
    assert code == 0
    assert "agree" in out


def test_umbral_identity_generator(capsys):
    code, out, _ = run_cli(capsys, "umbral", "--f", "1", "--n", "3")
    assert code == 0
    assert "phi_3 = x^3" in out


def test_umbral_csv(capsys):
    code, out, _ = run_cli(
        capsys, "umbral", "--f", "1,1", "--n", "2", "--format", "csv"
    )
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert ["2", "1", "2"] in rows  # phi_2 = x^2 + 2x for f = t + t^2


def test_laguerre_table(capsys):
    code, out, _ = run_cli(capsys, "laguerre", "--p", "2", "--n", "3")
    assert code == 0
    assert "L_3 = x^3 - 6*x" in out


def test_laguerre_alpha(capsys):
    code, out, _ = run_cli(capsys, "laguerre", "--p", "1", "--alpha", "1", "--n", "1")
    assert code == 0
    assert "L_1 = x - 1" in out


def test_laguerre_check_flag(capsys):
    code, out, _ = run_cli(capsys, "laguerre", "--p", "1", "--n", "4", "--check")
    assert code == 0
    assert "identity grid: pass" in out


def test_laguerre_rejects_p0(capsys):
    code, _, err = run_cli(capsys, "laguerre", "--p", "0", "--n", "2")
    assert code == 2
    assert "p >= 1" in err


def test_verify_formulas_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "formulas", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["schema_version"] == 1
    assert report["passed"] is True
    assert all(item["status"] == "exact-pass" for item in report["items"])


def test_verify_deterministic_with_seed(capsys):
    code1, out1, _ = run_cli(
        capsys, "verify", "--suite", "duality", "--seed", "7", "--format", "json"
    )
    code2, out2, _ = run_cli(
        capsys, "verify", "--suite", "duality", "--seed", "7", "--format", "json"
    )
    assert code1 == code2 == 0
    assert out1 == out2


def test_unknown_suite_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "verify", "--suite", "bogus")
    assert code == 2
    assert "unknown suite" in err


def test_parse_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "series", "itlog", "--f", "nope")
    assert code == 2
    assert "bad coefficient" in err


def test_env_order_override(capsys, monkeypatch):
    monkeypatch.setenv("UMBRAL_ORDER", "8")
    code, out, _ = run_cli(capsys, "series", "invert", "--f", "1,1", "--format", "json")
    assert code == 0
    assert json.loads(out)["series"]["order"] == 8


def test_bad_env_order(capsys, monkeypatch):
    monkeypatch.setenv("UMBRAL_ORDER", "many")
    code, _, err = run_cli(capsys, "series", "invert", "--f", "1,1")
    assert code == 2


def test_usage_error_on_unknown_flag(capsys):
    code = main(["series", "itlog", "--nonsense"])
    assert code == 2

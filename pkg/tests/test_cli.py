import csv
import io
import json
import os
import subprocess
import sys

import pytest

from mvbessel import cache
from mvbessel.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_poly_bessel(capsys):
    code, out, _ = run(["poly", "bessel", "--n", "1", "--lambda", "1"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["eigenvalue"] == "a"
    assert {"mu": [], "coeff": "2/(a)"} in d["monomial"]
    assert d["constant_term_ok"] and d["pole_certificate"]["pass"]


def test_poly_bessel_specialised(capsys):
    code, out, _ = run(["poly", "bessel", "--n", "1", "--lambda", "1", "--a", "4"], capsys)
    d = json.loads(out)
    assert {"mu": [], "coeff": "1/2"} in d["monomial"]
    assert d["specialised"] == {"a": "4", "kappa": "symbolic"}


def test_poly_jack(capsys):
    code, out, _ = run(["poly", "jack", "--n", "2", "--lambda", "[2]", "--kappa", "1/2"], capsys)
    d = json.loads(out)
    assert code == 0 and d["kappa"] == "1/2"
    assert {"mu": [1, 1], "coeff": "2/3"} in d["terms"]


def test_poly_too_many_parts(capsys):
    code, _, err = run(["poly", "jack", "--n", "1", "--lambda", "1,1"], capsys)
    assert code == 2 and "more than" in err


@pytest.mark.parametrize("what", ["orthogonality", "norms", "moments", "jack-norms", "rationality",
                                  "zero", "integral-equality", "integrality", "structure"])
def test_verify_commands(what, capsys):
    code, out, _ = run(["verify", what, "--n", "2", "--max-weight", "2"], capsys)
    d = json.loads(out)
    assert code == 0 and d["summary"]["failed"] == 0 and d["summary"]["cases"] > 0


def test_verify_csv(capsys):
    code, out, _ = run(["verify", "norms", "--n", "1", "--max-weight", "2", "--csv"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["case", "status", "tag", "lhs", "rhs"]
    assert len(rows) == 4 and all(r[1] == "pass" for r in rows[1:])


def test_verify_timings_flag(capsys):
    _, out, _ = run(["verify", "zero", "--n", "1", "--max-weight", "1", "--timings"], capsys)
    assert all("ms" in r for r in json.loads(out)["reports"])
    _, out, _ = run(["verify", "zero", "--n", "1", "--max-weight", "1"], capsys)
    assert all("ms" not in r for r in json.loads(out)["reports"])


def test_numeric_commands(capsys):
    code, out, _ = run(["numeric", "kadell", "--n", "1", "--nu", "2", "--alpha", "3/2", "--beta", "5/2"], capsys)
    assert code == 0 and json.loads(out)["summary"]["failed"] == 0
    code, out, _ = run(["numeric", "laguerre", "--n", "1", "--nu", "2", "--alpha", "2"], capsys)
    assert code == 0
    code, out, _ = run(["numeric", "krall-frink", "--max-degree", "3"], capsys)
    assert code == 0 and json.loads(out)["summary"]["cases"] == 10


def test_numeric_mc_seed(capsys):
    argv = ["numeric", "kadell", "--n", "2", "--nu", "1", "--mode", "mc", "--samples", "20000", "--seed", "9"]
    _, out1, _ = run(argv, capsys)
    _, out2, _ = run(argv, capsys)
    assert out1 == out2


def test_numeric_precondition_exit_code(capsys):
    code, _, err = run(["numeric", "l2", "--n", "2", "--a", "5", "--max-weight", "2"], capsys)
    assert code == 2 and "window" in err


def test_bad_seed(capsys):
    code, _, _ = run(["numeric", "kadell", "--seed", "-1"], capsys)
    assert code == 2


def test_weight_eval(capsys):
    code, out, _ = run(["weight", "eval", "--n", "1", "--a", "3", "--x", "1"], capsys)
    d = json.loads(out)
    assert code == 0 and d["value"]["re"] == pytest.approx(0.8646647167633873, rel=1e-12)
    code, out, _ = run(["weight", "eval", "--n", "1", "--a", "3", "--x", "1", "--truncate", "0"], capsys)
    assert json.loads(out)["value"]["re"] == pytest.approx(2.0)
    code, _, _ = run(["weight", "eval", "--n", "2", "--a", "3", "--x", "1"], capsys)
    assert code == 2


def test_suite_command(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n_range": [1], "max_weight": 2}))
    out_file = tmp_path / "report.json"
    code, out, _ = run(["suite", "--config", str(cfg), "--output", str(out_file)], capsys)
    assert code == 0 and out == ""
    first = out_file.read_bytes()
    run(["suite", "--config", str(cfg), "--output", str(out_file)], capsys)
    assert out_file.read_bytes() == first
    assert json.loads(first)["summary"]["failed"] == 0


def test_suite_malformed_config(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["suite", "--config", str(bad)], capsys)[0] == 2
    bad.write_text(json.dumps({"n_range": [1], "extra": True}))
    assert run(["suite", "--config", str(bad)], capsys)[0] == 2
    assert run(["suite", "--config", str(tmp_path / "missing.json")], capsys)[0] == 2


def test_usage_error(capsys):
    assert run(["verify", "nonsense"], capsys)[0] == 2
    assert run([], capsys)[0] == 2


def test_cache_round_trip(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path))
    code, out1, _ = run(["verify", "zero", "--n", "2", "--max-weight", "2"], capsys)
    assert (tmp_path / "polynomials.pkl").exists()
    from mvbessel import bessel, jack
    monkeypatch.setattr(bessel, "_bessel_cache", {})
    monkeypatch.setattr(jack, "_jack_cache", {})
    assert cache.load(tmp_path) > 0
    assert bessel._bessel_cache
    code, out2, _ = run(["verify", "zero", "--n", "2", "--max-weight", "2"], capsys)
    assert out1 == out2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "mvbessel", "verify", "moments", "--n", "1", "--max-weight", "1"],
                       capture_output=True, text=True, env={**os.environ, "MVBESSEL_CACHE_DIR": ""})
    assert r.returncode == 0 and json.loads(r.stdout)["summary"]["failed"] == 0

import json
from fractions import Fraction

import pytest

from mvbessel.suite import CHECKS, ConfigError, SuiteConfig, run_check, run_suite


def test_default_config_passes():
    code, doc = run_suite(SuiteConfig())
    assert code == 0
    assert doc["summary"]["failed"] == 0 and doc["summary"]["cases"] == len(doc["reports"])
    assert doc["config"]["kappa"] == "symbolic"


def test_every_report_is_tagged():
    _, doc = run_suite(SuiteConfig(n_range=[1, 2], max_weight=2))
    assert all(r["tag"] for r in doc["reports"])
    assert {r["tag"] for r in doc["reports"]} >= {"orthogonality-relation", "norm-factor-formula",
                                                  "torus-moment", "integral-equality"}


def test_max_weight_zero():
    code, doc = run_suite(SuiteConfig(max_weight=0))
    assert code == 0
    assert all("[]" in r["case"] or "/n=" in r["case"] for r in doc["reports"])


def test_numeric_report_bytes_are_deterministic():
    cfg = SuiteConfig(n_range=[1], max_weight=1, numeric=True, seed=42, checks=["moments"])
    b1 = json.dumps(run_suite(cfg)[1], sort_keys=True)
    b2 = json.dumps(run_suite(cfg)[1], sort_keys=True)
    assert b1 == b2
    assert run_suite(cfg)[0] == 0


def test_specialised_parameters():
    cfg = SuiteConfig.from_dict({"n_range": [2], "max_weight": 2, "kappa": "2", "a": "7/3"})
    assert cfg.kappa == 2 and cfg.a == Fraction(7, 3)
    code, doc = run_suite(cfg)
    assert code == 0
    jack = [r for r in doc["reports"] if r["tag"] == "jack-torus-norm"]
    assert jack and all("/k=2/" in r["case"] for r in jack)


def test_degenerate_parameters_fail_cleanly():
    # a = 0 makes Y_(1) = x + 2/a undefined
    reps = run_check("orthogonality", 1, 1, SuiteConfig(a=Fraction(0)))
    assert any(r.status == "fail" for r in reps)


@pytest.mark.parametrize("bad", [
    [],
    {"unknown": 1},
    {"n_range": [0]},
    {"n_range": "2"},
    {"max_weight": -1},
    {"kappa": "x"},
    {"seed": -5},
    {"seed": 2**64},
    {"checks": ["nope"]},
])
def test_config_validation(bad):
    with pytest.raises(ConfigError):
        SuiteConfig.from_dict(bad)


def test_config_round_trip():
    cfg = SuiteConfig.from_dict({"n_range": 3, "max_weight": 1, "checks": ["zero"]})
    assert cfg.n_range == [3]
    assert SuiteConfig.from_dict(cfg.to_dict()).to_dict() == cfg.to_dict()


def test_check_registry():
    assert set(CHECKS) == {"orthogonality", "moments", "jack-norms", "zero", "rationality",
                           "integral-equality", "integrality", "structure"}

import csv
import io
import json
import math

import pytest

from charsumlab.charsum import BoundParams, UnionOfIntervals
from charsumlab.dirichlet import quadratic_character
from charsumlab.errors import HypothesisViolated, ValidationError
from charsumlab.harness import (CSV_COLUMNS, DELTA_SENTINEL, BoundReport, ExperimentConfig, check_corollary_hypotheses,
                                corollary_row, render_report, run_campaign, run_corollary, run_extremal,
                                run_proposition, run_reduction, run_theorem, write_report)


def test_config_roundtrip_and_errors():
    cfg = ExperimentConfig.default("theorem", seed=7)
    assert ExperimentConfig.from_dict(cfg.to_dict()) == cfg
    assert cfg.seed == 7 and ExperimentConfig.default("theorem").seed == 0
    with pytest.raises(ValidationError):
        ExperimentConfig.from_dict({"campaign": "theorem", "bogus": 1})
    with pytest.raises(ValidationError):
        ExperimentConfig(campaign="nope")
    with pytest.raises(ValidationError):
        ExperimentConfig.from_dict({"q_list": [5]})


def test_H_and_J_rules():
    cfg = ExperimentConfig.default("theorem")
    assert cfg.H_for(10007) == math.ceil(10007**0.3)
    assert cfg.J_for(10007, 16) == 10007 // 32
    cfg = ExperimentConfig("theorem", H_pow=0.5, H_mul=2.0, H_offset=3)
    assert cfg.H_for(100) == 23


def test_proposition_example_rows():
    rows = run_proposition(ExperimentConfig("proposition", l_list=[101], n_list=[4], set_sizes=[0, 3]))
    empty, three = rows
    assert empty.lhs == 0 and empty.passed
    assert three.passed and three.extra["oracle"] == three.lhs
    assert all(v[2] for v in three.extra["chain"].values())


def test_proposition_skips_have_reasons():
    rows = run_proposition(ExperimentConfig("proposition", l_list=[100, 7], n_list=[2], set_sizes=[3, 9]))
    skipped = [r for r in rows if r.skipped]
    assert len(skipped) == 3 and all(r.reason for r in skipped)


def test_extremal_row():
    (row,) = run_extremal(10007, [(10, 50)], oracle=True)
    assert row.passed and row.extra["oracle"] == row.lhs
    assert row.extra["sharpness"] == row.lhs / (10 * 10 * 50)


def test_theorem_tiny_example():
    cfg = ExperimentConfig("theorem", q_list=[5], H=4, J=1, r=1, epsilon=0.0)
    (row,) = run_theorem(cfg)
    assert row.lhs == 1 and row.rhs["thm2r"] == pytest.approx(5)
    assert row.ratios["thm2r"] == pytest.approx(0.2)
    assert row.extra["condition"] == "a" and row.passed


def test_theorem_default_rows():
    rows = run_theorem(ExperimentConfig.default("theorem", q_list=[10007]))
    (row,) = rows
    assert row.passed and row.lhs <= row.rhs["trivial"] and row.ratios["trivial"] <= 1
    assert row.J == 10007 // (2 * row.H)
    # ratios recomputable from stored fields
    assert row.ratios["thm2r"] == row.lhs / row.rhs["thm2r"]


def test_theorem_skips():
    (row,) = run_theorem(ExperimentConfig("theorem", q_list=[8], H=4, J=1, r=4))
    assert row.skipped and row.reason == "q not cube-free"
    (row,) = run_theorem(ExperimentConfig("theorem", q_list=[10007], H=3, J=1, r=2))
    assert row.skipped and "H <" in row.reason
    (row,) = run_theorem(ExperimentConfig("theorem", q_list=[10006], H=50, J=1, r=2))
    assert row.skipped and row.reason


def test_corollary_single_interval():
    q = 100003
    chi = quadratic_character(q)
    row, cert = corollary_row(chi, UnionOfIntervals(q, ((0, q),)), BoundParams())
    assert row.lhs == 0 and row.delta_emp == DELTA_SENTINEL
    assert cert.reconciled and row.passed


def test_corollary_hypothesis_violations():
    q = 100003
    A = UnionOfIntervals(q, tuple((1000 * j, 10) for j in range(16)))  # 160/4 < q^0.35
    with pytest.raises(HypothesisViolated, match="q\\^\\(1/4\\+eps\\)"):
        check_corollary_hypotheses(A, 0.1)
    with pytest.raises(HypothesisViolated, match="q\\^eps"):
        check_corollary_hypotheses(UnionOfIntervals(q, ((0, 2),)), 0.1)
    with pytest.raises(HypothesisViolated, match="cube-free"):
        check_corollary_hypotheses(UnionOfIntervals(8 * 1001, ((0, 5000),)), 0.1)


def test_corollary_campaign_small():
    rows, certs = run_corollary(ExperimentConfig.default("corollary", trials=3))
    assert len(rows) == len(certs) == 3
    for row, cert in zip(rows, certs):
        assert cert.reconciled and cert.valid and row.passed
        assert row.lhs < 0.5 * row.set_size
        assert sum(c.J for c in cert.classes) == cert.s
        for c in cert.classes:
            assert all(b - a >= c.H for a, b in zip(c.starts[0::2], c.starts[2::2]))


def test_reduction_rows():
    (toy,) = run_reduction(ExperimentConfig("reduction", q_list=[100], H=10, J=1, r=2, P=1))
    assert (toy.extra["M"], toy.extra["M1"], toy.extra["M2"]) == (2, 2, 0) and toy.passed
    (zero,) = run_reduction(ExperimentConfig("reduction", q_list=[100], H=10, J=0, r=2, P=1))
    assert (zero.extra["M"], zero.extra["M1"], zero.extra["M2"], zero.extra["N"]) == (0, 0, 0, 0)
    (row,) = run_reduction(ExperimentConfig.default("reduction"))
    assert row.passed and row.lhs <= row.extra["N"]
    (bad,) = run_reduction(ExperimentConfig("reduction", q_list=[256], H=4, J=1, r=2))
    assert bad.skipped and "H=" in bad.reason


def test_report_formats(tmp_path):
    assert render_report([], "csv") == ",".join(CSV_COLUMNS) + "\n"
    row = BoundReport("theorem", q=5, lhs=1, passed=True)
    row.rhs["thm2r"] = 5.0
    row.set_ratio("thm2r", 1, 5.0)
    data = json.loads(render_report([row], "json"))
    assert len(data) == 1 and list(data[0])[:len(CSV_COLUMNS)] == list(CSV_COLUMNS)
    assert data[0]["ratio_best"] == 0.2
    parsed = list(csv.DictReader(io.StringIO(render_report([row], "csv"))))
    assert parsed[0]["pass"] == "true" and parsed[0]["l"] == ""
    p = tmp_path / "r.csv"
    write_report([row], p)
    first = p.read_bytes()
    write_report([row], p)
    assert p.read_bytes() == first
    with pytest.raises(ValidationError):
        render_report([row], "xml")
    with pytest.raises(OSError, match="cannot write"):
        write_report([row], tmp_path / "missing" / "r.csv")


@pytest.mark.parametrize("campaign", ["proposition", "theorem", "corollary", "reduction"])
def test_determinism(campaign):
    overrides = {"proposition": dict(l_list=[101, 1009], n_list=[2, 8], set_sizes=[1, 10]),
                 "theorem": dict(q_list=[10007], points_scheme="random"),
                 "corollary": dict(trials=2), "reduction": {}}[campaign]
    cfg = ExperimentConfig.default(campaign, seed=42, **overrides)

    def rows():
        out = run_campaign(cfg)
        return out[0] if campaign == "corollary" else out

    a, b = rows(), rows()
    for fmt in ("csv", "json"):
        assert render_report(a, fmt) == render_report(b, fmt)

"""Exit criteria.  Each test is one criterion at its pinned tolerance."""
import json

import numpy as np

from cnotpar.cli import main
from cnotpar.entanglement import output_correlations, state_correlation_bound, wootters_concurrence, xz_outputs
from cnotpar.evaluator import evaluate_channel, measurement_plan, p_e_estimate
from cnotpar.formats import read_counts_file, build_report
from cnotpar.gatezoo import channel, verify_expansion, werner_mixture
from cnotpar.qcore import random_cptp, random_density_matrix


def test_ac1_expansion_identity(criterion):
    residual = verify_expansion()
    assert residual < 1e-12
    criterion(f"residual={residual:.2e} < 1e-12")


def test_ac2_canonical_fidelities(criterion):
    expected = {
        "CNOT": (1, 1, 1), "DEPHASE": (.5, .5, .5),
        "L1": (1, .5, .5), "L2": (.5, 1, .5), "L3": (.5, .5, 1),
    }
    worst = 0.0
    for name, fs in expected.items():
        got = evaluate_channel(channel(name).superop).as_tuple()
        worst = max(worst, float(np.max(np.abs(np.array(got) - fs))))
    assert worst < 1e-12
    criterion(f"max deviation={worst:.2e} < 1e-12")


def test_ac3_werner_round_trip(criterion):
    f = evaluate_channel(werner_mixture(0.5))
    assert np.max(np.abs(np.array(f.as_tuple()) - 0.75)) < 1e-12
    assert abs(p_e_estimate(f).value - 0.5) < 1e-12
    worst = 0.0
    for p in np.linspace(0, 1, 11):
        fs = np.array(evaluate_channel(werner_mixture(p)).as_tuple())
        worst = max(worst, float(np.max(np.abs(2 * fs - 1 - p))))
    assert worst < 1e-12
    criterion(f"max |2F-1-p_E|={worst:.2e} < 1e-12")


def test_ac4_criterion_threshold(criterion):
    assert evaluate_channel(werner_mixture(1 / 3 + 1e-6)).criterion_met
    assert not evaluate_channel(werner_mixture(1 / 3 - 1e-6)).criterion_met
    at = evaluate_channel(werner_mixture(1 / 3))
    assert abs(at.sum - 2) < 1e-12
    assert not at.criterion_met
    criterion(f"sum at p_E=1/3 is {at.sum!r}, criterion false")


def test_ac5_concurrence_bound_chain(criterion):
    rng = np.random.default_rng(5)
    slack = np.inf
    for _ in range(1000):
        s = random_cptp(rng)
        f = evaluate_channel(s)
        c = output_correlations(s)
        slack = min(slack, c.zz - (2 * f.F1 - 1), c.xx - (2 * f.F2 - 1))
    assert slack >= -1e-9
    state_slack = np.inf
    for _ in range(1000):
        rho = random_density_matrix(rng)
        state_slack = min(state_slack, wootters_concurrence(rho) - state_correlation_bound(rho))
    assert state_slack >= -1e-9
    criterion(f"min channel slack={slack:.3g}, min state slack={state_slack:.3g}")


def test_ac6_werner_tightness(criterion):
    worst = 0.0
    for p in np.round(np.arange(0.4, 1.0001, 0.1), 10):
        s = werner_mixture(p)
        bound = evaluate_channel(s).sum - 2
        oracle = [wootters_concurrence(rho) for rho in xz_outputs(s)]
        worst = max(worst, float(np.max(np.abs(np.array(oracle) - bound))))
    assert worst < 1e-9
    criterion(f"max |C - (F1+F2+F3-2)|={worst:.2e} < 1e-9")


def test_ac7_statistical_pipeline(criterion, tmp_path):
    args = ["simulate", "--model", "werner", "--strength", "0.5", "--shots", "100000", "--seed", "42"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    report = build_report(read_counts_file(a)[1])
    fs = np.array([report["fidelities"][k] for k in ("F1", "F2", "F3")])
    assert np.max(np.abs(fs - 0.75)) < 0.01
    criterion(f"F={np.round(fs, 4).tolist()} within 0.01 of 0.75; byte-identical rerun")


def test_ac8_paper_fixtures(criterion, fixtures_dir, tmp_path):
    got = {}
    for name, f1 in [("ska03.json", 0.735), ("bri03.json", 0.84)]:
        out = tmp_path / f"{name}.report"
        assert main(["evaluate", "--counts", str(fixtures_dir / name), "--out", str(out)]) == 0
        got[name] = json.loads(out.read_text())["fidelities"]["F1"]
        assert abs(got[name] - f1) < 1e-3
    criterion(f"F1 {got}")


def test_ac9_measurement_plan(criterion):
    plan = measurement_plan()
    pairs = {(e.setting, e.input_label) for e in plan}
    assert len(plan) == 16 and len(pairs) == 12
    criterion(f"{len(plan)} outcomes over {len(pairs)} input settings")

# SPDX-License-Identifier: Apache-2.0
import csv
import io
import json
import math

import pytest

import cfpon


def small_config(**overrides):
    doc = {
        "scenario": {"num_rus": 9, "num_ues": 6, "antennas_per_ru": 64},
        "topology": {"num_wavelengths": 3, "wavelength_capacity_bps": 50e9},
        "power": {"gpp_capacity": 2000},
    }
    doc.update(overrides)
    return cfpon.ExperimentConfig.from_json(json.dumps(doc))


def test_path_loss_values():
    assert cfpon.path_loss_gain(1.0) == pytest.approx(10 ** -3.05, rel=1e-12)
    assert cfpon.path_loss_gain(100.0) == pytest.approx(10 ** -10.39, rel=1e-12)
    with pytest.raises(ValueError):
        cfpon.path_loss_gain(0.0)


def test_distance():
    assert cfpon.distance((0.0, 0.0), (3.0, 4.0)) == 5.0


def test_fronthaul_rate():
    fh = cfpon.Split72Config()
    fh.streams = 1
    fh.overhead = 1.0
    assert cfpon.fronthaul_rate_split72(fh) == pytest.approx(3276 * 28000 * 2 * 9)


def test_power_model():
    p = cfpon.PowerParams()
    assert cfpon.ru_power("active", 1.0, p) == 54.0
    assert cfpon.ru_power("sleep", 0.0, p) == 5.0
    assert cfpon.gpp_power(True, 0.5, p) == 200.0
    with pytest.raises(ValueError):
        cfpon.ru_power("sleep", 0.5, p)


def test_scenario_is_deterministic():
    cfg = cfpon.ScenarioConfig()
    a = cfpon.generate_scenario(cfg, 7)
    b = cfpon.generate_scenario(cfg, 7)
    assert a.beta == b.beta
    assert a.num_rus == 16 and a.num_ues == 10
    assert all(x > 0 and math.isfinite(x) for row in a.beta for x in row)


def test_power_control_bounds():
    cfg = cfpon.ScenarioConfig()
    cfg.num_rus = 4
    cfg.num_ues = 2
    cfg.antennas_per_ru = 32
    s = cfpon.generate_scenario(cfg, 3)
    feasible, scale, se_at_scale, se_full = cfpon.min_se_with_power_control(s, 0.0)
    assert feasible and scale == 0.0
    feasible, scale, se_at_scale, se_full = cfpon.min_se_with_power_control(s, se_full * 0.5)
    assert feasible and 0.0 < scale <= 1.0
    assert se_at_scale >= se_full * 0.5 - 1e-9
    feasible, scale, _, _ = cfpon.min_se_with_power_control(s, se_full + 1.0)
    assert not feasible and scale == 1.0


def test_greedy_beats_baseline_and_reevaluates():
    cfg = small_config()
    s = cfpon.generate_scenario(cfg.scenario, 7)
    model = cfg.system_model()
    base = cfpon.baseline_all_on(s, model, 1.5)
    opt = cfpon.run_algo("greedy+sleep", s, model, 1.5)
    assert base.feasible and opt.feasible
    assert opt.breakdown.total_w <= base.breakdown.total_w
    b = opt.breakdown
    assert b.total_w == b.radio_w + b.pon_w + b.cloud_w
    again = cfpon.evaluate(opt.deployment, s, model, 1.5)
    assert again.breakdown.total_w == opt.breakdown.total_w


def test_deployment_json_round_trip():
    cfg = small_config()
    s = cfpon.generate_scenario(cfg.scenario, 5)
    model = cfg.system_model()
    r = cfpon.optimize_greedy(s, model, 1.0)
    d = cfpon.Deployment.from_json(r.deployment.to_json())
    assert d.to_json() == r.deployment.to_json()
    assert cfpon.evaluate(d, s, model, 1.0).breakdown.total_w == r.breakdown.total_w


def test_exhaustive_limits():
    cfg = small_config()
    s = cfpon.generate_scenario(cfg.scenario, 5)
    with pytest.raises(ValueError, match="L <= 6"):
        cfpon.optimize_exhaustive(s, cfg.system_model(), 1.0)


def test_empty_network_draws_olt_power():
    cfg = small_config(scenario={"num_ues": 0})
    s = cfpon.generate_scenario(cfg.scenario, 1)
    r = cfpon.run_algo("greedy+sleep", s, cfg.system_model(), 1.5)
    assert r.feasible
    assert r.breakdown.total_w == 20.0


def test_sweep_csv():
    cfg = small_config()
    text = cfpon.sweep_csv(cfg, "se_target")
    assert text == cfpon.sweep_csv(cfg, "se_target")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 12
    assert list(rows[0].keys()) == [
        "sweep_var", "sweep_value", "algo", "feasible", "total_w", "radio_w", "pon_w",
        "cloud_w", "active_rus", "active_gpps", "active_lambdas", "min_se", "iterations", "seed",
    ]
    assert {r["algo"] for r in rows} == {"baseline", "greedy+sleep"}
    with pytest.raises(ValueError):
        cfpon.sweep_csv(cfg, "bandwidth")


def test_config_errors_are_value_errors():
    with pytest.raises(ValueError, match="scenario.num_ru"):
        cfpon.ExperimentConfig.from_json('{"scenario": {"num_ru": 3}}')

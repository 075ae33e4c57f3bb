import math

import numpy as np
import pytest

from weakmeans import (
    Aggregator,
    Interval,
    SamplerConfig,
    arithmetic_mean,
    check_averaging,
    check_homogeneity,
    check_idempotency,
    check_internality,
    check_mixture_sufficient_condition,
    check_monotonicity,
    check_shift_invariance,
    check_weak_monotonicity,
    directional_derivative,
    lehmer_bound_table,
    lehmer_mean,
    median,
    power_mean,
)
from weakmeans import location
from weakmeans.properties import PropertyReport, lehmer_aggregator

FAST = SamplerConfig(samples=4000, seed=0)

MEAN = Aggregator(
    arithmetic_mean,
    domain=Interval(-math.inf, math.inf),
    known=frozenset({"monotone", "shift-invariant"}),
    name="mean",
)
MEDIAN = Aggregator(median, domain=Interval(-math.inf, math.inf), name="median")
MODE = Aggregator(location.mode, domain=Interval(-math.inf, math.inf), name="mode")
SHORTH = Aggregator(location.shorth, domain=Interval(-math.inf, math.inf), name="shorth")


def test_weak_monotonicity_monotone_means_pass():
    assert not check_weak_monotonicity(MEAN, n=4, cfg=FAST).violated
    assert not check_weak_monotonicity(MEDIAN, n=5, cfg=FAST).violated


def test_weak_monotonicity_lehmer_violation():
    report = check_weak_monotonicity(lehmer_aggregator(1.0), n=3, cfg=FAST)
    assert report.violated
    x = np.array(report.witness["x"])
    a = report.witness["a"]
    # witness replays deterministically
    before = lehmer_mean(x, 1.0)
    after = lehmer_mean(x + a, 1.0)
    assert before == report.witness["value_before"]
    assert after == report.witness["value_after"]
    assert after < before - FAST.tol


def test_weak_monotonicity_probe_points():
    report = check_weak_monotonicity(
        lehmer_aggregator(1.0),
        n=3,
        cfg=SamplerConfig(samples=10, probe_points=[((1.0, 0.0, 0.0), 0.1)]),
    )
    assert report.violated
    assert report.witness["x"] == [1.0, 0.0, 0.0]
    assert report.witness["value_before"] == pytest.approx(1.0)
    assert report.witness["value_after"] == pytest.approx(
        (1.1**2 + 2 * 0.01) / (1.1 + 0.2)
    )


def test_monotonicity_checks():
    assert not check_monotonicity(MEDIAN, n=5, cfg=FAST).violated
    assert check_monotonicity(MODE, n=7, cfg=FAST).violated
    assert check_monotonicity(lehmer_aggregator(2.0), n=2, cfg=FAST).violated


def test_shift_invariance_checks():
    assert not check_shift_invariance(SHORTH, n=5, cfg=FAST).violated
    assert not check_shift_invariance(MEAN, n=3, cfg=FAST).violated
    report = check_shift_invariance(lehmer_aggregator(1.0), n=2, cfg=FAST)
    assert report.violated
    # hand witness: L1(1,2)+1 = 8/3 but L1(2,3) = 13/5
    assert lehmer_mean([2, 3], 1) != pytest.approx(lehmer_mean([1, 2], 1) + 1)


def test_homogeneity_checks():
    assert not check_homogeneity(lehmer_aggregator(2.5), n=4, cfg=FAST).violated
    assert not check_homogeneity(MEDIAN, n=3, cfg=FAST).violated
    wobble = Aggregator(
        lambda x: float(np.mean(x) + 0.1 * math.sin(np.mean(x))),
        domain=Interval(-math.inf, math.inf),
        name="wobble",
    )
    assert check_homogeneity(wobble, n=3, cfg=FAST).violated


def test_idempotency_averaging_internality():
    for agg in (MEAN, MEDIAN, SHORTH, lehmer_aggregator(1.5)):
        assert not check_idempotency(agg, n=4, cfg=FAST).violated
        assert not check_averaging(agg, n=4, cfg=FAST).violated
    assert not check_internality(MEDIAN, n=5, cfg=FAST).violated
    report = check_internality(MEAN, n=2, cfg=SamplerConfig(samples=4000, seed=1))
    assert report.violated


def test_directional_derivative():
    n = 4
    val = directional_derivative(MEAN, np.array([0.3, 0.5, 0.2, 0.9]))
    assert val == pytest.approx(1 / math.sqrt(n), rel=1e-6)
    assert directional_derivative(lehmer_aggregator(1.0), np.array([1.0, 0.0, 0.0])) < 0
    assert directional_derivative(SHORTH, np.array([0.1, 0.2, 0.8, 0.85, 0.9])) == (
        pytest.approx(1 / math.sqrt(5), rel=1e-6)
    )


def test_directional_derivative_matches_analytic_power_mean():
    x = np.array([0.4, 0.6, 0.8])
    F = Aggregator(lambda v: power_mean(v, 2.0), domain=Interval(0, math.inf))
    got = directional_derivative(F, x, h=1e-6)
    # analytic gradient of the quadratic mean, contracted with 1/sqrt(n)
    m = power_mean(x, 2.0)
    grad = x / (x.size * m)
    assert got == pytest.approx(float(grad.sum()) / math.sqrt(x.size), rel=1e-4)


def test_mixture_sufficient_condition():
    unit = Interval(0.0, 1.0)
    assert not check_mixture_sufficient_condition(lambda t: 1.0, unit).violated
    r = check_mixture_sufficient_condition(lambda t: t, unit, dw_fn=lambda t: 1.0)
    assert r.violated and r.witness["t"] < 0.5
    r = check_mixture_sufficient_condition(
        lambda t: math.exp(5 * t), unit, dw_fn=lambda t: 5 * math.exp(5 * t)
    )
    assert r.violated and r.witness["t"] < 0.2


def test_lehmer_bound_table():
    cfg = SamplerConfig(samples=3000, seed=0)
    rows = lehmer_bound_table([1.0, 3.0, 0.5], n_max=5, cfg=cfg)
    by = {(r["q"], r["n"]): r for r in rows}
    assert by[(1.0, 2)]["bound"] == 2.0
    assert by[(1.0, 2)]["empirical"] == "no-violation-found"
    assert by[(1.0, 3)]["empirical"] == "violated"
    assert by[(3.0, 5)]["bound"] == pytest.approx(5.0)
    assert by[(3.0, 5)]["empirical"] == "no-violation-found"
    assert "not weakly monotone" in by[(0.5, 2)]["theory"]
    # theory-side guarantee never contradicted empirically
    for r in rows:
        if r["bound"] is not None and r["q"] >= 1 and r["n"] <= r["bound"]:
            assert r["empirical"] == "no-violation-found"


def test_report_serialization_roundtrip():
    report = check_weak_monotonicity(lehmer_aggregator(1.0), n=3, cfg=FAST)
    data = report.to_dict()
    clone = PropertyReport(**data)
    assert clone.to_json() == report.to_json()
    assert "violated" in report.to_text()


def test_sampler_config_validation():
    with pytest.raises(ValueError):
        SamplerConfig(samples=0)
    with pytest.raises(ValueError):
        SamplerConfig(boundary_fraction=1.5)

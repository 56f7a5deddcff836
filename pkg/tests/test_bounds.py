import math

import numpy as np
import pytest
from scipy import optimize as sopt

from fejestoth.bounds import (
    B_THEOREM,
    InconsistentBounds,
    InvalidB,
    InvalidInput,
    condition,
    critical_b,
    dimension_reduction_bound,
    gap_report,
    majorant_margin,
    margin,
    theorem_applies,
    theorem_bound,
)
from fejestoth.constructions import conjectured_value


def brute_min_margin(b):
    # independent oracle: bounded scalar minimization on the right part of [0, 1]
    res = sopt.minimize_scalar(lambda t: margin(t, b), bounds=(0.5, 1.0), method="bounded",
                               options={"xatol": 1e-12})
    return min(0.0, float(res.fun))


def test_margin_at_theorem_b():
    rep = majorant_margin(B_THEOREM, 10**6)
    assert rep.min_margin >= 0
    assert rep.condition_value > 0
    assert rep.grid_size == 10**6


def test_margin_at_b_one():
    rep = majorant_margin(1.0, 10**5)
    assert rep.condition_value == pytest.approx(math.pi / 4 - 0.5, abs=1e-15)
    assert rep.min_margin >= 0


def test_margin_at_1_40_negative():
    rep = majorant_margin(1.40, 10**5)
    assert rep.condition_value < 0
    assert rep.min_margin < 0
    # value of the critical-point condition, frozen from direct evaluation
    assert rep.condition_value == pytest.approx(-0.016903098504006675, abs=1e-12)
    assert rep.min_margin == pytest.approx(brute_min_margin(1.40), abs=1e-10)


def test_margin_below_one_has_no_condition():
    rep = majorant_margin(0.5, 1000)
    assert rep.condition_value is None and rep.min_margin >= 0
    with pytest.raises(InvalidB):
        majorant_margin(0.0)


def test_condition_matches_brute_force_minimum():
    for b in np.linspace(1.0, 1.5, 26):
        assert condition(b) == pytest.approx(
            float(margin(math.sqrt((b + math.sqrt(b * b - 1)) / (2 * b)), b)), abs=1e-14)
        if condition(b) < 0:
            assert brute_min_margin(b) == pytest.approx(condition(b), abs=1e-10)


def test_condition_strictly_decreasing():
    g = [condition(b) for b in np.linspace(1.0, 1.5, 5001)]
    assert np.all(np.diff(g) < 0)


def test_margin_sign_agrees_with_condition():
    for b in np.linspace(1.0, 1.5, 50):
        rep = majorant_margin(b, 10**6)
        if abs(rep.condition_value) > 1e-6:
            assert (rep.min_margin >= 0) == (rep.condition_value > 0)


def test_critical_b():
    b = critical_b(1e-10)
    assert 1.38 < b < 1.40
    assert condition(b - 1e-6) > 0
    assert condition(b - 1e-10) > 0 > condition(b + 1e-10)
    assert majorant_margin(b - 1e-6).min_margin >= -1e-9
    assert majorant_margin(b + 1e-3).min_margin < 0
    assert b == pytest.approx(sopt.brentq(condition, 1.38, 1.40, xtol=1e-14), abs=1e-9)


def test_theorem_bound_values():
    assert theorem_bound(2, B_THEOREM) == pytest.approx(1.110796, abs=1e-6)
    assert theorem_bound(2) == pytest.approx(math.pi / 2 - 69 / 150, abs=1e-15)
    assert theorem_bound(2) < 3 * math.pi / 8
    assert 3 * math.pi / 8 == pytest.approx(1.178097, abs=1e-6)
    vals = [theorem_bound(d) for d in range(2, 2000, 50)]
    assert np.all(np.diff(vals) > 0) and vals[-1] < math.pi / 2
    assert not theorem_applies(1) and theorem_applies(2)


def test_theorem_bound_above_conjecture():
    for d in range(2, 101):
        assert theorem_bound(d) > conjectured_value(d, d + 1)


def test_dimension_reduction_examples():
    assert dimension_reduction_bound(math.pi / 4) == pytest.approx(0.0, abs=1e-15)
    assert dimension_reduction_bound(math.pi / 3) == pytest.approx(math.pi / 4, abs=1e-12)
    assert dimension_reduction_bound(1.110796) == pytest.approx(math.pi - math.pi**2 / 4.443184, abs=1e-12)
    assert dimension_reduction_bound(1.110796) == pytest.approx(0.9203017052317328, abs=1e-12)
    with pytest.raises(InvalidInput):
        dimension_reduction_bound(0.0)


def test_dimension_reduction_maps_conjecture_down():
    for d in range(2, 20):
        assert dimension_reduction_bound(math.pi / 2 * d / (d + 1)) == pytest.approx(
            math.pi / 2 * (d - 1) / d, abs=1e-12)


def test_dimension_reduction_monotone():
    m = np.linspace(0.1, 3.0, 500)
    vals = [dimension_reduction_bound(x) for x in m]
    assert np.all(np.diff(vals) > 0)


def test_gap_report_sandwich():
    rep = gap_report(2, 3, math.pi / 3)
    assert rep["sandwich_holds"]
    assert rep["conjectured_value"] == pytest.approx(1.047198, abs=1e-6)
    assert rep["upper_bound"] == pytest.approx(1.110796, abs=1e-6)


def test_gap_report_settled_circle():
    rep = gap_report(1, 4, math.pi / 4)
    assert rep["conjectured_value"] == rep["upper_bound"] == pytest.approx(math.pi / 4)
    assert rep["gap"] == pytest.approx(0.0, abs=1e-15)


def test_gap_report_flags_impossible_energy():
    with pytest.raises(InconsistentBounds):
        gap_report(2, 3, 1.2)

import pytest
from hypothesis import given
from hypothesis import strategies as st

from faga.core import ConfigurationError
from faga.penalty import PenaltyConfig, penalize, violation_sum


def test_negative_theta_rejected():
    with pytest.raises(ConfigurationError):
        PenaltyConfig(theta=-1.0)


def test_violation_sum_ignores_satisfied_inequalities():
    assert violation_sum([-3.0, -0.1], []) == 0.0


def test_violation_sum_mixed():
    assert violation_sum([2.0, -1.0], [0.5, -0.25]) == pytest.approx(2.75)


def test_feasible_point_unchanged():
    cfg = PenaltyConfig(theta=1e6)
    assert penalize(12.5, [-1.0, 0.0], [0.0], cfg) == 12.5


def test_sense_max_subtracts():
    cfg = PenaltyConfig(theta=10.0)
    assert penalize(100.0, [2.0], [], cfg, sense="max") == pytest.approx(80.0)
    assert penalize(100.0, [2.0], [], cfg, sense="min") == pytest.approx(120.0)


finite = st.floats(-1e6, 1e6, allow_nan=False)


@given(st.lists(finite, max_size=5), st.lists(finite, max_size=3))
def test_violation_sum_nonnegative(g, h):
    assert violation_sum(g, h) >= 0.0


@given(finite, st.lists(finite, max_size=5), st.lists(finite, max_size=3))
def test_penalty_never_improves(raw, g, h):
    cfg = PenaltyConfig(theta=3.0)
    assert penalize(raw, g, h, cfg, "min") >= raw
    assert penalize(raw, g, h, cfg, "max") <= raw


@given(finite, st.floats(0.0, 1e3), st.floats(0.0, 1e3))
def test_monotone_in_violation(raw, v1, extra):
    # a strictly larger violation can never score better under "min"
    cfg = PenaltyConfig(theta=2.0)
    assert penalize(raw, [v1 + extra], [], cfg) >= penalize(raw, [v1], [], cfg)

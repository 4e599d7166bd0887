import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlechar import (
    ZeroSumTuple,
    brute_force_projectable,
    is_projectable,
    mcss,
    mnss,
    projection_interval,
)
from mlechar.errors import BudgetExceeded, InvalidBounds, NotCharacterizable
from mlechar.score import LOCATION, SCALE, analyze_image, location_score_fn
from mlechar import lookup, split_halflines

INF = math.inf

bounds_strategy = st.floats(min_value=0.05, max_value=50.0,
                            allow_nan=False, allow_infinity=False)


def test_mcss_examples():
    assert mcss(1.0, 1.0).value == 2
    assert mcss(1.0, 3.0).value == 4
    assert math.isinf(mcss(INF, 1.0).value)
    assert math.isinf(mcss(1.0, INF).value)
    assert mcss(INF, INF).value == 2  # equal (infinite) bounds


def test_mcss_rejects_bad_bounds():
    with pytest.raises(InvalidBounds):
        mcss(0.0, 1.0)
    with pytest.raises(InvalidBounds):
        mcss(1.0, -2.0)
    with pytest.raises(InvalidBounds):
        mcss(float("nan"), 1.0)


def test_mcss_exact_integer_ratio_not_inflated():
    # ratio exactly 3 -> 4, and floating noise on the ratio must not push
    # the ceiling to 5
    assert mcss(1.0, 3.0).value == 4
    assert mcss(1.0, 3.0 * (1.0 + 1e-12)).value == 4
    assert mcss(0.1, 0.2).value == 3


@given(a=bounds_strategy, b=bounds_strategy)
@settings(max_examples=300, deadline=None)
def test_mcss_symmetric(a, b):
    assert mcss(a, b).value == mcss(b, a).value


@given(a=bounds_strategy, b=bounds_strategy,
       lam=st.floats(min_value=0.01, max_value=100.0))
@settings(max_examples=300, deadline=None)
def test_mcss_scale_invariant(a, b, lam):
    assert mcss(a, b).value == mcss(lam * a, lam * b).value


@given(a=bounds_strategy, b=bounds_strategy)
@settings(max_examples=200, deadline=None)
def test_mcss_value_two_only_for_equal_bounds(a, b):
    value = mcss(a, b).value
    assert value >= 2
    if value == 2:
        assert abs(a - b) <= 1e-9 * max(a, b)


def test_projection_interval_examples():
    assert projection_interval(INF, 1.0, 3) == (-2.0, 1.0)
    assert projection_interval(1.0, 3.0, 3) == (-1.0, 2.0)
    assert projection_interval(1.0, 1.0, 2) == (-1.0, 1.0)


@given(a=bounds_strategy, b=bounds_strategy)
@settings(max_examples=200, deadline=None)
def test_projection_nested_and_converges_at_mcss(a, b):
    cover = mcss(a, b).value
    prev = projection_interval(a, b, 1)
    for n in range(2, 10):
        cur = projection_interval(a, b, n)
        assert cur[0] <= prev[0] and cur[1] >= prev[1]
        full = cur[0] <= -a * (1 - 1e-12) and cur[1] >= b * (1 - 1e-12)
        assert full == (n >= cover)
        prev = cur


def test_is_projectable_examples():
    assert is_projectable(1.0, 3.0, 4)
    assert not is_projectable(1.0, 3.0, 3)
    assert is_projectable(INF, INF, 2)
    assert not is_projectable(INF, 1.0, 1000)


def test_brute_force_examples():
    assert brute_force_projectable(1.0, 1.0, 2, grid=41)
    assert not brute_force_projectable(1.0, 3.0, 3, grid=41)
    assert brute_force_projectable(1.0, 3.0, 4, grid=41)


def test_brute_force_budget():
    with pytest.raises(BudgetExceeded):
        brute_force_projectable(1.0, 2.0, 9, grid=41)
    with pytest.raises(BudgetExceeded):
        brute_force_projectable(1.0, 2.0, 4, grid=201)
    with pytest.raises(BudgetExceeded):
        brute_force_projectable(INF, 2.0, 4, grid=41)


def test_lattice_agreement():
    lattice = (0.5, 1.0, 1.5, 2.0, 3.0)
    for pm in lattice:
        for pp in lattice:
            for n in range(2, 9):
                assert is_projectable(pm, pp, n) == \
                    brute_force_projectable(pm, pp, n, grid=41), (pm, pp, n)


def test_mnss_from_profiles(gaussian):
    prof = analyze_image(location_score_fn(gaussian.model))
    assert mnss(prof, LOCATION).value == 3

    pair = split_halflines(gaussian.model)
    result = mnss(pair, SCALE)
    assert math.isinf(result.value)
    assert result.per_halfline is not None

    student3 = lookup("student", {"nu": 3.0}).model
    assert mnss(split_halflines(student3), SCALE).value == 4


def test_mnss_is_at_least_three():
    prof = analyze_image(location_score_fn(lookup("logistic").model))
    r = mnss(prof, LOCATION)
    assert r.value == 3  # symmetric image, covering size 2, floor 3


def test_mnss_requires_zero_crossing(gaussian):
    prof = analyze_image(location_score_fn(gaussian.model))
    shifted = type(prof)(
        kind=prof.kind, domain=prof.domain,
        evaluate=lambda x: prof.evaluate(x) ** 2 + 1.0,
        monotone_increasing=True, crosses_zero=False,
        p_minus=1.0, p_plus=math.inf,
        bounds_provenance=prof.bounds_provenance,
    )
    with pytest.raises(NotCharacterizable):
        mnss(shifted, LOCATION)


def test_zero_sum_tuple():
    t = ZeroSumTuple((0.5, -0.2, -0.3))
    assert t.n == 3
    assert t.in_image(1.0, 1.0)
    assert not t.in_image(0.25, 1.0)
    with pytest.raises(ValueError):
        ZeroSumTuple((0.5, 0.5))

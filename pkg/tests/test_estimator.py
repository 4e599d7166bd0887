import math

import numpy as np
import pytest
from scipy.optimize import brentq

from mlechar import (
    LOCATION,
    SCALE,
    closed_form_mle,
    lookup,
    mle_group,
    mle_location,
    mle_scale,
    sample_from,
    tilt,
)
from mlechar.density import Sample
from mlechar.errors import AllZeroSample, BracketFailure, NoClosedForm, OutsideSupport
from mlechar.estimator import BracketedRoot, ClosedForm
from mlechar.score import GroupTransform


def s(*values):
    return Sample(np.asarray(values, dtype=float))


def test_gaussian_location_is_sample_mean(gaussian):
    r = mle_location(gaussian.model, s(1.0, 2.0, 3.0))
    assert abs(r.theta_hat - 2.0) < 1e-12
    assert isinstance(r.method, BracketedRoot)
    assert abs(r.residual) < 1e-10


def test_ferguson_location_closed_form_value():
    entry = lookup("generalized_gaussian", {"alpha": 1.0, "gamma": 1.0})
    r = mle_location(entry.model, s(0.0, math.log(3.0)))
    assert abs(r.theta_hat - math.log(2.0)) < 1e-10


def test_quartic_location_root(quartic_unnormalized):
    # oracle: the score sum for exp(-y^4/4) is sum (x_i - t)^3; solve it
    # directly with an independent bracketed bisection
    sample = (0.0, 0.0, 3.0)

    def cubic_sum(t):
        return sum((x - t) ** 3 for x in sample)

    oracle = brentq(cubic_sum, -10.0, 10.0, xtol=1e-14)
    assert abs(oracle - 3.0 / (1.0 + 2.0 ** (1.0 / 3.0))) < 1e-10

    r = mle_location(quartic_unnormalized, s(*sample))
    assert abs(r.theta_hat - oracle) < 1e-9


def test_laplace_scale_from_mean_abs():
    r = mle_scale(lookup("laplace").model, s(1.0, -1.0, 2.0))
    assert abs(r.theta_hat - 0.75) < 1e-10
    assert abs(r.sigma_hat - 4.0 / 3.0) < 1e-9


def test_gaussian_scale_unit(gaussian):
    r = mle_scale(gaussian.model, s(1.0, 1.0))
    assert abs(r.theta_hat - 1.0) < 1e-12


def test_gamma_scale_alpha_over_mean(gamma2):
    r = mle_scale(gamma2.model, s(1.0, 3.0))
    assert abs(r.theta_hat - 1.0) < 1e-10


def test_group_mle_symmetric_sample_is_zero(gaussian, sinh_arcsinh):
    tr = sinh_arcsinh.transform
    for a in (0.3, 1.1, 2.0):
        r = mle_group(gaussian.model, tr, s(a, -a))
        assert abs(r.theta_hat) < 1e-10


def test_group_mle_matches_grid_scan_oracle(gaussian, sinh_arcsinh):
    tr = sinh_arcsinh.transform
    sample = (0.5, 1.0, 1.5)

    # oracle: the transformed score sum, written out from scratch, scanned
    # on a fine grid for its sign change and bisected
    def score_sum(delta):
        total = 0.0
        for x in sample:
            hx = math.sinh(math.asinh(x) + delta)
            total += -hx ** 3 / math.sqrt(1.0 + hx * hx)
        return total

    grid = np.linspace(-3.0, 3.0, 6001)
    vals = np.array([score_sum(float(d)) for d in grid])
    flip = int(np.where(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0][0])
    oracle = brentq(score_sum, float(grid[flip]), float(grid[flip + 1]), xtol=1e-13)

    r = mle_group(gaussian.model, tr, s(*sample))
    assert abs(r.theta_hat - oracle) < 1e-6


def test_group_mle_reduces_to_location(gaussian):
    shift_group = GroupTransform(
        u1=lambda x: 1.0,
        u2=lambda x: 0.0,
        h=lambda theta, x: x - theta,
        dh_dx=lambda theta, x: 1.0,
        theta_window=(-64.0, 64.0),
    )
    r = mle_group(gaussian.model, shift_group, s(1.0, 2.0, 3.0))
    assert abs(r.theta_hat - 2.0) < 1e-10


def test_closed_forms_examples(gaussian):
    gumbel = lookup("gumbel")
    r = closed_form_mle(gumbel, LOCATION, s(0.0, 0.0))
    assert r.theta_hat == 0.0
    assert isinstance(r.method, ClosedForm)

    weibull = lookup("weibull", {"k": 2.0})
    r = closed_form_mle(weibull, SCALE, s(1.0, 1.0))
    assert abs(r.theta_hat - 1.0) < 1e-14

    r = closed_form_mle(gaussian, LOCATION, s(5.0))
    assert r.theta_hat == 5.0


def test_closed_form_missing(logistic):
    with pytest.raises(NoClosedForm):
        closed_form_mle(logistic, LOCATION, s(1.0, 2.0))


@pytest.mark.parametrize("name,params,kind", [
    ("gaussian", {}, "location"),
    ("gaussian", {}, "scale"),
    ("gamma", {"alpha": 2.0}, "scale"),
    ("laplace", {}, "scale"),
    ("weibull", {"k": 2.0}, "scale"),
    ("gumbel", {}, "location"),
    ("generalized_gaussian", {"alpha": 1.0, "gamma": 1.0}, "location"),
])
def test_closed_form_agrees_with_root_solver(name, params, kind):
    entry = lookup(name, params)
    rng_sizes = [2 + (i % 11) for i in range(60)]
    block = sample_from(entry.model, sum(rng_sizes), seed=1234)
    pos = 0
    for n in rng_sizes:
        sample = Sample(block.values[pos:pos + n])
        pos += n
        if kind == "location":
            closed = closed_form_mle(entry, LOCATION, sample).theta_hat
            numeric = mle_location(entry.model, sample).theta_hat
            assert abs(closed - numeric) < 1e-8
        else:
            closed = closed_form_mle(entry, SCALE, sample).theta_hat
            numeric = mle_scale(entry.model, sample).theta_hat
            assert abs(closed - numeric) / abs(numeric) < 1e-8


def test_location_equivariance(gumbel):
    base_sample = sample_from(gumbel.model, 6, seed=5)
    base = mle_location(gumbel.model, base_sample).theta_hat
    for c in (-5.0, 1.0, 10.0):
        shifted = Sample(base_sample.values + c)
        got = mle_location(gumbel.model, shifted).theta_hat
        assert abs(got - base - c) < 1e-8


def test_scale_equivariance(weibull2):
    base_sample = sample_from(weibull2.model, 6, seed=6)
    base = mle_scale(weibull2.model, base_sample).theta_hat
    for lam in (0.5, 2.0, 10.0):
        rescaled = Sample(base_sample.values * lam)
        got = mle_scale(weibull2.model, rescaled).theta_hat
        assert abs(got * lam - base) / base < 1e-8


@pytest.mark.parametrize("d", [0.5, 2.0, 5.0])
def test_equivalence_class_members_share_mles(gaussian, gamma2, d):
    t_loc = tilt(gaussian.model, d, LOCATION)
    t_sca = tilt(gamma2.model, d, SCALE)
    for seed in range(5):
        sample = sample_from(gaussian.model, 5, seed=seed)
        a = mle_location(gaussian.model, sample).theta_hat
        b = mle_location(t_loc, sample).theta_hat
        assert abs(a - b) < 1e-7
        sample = sample_from(gamma2.model, 5, seed=seed)
        a = mle_scale(gamma2.model, sample).theta_hat
        b = mle_scale(t_sca, sample).theta_hat
        assert abs(a - b) < 1e-7


def test_residual_contract(gaussian, gamma2):
    from mlechar.estimator import location_score_sum, scale_score_sum

    sample = sample_from(gaussian.model, 7, seed=9)
    r = mle_location(gaussian.model, sample, tol=1e-10)
    assert abs(location_score_sum(gaussian.model, sample, r.theta_hat)) < 1e-10
    sample = sample_from(gamma2.model, 7, seed=9)
    r = mle_scale(gamma2.model, sample, tol=1e-10)
    assert abs(scale_score_sum(gamma2.model, sample, r.theta_hat)) < 1e-10


def test_scale_requires_positive_values_in_support(gamma2):
    with pytest.raises(OutsideSupport):
        mle_scale(gamma2.model, s(1.0, -2.0))


def test_all_zero_sample(gaussian):
    with pytest.raises(AllZeroSample):
        mle_scale(gaussian.model, s(0.0, 0.0))


def test_bracket_failure_outside_window(gaussian, sinh_arcsinh):
    narrow = GroupTransform(
        u1=sinh_arcsinh.transform.u1,
        u2=sinh_arcsinh.transform.u2,
        h=sinh_arcsinh.transform.h,
        dh_dx=sinh_arcsinh.transform.dh_dx,
        theta_window=(-0.01, 0.01),
    )
    with pytest.raises(BracketFailure):
        mle_group(gaussian.model, narrow, s(5.0, 6.0, 7.0))

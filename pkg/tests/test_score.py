import math

import numpy as np
import pytest

from mlechar import lookup, split_halflines
from mlechar.errors import NotMonotone, UnsupportedSupport
from mlechar.score import (
    ProbeConfig,
    analyze_image,
    bracketed_root,
    group_score,
    group_score_fn,
    location_score,
    location_score_fn,
    scale_score,
    scale_score_fn,
)


def test_location_score_values(gaussian, logistic, gumbel):
    assert location_score(gaussian.model, 2.0) == 2.0
    assert abs(location_score(logistic.model, 0.0)) < 1e-15
    assert abs(location_score(gumbel.model, 0.0)) < 1e-15
    # tanh(x/2) shape
    assert abs(location_score(logistic.model, 1.0) - math.tanh(0.5)) < 1e-12


def test_location_score_needs_full_line(gamma2):
    with pytest.raises(UnsupportedSupport):
        location_score(gamma2.model, 1.0)


def test_scale_score_values(gaussian, gamma2):
    assert abs(scale_score(gaussian.model, 1.0)) < 1e-15
    assert abs(scale_score(gamma2.model, 2.0)) < 1e-15
    weibull = lookup("weibull", {"k": 2.0})
    assert abs(scale_score(weibull.model, 1.0)) < 1e-15
    # the formula value at the origin of a full-line support is 1
    assert scale_score(gaussian.model, 0.0) == 1.0


def test_group_score_values(gaussian, sinh_arcsinh):
    tr = sinh_arcsinh.transform
    got = group_score(gaussian.model, tr.u1, tr.u2, 1.0)
    assert abs(got - (-1.0 / math.sqrt(2.0))) < 1e-12
    # (u1, u2) = (x, 1) reduces to the scale score
    assert abs(group_score(gaussian.model, lambda x: x, lambda x: 1.0, 1.0)) < 1e-15
    # (u1, u2) = (1, 0) is the raw log-derivative
    assert abs(group_score(gaussian.model, lambda x: 1.0, lambda x: 0.0, 2.0)
               - (-2.0)) < 1e-15


@pytest.mark.parametrize("name", ["gaussian", "laplace", "student", "logistic"])
def test_symmetric_families_have_odd_location_scores(name):
    params = {"nu": 2.0} if name == "student" else {}
    model = lookup(name, params).model
    for x in np.linspace(0.1, 8.0, 40):
        plus = -float(model.dlog_pdf(float(x)))
        minus = -float(model.dlog_pdf(float(-x)))
        assert abs(plus + minus) < 1e-8


def test_group_score_reductions_pointwise(gaussian):
    xs = np.linspace(-6.0, 6.0, 25) + 0.01
    for x in xs:
        x = float(x)
        raw = group_score(gaussian.model, lambda y: 1.0, lambda y: 0.0, x)
        assert abs(raw - (-location_score(gaussian.model, x))) < 1e-12
        as_scale = group_score(gaussian.model, lambda y: y, lambda y: 1.0, x)
        assert abs(as_scale - scale_score(gaussian.model, x)) < 1e-12


def test_analyze_image_gaussian_location(gaussian):
    prof = analyze_image(location_score_fn(gaussian.model))
    assert prof.monotone_increasing and prof.crosses_zero
    assert math.isinf(prof.p_minus) and math.isinf(prof.p_plus)
    assert prof.bounds_provenance.method == "numeric"


def test_analyze_image_gumbel_location(gumbel):
    prof = analyze_image(location_score_fn(gumbel.model))
    assert math.isinf(prof.p_minus)
    assert abs(prof.p_plus - 1.0) < 1e-3


def test_analyze_image_student_scale_halfline():
    model = lookup("student", {"nu": 3.0}).model
    prof = analyze_image(scale_score_fn(model, "pos"))
    assert not prof.monotone_increasing
    assert prof.crosses_zero
    assert abs(prof.p_minus - 3.0) < 3e-3
    assert abs(prof.p_plus - 1.0) < 1e-3


def test_analyze_image_analytic_bounds_passthrough(gumbel):
    prof = analyze_image(location_score_fn(gumbel.model),
                         analytic_bounds=(math.inf, 1.0))
    assert prof.bounds_provenance.method == "analytic"
    assert math.isinf(prof.p_minus) and prof.p_plus == 1.0


def test_split_halflines_images(gaussian):
    neg, pos = split_halflines(gaussian.model)
    for prof in (neg, pos):
        assert math.isinf(prof.p_minus)
        assert abs(prof.p_plus - 1.0) < 1e-3
    laplace = lookup("laplace").model
    for prof in split_halflines(laplace):
        assert math.isinf(prof.p_minus) and abs(prof.p_plus - 1.0) < 1e-3
    cauchy = lookup("student", {"nu": 1.0}).model
    for prof in split_halflines(cauchy):
        assert abs(prof.p_minus - 1.0) < 1e-3 and abs(prof.p_plus - 1.0) < 1e-3


def test_not_monotone_families():
    with pytest.raises(NotMonotone):
        analyze_image(location_score_fn(lookup("laplace").model))
    with pytest.raises(NotMonotone):
        analyze_image(location_score_fn(lookup("student", {"nu": 3.0}).model))
    # a visibly skewed member of the sinh-arcsinh family has a location
    # score with an interior dip (the base at theta=0 is just the normal)
    skewed = lookup("sinh_arcsinh_skew_normal").group_density(1.5)
    with pytest.raises(NotMonotone):
        analyze_image(location_score_fn(skewed))


def test_probe_grid_minimum_size():
    with pytest.raises(ValueError):
        ProbeConfig(points=10)


@pytest.mark.parametrize("name,params,kind", [
    ("gaussian", {}, "location"),
    ("gumbel", {}, "location"),
    ("logistic", {}, "location"),
    ("gamma", {"alpha": 2.0}, "scale"),
    ("weibull", {"k": 2.0}, "scale"),
])
def test_score_root_is_tiny_at_bracketed_zero(name, params, kind):
    entry = lookup(name, params)
    if kind == "location":
        prof = analyze_image(location_score_fn(entry.model))
    else:
        prof = analyze_image(scale_score_fn(entry.model))
    root = bracketed_root(prof)
    assert abs(prof.evaluate(root)) < 1e-8


def test_group_profile_symmetric_image(gaussian, sinh_arcsinh):
    tr = sinh_arcsinh.transform
    prof = analyze_image(group_score_fn(gaussian.model, tr.u1, tr.u2))
    assert math.isinf(prof.p_minus) and math.isinf(prof.p_plus)
    assert prof.crosses_zero and not prof.monotone_increasing

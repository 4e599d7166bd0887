import math

import numpy as np
import pytest

from mlechar import (
    LOCATION,
    OddPower,
    PlusEvenDerivative,
    forge_odd_h,
    lookup,
    mle_location,
    same_class,
    subcritical_witness,
    tilt,
    verify_counterexample,
)
from mlechar.density import Sample
from mlechar.errors import AlreadyCovered, InvalidBounds, NotMonotone


@pytest.fixture(scope="module")
def quartic_forge(gaussian):
    return forge_odd_h(gaussian.model, OddPower(1.0, 3))


def test_hspec_validation():
    with pytest.raises(ValueError):
        OddPower(d=-1.0, p=3)
    with pytest.raises(ValueError):
        OddPower(d=1.0, p=2)
    with pytest.raises(ValueError):
        OddPower(d=1.0, p=0)


def test_forged_quartic_log_density(gaussian, quartic_forge):
    # -log g = y^4/4 up to the normalizing constant
    for x in np.linspace(-3.0, 3.0, 13):
        x = float(x)
        want = -(x ** 4) / 4.0
        got = quartic_forge.log_pdf(x) - quartic_forge.log_pdf(0.0)
        assert abs(got - want) < 1e-6


def test_identity_h_reproduces_target(gaussian):
    same = forge_odd_h(gaussian.model, OddPower(1.0, 1))
    for x in np.linspace(-3.0, 3.0, 13):
        assert abs(same.log_pdf(float(x)) - gaussian.model.log_pdf(float(x))) < 1e-6


def test_even_derivative_perturbation(gaussian):
    forged = forge_odd_h(gaussian.model, PlusEvenDerivative(
        w=lambda y: 0.1 * math.cos(y),
        w_prime=lambda y: -0.1 * math.sin(y),
    ))
    # symbolic oracle: integrating y - 0.1 sin(y) gives y^2/2 + 0.1 cos(y)
    ref = lambda x: -(x * x / 2.0 + 0.1 * math.cos(x))
    offset = forged.log_pdf(0.0) - ref(0.0)
    for x in np.linspace(-3.0, 3.0, 13):
        assert abs(forged.log_pdf(float(x)) - ref(float(x)) - offset) < 1e-6


def test_amplitude_guard_rejects_large_perturbations(gaussian):
    with pytest.raises(NotMonotone):
        forge_odd_h(gaussian.model, PlusEvenDerivative(
            w=lambda y: 2.0 * math.cos(y),
            w_prime=lambda y: -2.0 * math.sin(y),
        ))


def test_forge_requires_monotone_target():
    with pytest.raises(NotMonotone):
        forge_odd_h(lookup("laplace").model, OddPower(1.0, 3))


def test_two_point_symmetric_samples_share_the_mle(gaussian, quartic_forge):
    for mid, spread in ((0.0, 1.0), (2.0, 0.7), (-1.5, 2.5)):
        sample = Sample(np.array([mid - spread, mid + spread]))
        tf = mle_location(gaussian.model, sample).theta_hat
        tg = mle_location(quartic_forge, sample).theta_hat
        assert abs(tf - mid) < 1e-9
        assert abs(tg - mid) < 1e-9


def test_fixed_witness_separates_at_three_points(gaussian, quartic_forge):
    witness = Sample(np.array([0.0, 0.0, 3.0]))
    tf = mle_location(gaussian.model, witness).theta_hat
    tg = mle_location(quartic_forge, witness).theta_hat
    assert abs(tf - 1.0) < 1e-10
    assert abs(tg - 3.0 / (1.0 + 2.0 ** (1.0 / 3.0))) < 1e-7
    assert abs(tf - tg) > 0.3


def test_forged_density_leaves_the_class(gaussian, quartic_forge):
    assert same_class(gaussian.model, quartic_forge, LOCATION) is None
    # while a plain tilt stays inside it
    assert same_class(gaussian.model, tilt(gaussian.model, 2.0, LOCATION),
                      LOCATION) is not None


def test_verify_counterexample_reports(gaussian, quartic_forge):
    rep2 = verify_counterexample(gaussian.model, quartic_forge, n=2, trials=60,
                                 seed=99, tol=1e-7)
    assert rep2.agreement_fraction == 1.0
    assert rep2.worst is None

    rep3 = verify_counterexample(gaussian.model, quartic_forge, n=3, trials=60,
                                 seed=99, tol=1e-4)
    assert rep3.agreement_fraction < 0.05
    assert rep3.worst is not None
    assert rep3.worst.gap > 1e-4
    # two-point agreement and three-point agreement never hold together
    assert not (rep2.agreement_fraction == 1.0 and rep3.agreement_fraction == 1.0)


def test_verify_counterexample_on_shared_class(gaussian):
    tilted = tilt(gaussian.model, 2.0, LOCATION)
    rep = verify_counterexample(gaussian.model, tilted, n=4, trials=40,
                                seed=5, tol=1e-7)
    assert rep.agreement_fraction == 1.0


def test_subcritical_witness_intervals():
    w = subcritical_witness((1.0, 3.0), 3)
    assert w.identified == (-1.0, 2.0)
    assert w.unidentified == ((2.0, 3.0),)

    w = subcritical_witness((1.0, 3.0), 2)
    assert w.identified == (-1.0, 1.0)
    assert w.unidentified == ((1.0, 3.0),)

    with pytest.raises(AlreadyCovered):
        subcritical_witness((1.0, 1.0), 2)
    with pytest.raises(AlreadyCovered):
        subcritical_witness((1.0, 3.0), 4)
    with pytest.raises(InvalidBounds):
        subcritical_witness((math.inf, 1.0), 3)


def test_subcritical_witness_accepts_profiles(gumbel):
    from mlechar.score import analyze_image, location_score_fn

    prof = analyze_image(location_score_fn(gumbel.model),
                         analytic_bounds=(3.0, 1.0))
    w = subcritical_witness(prof, 2)
    assert w.identified == (-1.0, 1.0)
    assert w.unidentified == ((-3.0, -1.0),)

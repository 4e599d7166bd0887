"""Counterexample densities sharing a target's location MLE below the MNSS.

Given a target f with odd, strictly increasing location score phi, any odd
strictly increasing h yields a density g with ``-g'/g = h o phi``:

    log g(x) = -int_{x0}^{x} h(phi(y)) dy + log c,

anchored at phi's zero crossing x0.  Such a g shares f's MLE on every
symmetric two-point sample (both estimators return the midpoint) while, for
h other than a positive multiple of the identity, g sits in a different
equivalence class and the shared-MLE property breaks down at sample size 3.

Two shapes of h are supported: odd powers ``h(y) = d * y**p`` and the
even-derivative perturbation ``h(y) = y + w'(y)`` for an even differentiable
w (guarded numerically so h stays strictly increasing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .coverage import mcss, projection_interval
from .density import (
    CumulativeIntegral,
    DensityModel,
    Sample,
    effective_interval,
    normalize,
    sample_from,
)
from .errors import AlreadyCovered, InvalidBounds, NotMonotone
from .estimator import mle_location
from .score import ScoreProfile, analyze_image, bracketed_root, location_score_fn


@dataclass(frozen=True)
class OddPower:
    """h(y) = d * y**p with d > 0 and odd p.

    p = 1 reproduces the tilt class of the target; odd p >= 3 leaves it,
    which is the counterexample construction.
    """

    d: float
    p: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.d) and self.d > 0.0):
            raise ValueError(f"OddPower needs d > 0, got {self.d}")
        if self.p < 1 or self.p % 2 == 0:
            raise ValueError(f"OddPower needs odd p >= 1, got {self.p}")


@dataclass(frozen=True, eq=False)
class PlusEvenDerivative:
    """h(y) = y + w'(y) for an even differentiable w.

    ``w_prime`` may be supplied analytically; otherwise it is taken by
    central differences of ``w``.  The amplitude guard rejects w whose
    perturbation destroys strict monotonicity of h (min slope below the
    guard threshold on the probe grid).
    """

    w: Callable[[float], float]
    w_prime: Optional[Callable[[float], float]] = None
    amplitude_guard: float = 1e-3


HSpec = Union[OddPower, PlusEvenDerivative]


def h_function(spec: HSpec) -> Callable[[float], float]:
    """The scalar map h described by an :class:`HSpec`."""
    if isinstance(spec, OddPower):
        d, p = spec.d, spec.p
        return lambda y: d * y ** p
    w_prime = spec.w_prime
    if w_prime is None:
        w = spec.w
        w_prime = lambda y: (w(y + 1e-6) - w(y - 1e-6)) / 2e-6
    return lambda y: y + w_prime(y)


def _check_h_increasing(h: Callable[[float], float], ys: np.ndarray,
                        guard: float) -> None:
    vals = np.array([h(float(y)) for y in ys])
    slopes = np.diff(vals) / np.diff(ys)
    if not np.all(slopes > guard):
        raise NotMonotone(
            f"h is not strictly increasing on the probe grid "
            f"(min slope {slopes.min():.3e} <= guard {guard:g})"
        )


def forge_odd_h(target: DensityModel, h_spec: HSpec) -> DensityModel:
    """Density g with ``-g'/g = h o phi_target``, normalized.

    Raises :class:`NotMonotone` when the target's location score is not
    strictly monotone/crossing (or when h fails its amplitude guard), and
    :class:`DivergentIntegral` when the composed density is not integrable.
    """
    profile = analyze_image(location_score_fn(target))
    if not profile.crosses_zero:
        raise NotMonotone("target location score does not cross zero")
    phi = profile.evaluate
    anchor = bracketed_root(profile)

    h = h_function(h_spec)
    lo, hi = effective_interval(target, drop=80.0)
    lo = min(lo, anchor - 1.0)
    hi = max(hi, anchor + 1.0)
    if isinstance(h_spec, PlusEvenDerivative):
        ys = np.array([phi(x) for x in np.linspace(lo, hi, 201)])
        _check_h_increasing(h, np.sort(ys), h_spec.amplitude_guard)

    antider = CumulativeIntegral(lambda y: h(phi(y)), anchor, lo, hi)

    def log_pdf(x: float) -> float:
        return -antider(x)

    def dlog(x: float) -> float:
        return -h(phi(x))

    raw = DensityModel(
        name=f"forged({target.name})",
        support=target.support,
        log_pdf=log_pdf,
        dlog_pdf=dlog,
        params=dict(target.params),
    )
    _, forged = normalize(raw)
    return forged


# ---------------------------------------------------------------------------
# empirical verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    sample: tuple
    theta_f: float
    theta_g: float

    @property
    def gap(self) -> float:
        return abs(self.theta_f - self.theta_g)


@dataclass(frozen=True)
class CounterexampleReport:
    n: int
    trials: int
    tol: float
    agree_count: int
    worst: Optional[Witness]

    @property
    def agreement_fraction(self) -> float:
        return self.agree_count / self.trials


def verify_counterexample(f: DensityModel, g: DensityModel, n: int, trials: int,
                          seed: int, tol: float) -> CounterexampleReport:
    """Fraction of seeded size-n samples from f on which the two location
    MLEs agree within ``tol``, plus the worst disagreeing witness.

    Per-trial seeds are split from the master seed in counter mode, so the
    report is reproducible and trials are independent.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    trial_seeds = np.random.SeedSequence(seed).generate_state(trials)
    # the solver residual requirement stays subordinate to the agreement
    # tolerance under test: interpolated densities carry evaluation noise
    # that a 1e-10 residual demand cannot beat
    solver_tol = max(1e-10, 1e-3 * tol)
    agree = 0
    worst: Optional[Witness] = None
    for ts in trial_seeds:
        sample = sample_from(f, n, int(ts))
        rf = mle_location(f, sample, solver_tol)
        rg = mle_location(g, sample, solver_tol)
        gap = abs(rf.theta_hat - rg.theta_hat)
        if gap < tol:
            agree += 1
        elif worst is None or gap > worst.gap:
            worst = Witness(tuple(float(v) for v in sample.values),
                            rf.theta_hat, rg.theta_hat)
    return CounterexampleReport(n, trials, tol, agree, worst)


# ---------------------------------------------------------------------------
# subcritical identifiability window
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubcriticalWitness:
    """Identified part of a score image at a sample size below the MCSS."""

    n: int
    identified: tuple[float, float]
    unidentified: tuple[tuple[float, float], ...]


def subcritical_witness(profile_or_bounds: Union[ScoreProfile, tuple],
                        n: int) -> SubcriticalWitness:
    """Identifiable sub-interval of the image at sample size ``n < MCSS``.

    The coordinate projections only reach ``projection_interval`` at size n;
    the remainder of the image is structurally unidentified at that size.
    Raises :class:`AlreadyCovered` once n reaches the MCSS.
    """
    if isinstance(profile_or_bounds, ScoreProfile):
        pm, pp = profile_or_bounds.p_minus, profile_or_bounds.p_plus
    else:
        pm, pp = profile_or_bounds
    if n < 1:
        raise ValueError("n must be >= 1")
    cov = mcss(pm, pp)
    if n >= cov.value:
        raise AlreadyCovered(f"n={n} already reaches MCSS={cov}")
    if not (math.isfinite(pm) and math.isfinite(pp)):
        raise InvalidBounds(
            "subcritical witnesses require finite bounds (infinite-bound "
            "images are never covered and identify nothing new per n)"
        )
    lo, hi = projection_interval(pm, pp, n)
    gaps = []
    if lo > -pm:
        gaps.append((-pm, lo))
    if hi < pp:
        gaps.append((hi, pp))
    return SubcriticalWitness(n, (lo, hi), tuple(gaps))

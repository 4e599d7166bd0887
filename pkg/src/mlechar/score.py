"""Score functions and image analysis.

Three score constructions are supported, one per parameter kind:

- location: ``phi(x) = -f'(x)/f(x)`` on the full line (stored with this sign
  so that well-behaved targets have *increasing* scores),
- scale:    ``psi(x) = 1 + x f'(x)/f(x)`` on the full line or a half-line,
- group:    ``u2(x) + u1(x) f'(x)/f(x)`` for a transformation pair (u1, u2).

``analyze_image`` classifies a score over its domain: strict monotonicity,
zero crossing, and the image bounds ``(-p_minus, p_plus)`` with the two
endpoint limits either taken from analytic catalog data or estimated along
geometric sequences approaching the domain endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .density import (
    FULL_LINE,
    NEGATIVE_HALF_LINE,
    POSITIVE_HALF_LINE,
    DensityModel,
    SupportSet,
    eval_dlogf,
)
from .errors import NonFiniteLogDensity, NotMonotone, UnsupportedSupport

# ---------------------------------------------------------------------------
# parameter kinds
# ---------------------------------------------------------------------------


class ParameterKind:
    """Marker base class; see Location, Scale and Group."""

    label = "?"

    def __repr__(self) -> str:
        return self.label


class Location(ParameterKind):
    label = "location"


class Scale(ParameterKind):
    label = "scale"


@dataclass(frozen=True, eq=False)
class Group(ParameterKind):
    """Transformation-family kind carrying the factor functions u1, u2.

    ``u1`` must be nonzero on the support except possibly at isolated
    points (interior zeros collapse the equivalence class to a singleton).
    """

    u1: Callable[[float], float]
    u2: Callable[[float], float]
    label = "group"


LOCATION = Location()
SCALE = Scale()


@dataclass(frozen=True, eq=False)
class GroupTransform:
    """A one-parameter transformation family H_theta acting on the data.

    ``h(theta, x)`` maps an observation into the base support and ``dh_dx``
    is its x-derivative (needed to assemble the family's density).  ``u1``
    and ``u2`` are the factor functions of the score decomposition
    ``u2 + u1 f'/f``; the common theta factor T is dropped and assumed to
    keep a constant nonzero sign on ``theta_window``.
    """

    u1: Callable[[float], float]
    u2: Callable[[float], float]
    h: Callable[[float, float], float]
    dh_dx: Callable[[float, float], float]
    theta_window: tuple[float, float] = (-16.0, 16.0)

    def kind(self) -> "Group":
        return Group(self.u1, self.u2)


# ---------------------------------------------------------------------------
# pointwise scores
# ---------------------------------------------------------------------------


def location_score(model: DensityModel, x: float) -> float:
    """Location score ``-f'(x)/f(x)`` (full-line supports only)."""
    if model.support.kind != FULL_LINE:
        raise UnsupportedSupport(
            f"location parameters need full-line support, got {model.support}"
        )
    return -eval_dlogf(model, x)


def scale_score(model: DensityModel, x: float) -> float:
    """Scale score ``1 + x f'(x)/f(x)``."""
    if model.support.kind not in (FULL_LINE, POSITIVE_HALF_LINE, NEGATIVE_HALF_LINE):
        raise UnsupportedSupport(
            f"scale parameters need R or a half-line, got {model.support}"
        )
    if x == 0.0:
        # interior only for full-line supports; the formula value there is
        # 1 + 0 * dlogf(0) = 1 whenever log f is finite at 0
        lp = model.log_pdf(0.0)
        if not math.isfinite(lp):
            raise NonFiniteLogDensity("log-density not finite at x=0")
        return 1.0
    return 1.0 + x * eval_dlogf(model, x)


def group_score(model: DensityModel, u1: Callable[[float], float],
                u2: Callable[[float], float], x: float) -> float:
    """Group-family score ``u2(x) + u1(x) f'(x)/f(x)``."""
    return float(u2(x)) + float(u1(x)) * eval_dlogf(model, x)


# ---------------------------------------------------------------------------
# score-as-function wrappers
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ScoreFunction:
    """A score together with the (sub)domain it is analyzed on."""

    evaluate: Callable[[float], float]
    domain: SupportSet
    kind: ParameterKind


def location_score_fn(model: DensityModel) -> ScoreFunction:
    if model.support.kind != FULL_LINE:
        raise UnsupportedSupport(
            f"location parameters need full-line support, got {model.support}"
        )
    return ScoreFunction(lambda x: location_score(model, x), model.support, LOCATION)


def scale_score_fn(model: DensityModel, halfline: Optional[str] = None) -> ScoreFunction:
    """Scale score on the model's support or restricted to one half-line.

    ``halfline`` is ``None`` (natural support), ``"pos"`` or ``"neg"``; the
    restrictions are only meaningful for full-line supports.
    """
    if halfline is None:
        domain = model.support
        if domain.kind not in (FULL_LINE, POSITIVE_HALF_LINE, NEGATIVE_HALF_LINE):
            raise UnsupportedSupport(f"scale needs R or a half-line, got {domain}")
    elif halfline == "pos":
        domain = SupportSet.positive_half_line()
    elif halfline == "neg":
        domain = SupportSet.negative_half_line()
    else:
        raise ValueError("halfline must be None, 'pos' or 'neg'")
    return ScoreFunction(lambda x: scale_score(model, x), domain, SCALE)


def group_score_fn(model: DensityModel, u1, u2) -> ScoreFunction:
    return ScoreFunction(lambda x: group_score(model, u1, u2, x),
                         model.support, Group(u1, u2))


# ---------------------------------------------------------------------------
# image analysis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundsProvenance:
    method: str  # "analytic" | "numeric"
    grid_size: int = 0
    note: str = ""


@dataclass(frozen=True, eq=False)
class ScoreProfile:
    """Monotonicity, zero crossing and image bounds of a score function.

    A profile is only ever produced for strictly monotone scores;
    ``monotone_increasing`` records the direction.  When the score crosses
    zero its image is the open interval ``(-p_minus, p_plus)`` with both
    bounds positive (possibly infinite).
    """

    kind: ParameterKind
    domain: SupportSet
    evaluate: Callable[[float], float]
    monotone_increasing: bool
    crosses_zero: bool
    p_minus: float
    p_plus: float
    bounds_provenance: BoundsProvenance


@dataclass(frozen=True)
class ProbeConfig:
    """Probe-grid configuration for image analysis."""

    points: int = 201            # central grid size (>= 64 interior points)
    central_radius: float = 20.0  # |x| cap of the central grid on infinite ends
    inner_start: float = 1e-3     # first probe distance from a half-line origin
    tail_ratio: float = 2.0       # geometric ratio of the endpoint sequences
    tail_steps: int = 80
    cauchy_tol: float = 1e-6      # convergence threshold for finite limits
    infinite_threshold: float = 1e8

    def __post_init__(self) -> None:
        if self.points < 64:
            raise ValueError("probe grid needs at least 64 interior points")


DEFAULT_PROBE = ProbeConfig()


def _central_grid(domain: SupportSet, cfg: ProbeConfig) -> np.ndarray:
    lo, hi = domain.lower, domain.upper
    r = cfg.central_radius
    kind = domain.kind
    if kind == FULL_LINE:
        return np.linspace(-r, r, cfg.points)
    if kind == POSITIVE_HALF_LINE:
        return np.geomspace(cfg.inner_start, r, cfg.points)
    if kind == NEGATIVE_HALF_LINE:
        return -np.geomspace(cfg.inner_start, r, cfg.points)[::-1]
    pad = (hi - lo) * 1e-6
    return np.linspace(lo + pad, hi - pad, cfg.points)


def _tail_points(domain: SupportSet, side: str, start: float, cfg: ProbeConfig):
    """Geometric sequence from ``start`` toward the given domain endpoint."""
    ratio = cfg.tail_ratio
    end = domain.lower if side == "lower" else domain.upper
    x = start
    for _ in range(cfg.tail_steps):
        if math.isinf(end):
            # starting points share the endpoint's sign (central grids end at
            # +-central_radius or at +-inner_start on the matching side)
            x = x * ratio
        else:
            x = end + (x - end) / ratio
        yield x


def _aitken(v0: float, v1: float, v2: float) -> float:
    """Aitken delta-squared acceleration of a geometrically converging tail."""
    d1, d2 = v1 - v0, v2 - v1
    denom = d2 - d1
    if denom == 0.0 or not math.isfinite(denom):
        return v2
    accel = v2 - d2 * d2 / denom
    # reject wild extrapolations (non-geometric tails): stay near the last value
    if not math.isfinite(accel) or abs(accel - v2) > 8.0 * abs(d2):
        return v2
    return accel


def _estimate_limit(evaluate, domain: SupportSet, side: str, start: float,
                    v_start: float, expected: float,
                    cfg: ProbeConfig) -> tuple[float, str]:
    """Endpoint limit of a monotone score: (value, 'finite'|'infinite').

    Walks a geometric sequence toward the endpoint; a limit is declared
    infinite once |value| exceeds the configured threshold (or overflows),
    finite once successive values agree within the Cauchy tolerance.  Finite
    limits are sharpened by Aitken extrapolation of the last three values
    (the tails of all smooth scores converge geometrically along geometric
    probe sequences).  ``expected`` is the sign the increments must keep
    (ties allowed); a reversal means the score is not monotone out to the
    endpoint.
    """
    values = [v_start]
    for x in _tail_points(domain, side, start, cfg):
        try:
            v = evaluate(float(x))
        except (OverflowError, NonFiniteLogDensity):
            return math.copysign(math.inf, expected), "infinite"
        if math.isnan(v):
            return math.copysign(math.inf, expected), "infinite"
        if math.isinf(v) or abs(v) >= cfg.infinite_threshold:
            return math.copysign(math.inf, v), "infinite"
        dv = v - values[-1]
        if dv * expected < -1e-9 * max(1.0, abs(v)):
            raise NotMonotone(
                f"score reverses direction approaching the {side} endpoint (x={x:g})"
            )
        values.append(v)
        # gather three tail values so the acceleration step has material
        if abs(dv) < cfg.cauchy_tol and len(values) >= 3:
            return _aitken(values[-3], values[-2], values[-1]), "finite"
    # no convergence within budget: the values kept drifting, treat as infinite
    return math.copysign(math.inf, expected), "infinite"


def analyze_image(score: ScoreFunction, probe: ProbeConfig = DEFAULT_PROBE,
                  analytic_bounds: Optional[tuple[float, float]] = None) -> ScoreProfile:
    """Build a :class:`ScoreProfile` for a score over its domain.

    Strict monotonicity is required across the central probe grid (slack 0);
    violations raise :class:`NotMonotone`, which signals that the family is
    outside the scope of the characterization theory for this kind.  Image
    bounds come from ``analytic_bounds`` when given, otherwise from endpoint
    limit estimation.
    """
    xs = _central_grid(score.domain, probe)
    vs = np.empty(xs.size)
    for i, x in enumerate(xs):
        v = score.evaluate(float(x))
        if not math.isfinite(v):
            raise NonFiniteLogDensity(f"score is not finite at probe x={x:g}")
        vs[i] = v
    diffs = np.diff(vs)
    if (diffs > 0).all():
        increasing = True
    elif (diffs < 0).all():
        increasing = False
    else:
        raise NotMonotone(
            "score is not strictly monotone on the probe grid "
            f"(domain {score.domain})"
        )

    # walking toward the lower endpoint, an increasing score must keep
    # decreasing; toward the upper endpoint it must keep increasing
    lo_limit, lo_class = _estimate_limit(score.evaluate, score.domain, "lower",
                                         float(xs[0]), float(vs[0]),
                                         -1.0 if increasing else 1.0, probe)
    hi_limit, hi_class = _estimate_limit(score.evaluate, score.domain, "upper",
                                         float(xs[-1]), float(vs[-1]),
                                         1.0 if increasing else -1.0, probe)
    inf_limit, sup_limit = (lo_limit, hi_limit) if increasing else (hi_limit, lo_limit)
    crosses = inf_limit < 0.0 < sup_limit

    if analytic_bounds is not None:
        p_minus, p_plus = float(analytic_bounds[0]), float(analytic_bounds[1])
        provenance = BoundsProvenance("analytic")
    else:
        p_minus, p_plus = -inf_limit, sup_limit
        note = f"inf {lo_class if increasing else hi_class}, " \
               f"sup {hi_class if increasing else lo_class}"
        provenance = BoundsProvenance("numeric", grid_size=probe.points, note=note)

    return ScoreProfile(
        kind=score.kind,
        domain=score.domain,
        evaluate=score.evaluate,
        monotone_increasing=increasing,
        crosses_zero=crosses,
        p_minus=p_minus,
        p_plus=p_plus,
        bounds_provenance=provenance,
    )


def split_halflines(model: DensityModel, probe: ProbeConfig = DEFAULT_PROBE,
                    analytic_bounds=None) -> tuple[ScoreProfile, ScoreProfile]:
    """Scale-score profiles on the two open half-lines of a full-line model.

    Returns ``(negative half-line profile, positive half-line profile)``.
    ``analytic_bounds`` may be a single ``(p_minus, p_plus)`` pair applied to
    both sides or a pair of pairs.
    """
    if model.support.kind != FULL_LINE:
        raise UnsupportedSupport("split_halflines needs a full-line support")
    if analytic_bounds is None:
        ab_neg = ab_pos = None
    elif isinstance(analytic_bounds[0], tuple):
        ab_neg, ab_pos = analytic_bounds
    else:
        ab_neg = ab_pos = analytic_bounds
    neg = analyze_image(scale_score_fn(model, "neg"), probe, ab_neg)
    pos = analyze_image(scale_score_fn(model, "pos"), probe, ab_pos)
    return neg, pos


def bracketed_root(profile: ScoreProfile, probe: ProbeConfig = DEFAULT_PROBE) -> float:
    """Zero crossing of a monotone score, located by bracketed root-finding."""
    if not profile.crosses_zero:
        raise NotMonotone("score does not cross zero; no root to bracket")
    xs = _central_grid(profile.domain, probe)
    vs = np.array([profile.evaluate(float(x)) for x in xs])
    sign = np.sign(vs)
    flips = np.where(sign[:-1] * sign[1:] <= 0)[0]
    if flips.size == 0:
        raise NotMonotone("no sign change on the probe grid")
    i = int(flips[0])
    if vs[i] == 0.0:
        return float(xs[i])
    return float(brentq(profile.evaluate, float(xs[i]), float(xs[i + 1]),
                        xtol=1e-13, rtol=8.9e-16))

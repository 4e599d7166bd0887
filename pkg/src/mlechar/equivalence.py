"""Equivalence-class transformations and class-membership tests.

Two densities whose scores (of a given parameter kind) are positive multiples
of each other share every MLE of that parameter.  The constructive direction
is the *tilt* with exponent ``d > 0``:

- location:  ``log g = d log f + log c``,
- scale:     ``log g = (d-1) log|x| + d log f + log c``  (half-line supports),
- group:     ``log g = (d-1) * int u2/u1 + d log f + log c``.

Scale classes over the full line and group classes whose ``u1`` vanishes at
an interior point are singletons: only ``d = 1`` is admissible.  The reverse
direction, :func:`same_class`, recovers ``d`` from the pointwise score ratio
when that ratio is constant on a probe grid.

Half-line scale families additionally admit a scale-identification filter, a
limit comparison of ``g(lambda x)/g(x)`` against the target at the origin,
which pins ``d = 1`` within a class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .density import (
    FULL_LINE,
    NEGATIVE_HALF_LINE,
    POSITIVE_HALF_LINE,
    CumulativeIntegral,
    DensityModel,
    SupportSet,
    effective_interval,
    eval_dlogf,
    normalize,
)
from .errors import DegenerateScore, SingletonClass, UnsupportedSupport
from .score import (
    Group,
    Location,
    ParameterKind,
    Scale,
    analyze_image,
    bracketed_root,
    group_score,
    group_score_fn,
    location_score,
    scale_score,
)


@dataclass
class TiltSpec:
    """A validated tilt request; ``normalizer`` is filled by :func:`tilt`."""

    d: float
    kind: ParameterKind
    normalizer: Optional[float] = None
    notes: str = ""

    def __post_init__(self) -> None:
        if not (math.isfinite(self.d) and self.d > 0.0):
            raise ValueError(f"tilt exponent must be a positive real, got {self.d}")


def _u1_zero_structure(u1: Callable[[float], float], support: SupportSet) -> str:
    """'interior', 'endpoint' or 'none' depending on where u1 vanishes."""
    lo, hi = support.lower, support.upper
    if support.kind == FULL_LINE:
        xs = np.linspace(-20.0, 20.0, 401)
    elif support.kind == POSITIVE_HALF_LINE:
        xs = np.geomspace(1e-8, 20.0, 401)
    elif support.kind == NEGATIVE_HALF_LINE:
        xs = -np.geomspace(1e-8, 20.0, 401)[::-1]
    else:
        pad = (hi - lo) * 1e-6
        xs = np.linspace(lo + pad, hi - pad, 401)
    vals = np.array([float(u1(float(x))) for x in xs])
    if (np.abs(vals) < 1e-12).any() or (np.sign(vals[:-1]) * np.sign(vals[1:]) < 0).any():
        return "interior"
    # vanishing limits at the ends count as endpoint zeros, not interior ones
    if abs(vals[0]) < 1e-6 or abs(vals[-1]) < 1e-6:
        return "endpoint"
    return "none"


def _tilt_build(model: DensityModel, spec: TiltSpec) -> DensityModel:
    d = spec.d
    kind = spec.kind
    base_log = model.log_pdf
    base_dlog = model.dlog_pdf

    if isinstance(kind, Location):
        if model.support.kind != FULL_LINE:
            raise UnsupportedSupport("location tilts need full-line support")

        def log_pdf(x: float) -> float:
            return d * base_log(x)

        dlog = (lambda x: d * base_dlog(x)) if base_dlog else None

    elif isinstance(kind, Scale):
        if model.support.kind == FULL_LINE:
            if d != 1.0:
                raise SingletonClass(
                    "scale classes over the full line are singletons (d = 1 only)"
                )

            def log_pdf(x: float) -> float:
                return base_log(x)

            dlog = base_dlog
        elif model.support.kind in (POSITIVE_HALF_LINE, NEGATIVE_HALF_LINE):

            def log_pdf(x: float) -> float:
                return (d - 1.0) * math.log(abs(x)) + d * base_log(x)

            dlog = (lambda x: (d - 1.0) / x + d * base_dlog(x)) if base_dlog else None
        else:
            raise UnsupportedSupport("scale tilts need R or a half-line support")

    elif isinstance(kind, Group):
        u1, u2 = kind.u1, kind.u2
        structure = _u1_zero_structure(u1, model.support)
        if structure == "interior":
            if d != 1.0:
                raise SingletonClass(
                    "u1 vanishes at an interior point; the class is a singleton"
                )

            def log_pdf(x: float) -> float:
                return base_log(x)

            dlog = base_dlog
        else:
            if structure == "endpoint":
                spec.notes = "u1 vanishes at a support endpoint; d left free"
            profile = analyze_image(group_score_fn(model, u1, u2))
            anchor = bracketed_root(profile)
            drop = max(80.0, 80.0 / d)
            lo, hi = effective_interval(model, drop=drop)
            lo = min(lo, anchor - 1.0)
            hi = max(hi, anchor + 1.0)
            antider = CumulativeIntegral(lambda y: float(u2(y)) / float(u1(y)),
                                         anchor, lo, hi)

            def log_pdf(x: float) -> float:
                return (d - 1.0) * antider(x) + d * base_log(x)

            dlog = (
                (lambda x: (d - 1.0) * float(u2(x)) / float(u1(x)) + d * base_dlog(x))
                if base_dlog
                else None
            )
    else:
        raise TypeError(f"unknown parameter kind {kind!r}")

    raw = DensityModel(
        name=f"{model.name}~tilt(d={d:g},{kind.label})",
        support=model.support,
        log_pdf=log_pdf,
        dlog_pdf=dlog,
        params={**model.params, "tilt_d": d},
    )
    c, tilted = normalize(raw)
    spec.normalizer = c
    return tilted


def tilt(model: DensityModel, d: float, kind: ParameterKind) -> DensityModel:
    """Equivalence-class member of ``model`` with exponent ``d`` (normalized)."""
    return _tilt_build(model, TiltSpec(d=d, kind=kind))


def tilt_with_spec(model: DensityModel, d: float,
                   kind: ParameterKind) -> tuple[DensityModel, TiltSpec]:
    """Like :func:`tilt` but also returns the filled :class:`TiltSpec`."""
    spec = TiltSpec(d=d, kind=kind)
    return _tilt_build(model, spec), spec


# ---------------------------------------------------------------------------
# class membership
# ---------------------------------------------------------------------------


def _default_grid(f: DensityModel, g: DensityModel, points: int = 41) -> np.ndarray:
    """Probe grid inside the overlap of both models' effective regions.

    Tabulated or forged densities may be finite only on a bounded hull;
    confining the grid keeps both scores evaluable, as the comparison
    requires.
    """
    support = f.support
    lo = max(effective_interval(f, drop=40.0)[0], effective_interval(g, drop=40.0)[0])
    hi = min(effective_interval(f, drop=40.0)[1], effective_interval(g, drop=40.0)[1])
    if not lo < hi:
        raise DegenerateScore("effective supports do not overlap")
    kind = support.kind
    if kind == FULL_LINE:
        return np.linspace(max(lo, -8.0), min(hi, 8.0), points)
    if kind == POSITIVE_HALF_LINE:
        return np.geomspace(max(lo, 0.05), min(hi, 8.0), points)
    if kind == NEGATIVE_HALF_LINE:
        return -np.geomspace(max(-hi, 0.05), min(-lo, 8.0), points)[::-1]
    pad = (hi - lo) * 1e-3
    return np.linspace(lo + pad, hi - pad, points)


def _score_eval(model: DensityModel, kind: ParameterKind, x: float) -> float:
    if isinstance(kind, Location):
        return location_score(model, x)
    if isinstance(kind, Scale):
        return scale_score(model, x)
    if isinstance(kind, Group):
        return group_score(model, kind.u1, kind.u2, x)
    raise TypeError(f"unknown parameter kind {kind!r}")


def same_class(f: DensityModel, g: DensityModel, kind: ParameterKind,
               grid=None, tol: float = 1e-6) -> Optional[float]:
    """Common score multiplier ``d`` if ``f`` and ``g`` share a class, else None.

    Evaluates the ratio ``score_g / score_f`` at grid points where the
    reference score is not numerically zero; the pair belongs to one class
    when the ratio deviates from its median by less than ``tol`` and the
    median is positive.
    """
    if f.support != g.support:
        raise UnsupportedSupport("class comparison requires a common support")
    xs = _default_grid(f, g) if grid is None else np.asarray(grid, dtype=float)
    ratios = []
    any_usable = False
    for x in xs:
        sf = _score_eval(f, kind, float(x))
        if abs(sf) <= tol:
            continue
        any_usable = True
        sg = _score_eval(g, kind, float(x))
        ratios.append(sg / sf)
    if not any_usable:
        raise DegenerateScore("reference score vanishes on the whole grid")
    ratios = np.asarray(ratios)
    d = float(np.median(ratios))
    if d > 0.0 and float(np.max(np.abs(ratios - d))) < tol:
        return d
    return None


# ---------------------------------------------------------------------------
# scale-identification condition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScaleIdentification:
    """Outcome of the origin-limit comparison for half-line scale families."""

    verdict: str  # "match" | "mismatch" | "inconclusive"
    limit_target: float
    limit_candidate: float
    lam: float
    note: str = ""


def _origin_ratio_limit(model: DensityModel, lam: float,
                        ks=(3, 4, 5, 6)) -> tuple[float, bool]:
    """Limit of f(lam*x)/f(x) as x tends to 0 along the half-line.

    Returns (limit, stable); stability requires the probe sequence at
    x = 10^-k to settle (successive agreement within 1e-3 relative).
    """
    sign = 1.0 if model.support.kind == POSITIVE_HALF_LINE else -1.0
    vals = []
    for k in ks:
        x = sign * 10.0 ** (-k)
        num, den = model.log_pdf(lam * x), model.log_pdf(x)
        if not (math.isfinite(num) and math.isfinite(den)):
            return math.nan, False
        vals.append(math.exp(num - den))
    last, prev = vals[-1], vals[-2]
    stable = abs(last - prev) <= 1e-3 * max(1.0, abs(last))
    return last, stable


def scale_identification(target: DensityModel, candidate: DensityModel,
                         lam: float = 2.0) -> ScaleIdentification:
    """Compare origin limits of ``g(lam x)/g(x)`` against the target's.

    Matching limits are what the identification condition demands of an
    admissible class member; within a tilt family only ``d = 1`` passes.
    The pathological limit ``1/lam`` precludes identification and is
    reported as inconclusive, as are unstable probe sequences.
    """
    if target.support.kind not in (POSITIVE_HALF_LINE, NEGATIVE_HALF_LINE):
        raise UnsupportedSupport("scale identification applies to half-line supports")
    if candidate.support != target.support:
        raise UnsupportedSupport("scale identification requires a common support")
    if lam <= 0.0 or lam == 1.0:
        raise ValueError("lam must be positive and different from 1")

    lt, stable_t = _origin_ratio_limit(target, lam)
    lc, stable_c = _origin_ratio_limit(candidate, lam)
    if not (stable_t and stable_c):
        return ScaleIdentification("inconclusive", lt, lc, lam,
                                   note="origin limits did not stabilize")
    if abs(lt - 1.0 / lam) <= 1e-6 * max(1.0, 1.0 / lam):
        return ScaleIdentification("inconclusive", lt, lc, lam,
                                   note="pathological limit 1/lam")
    if abs(lc - lt) <= 1e-3 * max(1.0, abs(lt)):
        return ScaleIdentification("match", lt, lc, lam)
    return ScaleIdentification("mismatch", lt, lc, lam)

"""Covering sample sizes, projectability, and the necessary-sample-size rule.

For a strictly monotone score with image ``(-p_minus, p_plus)``, the zero-sum
tuples of attainable score values determine how large a sample must be before
every coordinate projection covers the whole image ("projectable").  The
minimal covering sample size (MCSS) is

- ``2``                          when the bounds are equal (possibly infinite),
- ``ceil(max/min + 1)``          when both are finite and unequal,
- ``infinity``                   when exactly one bound is infinite.

The minimal necessary sample size (MNSS) for a characterization is then
``max(MCSS, 3)``, combined across the two half-lines for scale parameters on
the full line.  A brute-force enumeration oracle over a discretized image is
provided as an independent check of the covering rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import BudgetExceeded, InvalidBounds, NotCharacterizable
from .score import ParameterKind, ScoreProfile

#: relative fuzz applied before the ceiling so floating noise cannot
#: inflate an exact-integer ratio into the next sample size
CEIL_FUZZ = 1e-9


def _validate_bound(value: float, name: str) -> float:
    v = float(value)
    if math.isnan(v) or v <= 0.0:
        raise InvalidBounds(f"{name} must be > 0 (possibly inf), got {value}")
    return v


def _bounds_equal(a: float, b: float) -> bool:
    if math.isinf(a) and math.isinf(b):
        return True
    if math.isinf(a) or math.isinf(b):
        return False
    return abs(a - b) <= CEIL_FUZZ * max(a, b)


@dataclass(frozen=True)
class McssResult:
    """Minimal covering sample size together with the image bounds."""

    value: Union[int, float]  # int >= 2, or math.inf
    p_minus: float
    p_plus: float

    @property
    def is_finite(self) -> bool:
        return not math.isinf(self.value)

    def __str__(self) -> str:
        return "inf" if math.isinf(self.value) else str(int(self.value))


@dataclass(frozen=True)
class MnssResult:
    """Minimal necessary sample size; finite values are always >= 3."""

    value: Union[int, float]
    per_halfline: Optional[tuple["MnssResult", "MnssResult"]] = None

    @property
    def is_finite(self) -> bool:
        return not math.isinf(self.value)

    def __str__(self) -> str:
        return "inf" if math.isinf(self.value) else str(int(self.value))


@dataclass(frozen=True)
class ZeroSumTuple:
    """A zero-sum tuple of score values (a point of the covering hyperplane)."""

    b: tuple[float, ...]

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.b)
        if len(vals) < 1:
            raise ValueError("zero-sum tuple needs at least one entry")
        if abs(math.fsum(vals)) > 1e-12:
            raise ValueError(f"entries sum to {math.fsum(vals):.3e}, not 0")
        object.__setattr__(self, "b", vals)

    @property
    def n(self) -> int:
        return len(self.b)

    def in_image(self, p_minus: float, p_plus: float) -> bool:
        """Membership of every entry in the open image interval."""
        return all(-p_minus < v < p_plus for v in self.b)


def mcss(p_minus: float, p_plus: float) -> McssResult:
    """Minimal covering sample size for image bounds ``(p_minus, p_plus)``."""
    pm = _validate_bound(p_minus, "p_minus")
    pp = _validate_bound(p_plus, "p_plus")
    if _bounds_equal(pm, pp):
        return McssResult(2, pm, pp)
    if math.isinf(pm) or math.isinf(pp):
        return McssResult(math.inf, pm, pp)
    ratio = max(pm, pp) / min(pm, pp)
    value = ratio + 1.0
    n = int(math.ceil(value - CEIL_FUZZ * value))
    return McssResult(max(n, 2), pm, pp)


def projection_interval(p_minus: float, p_plus: float, n: int) -> tuple[float, float]:
    """Coordinate projection of the zero-sum tuples inside the image cube.

    For sample size ``n`` the projection is the open interval
    ``(-min(p_minus, (n-1) p_plus), min(p_plus, (n-1) p_minus))``.
    """
    pm = _validate_bound(p_minus, "p_minus")
    pp = _validate_bound(p_plus, "p_plus")
    if n < 1:
        raise ValueError("n must be >= 1")
    k = float(n - 1)
    lo = -min(pm, k * pp)
    hi = min(pp, k * pm)
    return lo, hi


def is_projectable(p_minus: float, p_plus: float, n: int) -> bool:
    """Whether every coordinate projection covers the full image at size ``n``.

    Computed three equivalent ways (projection interval equality, the
    covering rule ``n >= mcss``, and the two-sided inequality for finite
    bounds); the answers must agree.
    """
    pm = _validate_bound(p_minus, "p_minus")
    pp = _validate_bound(p_plus, "p_plus")
    slack = 1.0 + 1e-12
    k = float(n - 1)

    lo, hi = projection_interval(pm, pp, n)
    by_interval = (math.isinf(pm) and math.isinf(-lo)) or (-lo >= pm / slack)
    by_interval = by_interval and ((math.isinf(pp) and math.isinf(hi)) or (hi >= pp / slack))

    by_mcss = n >= mcss(pm, pp).value

    if math.isfinite(pm) and math.isfinite(pp):
        by_rule = max(pm, pp) <= k * min(pm, pp) * slack
    else:
        by_rule = by_mcss

    if not (by_interval == by_mcss == by_rule):
        raise AssertionError(
            f"projectability criteria disagree for ({pm}, {pp}, n={n}): "
            f"interval={by_interval}, mcss={by_mcss}, rule={by_rule}"
        )
    return by_mcss


def brute_force_projectable(p_minus: float, p_plus: float, n: int,
                            grid: int = 41) -> bool:
    """Enumeration oracle for projectability over a discretized image.

    The image ``(-p_minus, p_plus)`` is discretized into ``grid`` lattice
    points.  Candidate coordinates are the strictly interior lattice values;
    companion coordinates may sit anywhere on the closed lattice hull
    (approaching the open endpoints arbitrarily closely).  The attainable
    ``(n-1)``-fold sums are enumerated by repeated discrete convolution, and
    the oracle reports whether ``-b1`` is attainable for every candidate
    ``b1``.  Intended for small budgets only.
    """
    pm = _validate_bound(p_minus, "p_minus")
    pp = _validate_bound(p_plus, "p_plus")
    if not (math.isfinite(pm) and math.isfinite(pp)):
        raise BudgetExceeded("brute force handles finite bounds only")
    if n < 2 or n > 8:
        raise BudgetExceeded(f"n={n} outside the enumeration budget (2..8)")
    if grid < 5 or grid > 101:
        raise BudgetExceeded(f"grid={grid} outside the allowed range (5..101)")

    lattice = np.linspace(-pm, pp, grid)
    h = (pp + pm) / (grid - 1)
    probes = lattice[1:-1]

    # attainable sums of (n-1) companion values, over the sum lattice
    # starting at (n-1) * (-p_minus) with step h
    indicator = np.ones(grid)
    reach = indicator.copy()
    for _ in range(n - 2):
        reach = np.convolve(reach, indicator)
    attainable = reach > 0.0
    base = (n - 1) * (-pm)

    for b1 in probes:
        target = -float(b1)
        j = int(round((target - base) / h))
        if j < 0 or j >= attainable.size or not attainable[j]:
            return False
        if abs(base + j * h - target) > 0.5000001 * h:
            return False
    return True


def mnss(profiles: Union[ScoreProfile, Sequence[ScoreProfile]],
         kind: ParameterKind) -> MnssResult:
    """Minimal necessary sample size from one or two score profiles.

    A single profile yields ``max(mcss, 3)``.  Scale parameters on the full
    line supply the two half-line profiles; the result is the maximum of the
    per-half-line values.  Profiles that do not cross zero fall outside the
    characterization results and raise :class:`NotCharacterizable`.
    """
    if isinstance(profiles, ScoreProfile):
        profile_list = [profiles]
    else:
        profile_list = list(profiles)
    if len(profile_list) not in (1, 2):
        raise ValueError("mnss expects one profile or a half-line pair")

    results = []
    for prof in profile_list:
        if not prof.crosses_zero:
            raise NotCharacterizable(
                f"{kind!r} score on {prof.domain} does not cross zero"
            )
        cov = mcss(prof.p_minus, prof.p_plus)
        value = max(cov.value, 3) if cov.is_finite else math.inf
        results.append(MnssResult(value))

    if len(results) == 1:
        return results[0]
    combined = max(results[0].value, results[1].value)
    return MnssResult(combined, per_halfline=(results[0], results[1]))

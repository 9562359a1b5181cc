"""Piecewise-linear fuzzy numbers stored as finite level-to-interval maps.

A membership function here is a normal, unimodal fuzzy number represented by
its cuts at a finite ascending grid of membership levels that always contains
0 and 1.  The cut at level 0 is the closed support hull, the cut at level 1
the core.  Between two stored levels the cut endpoints interpolate linearly,
which makes every stored function piecewise linear and lets addition, scaling
and weighted averaging work level-wise on intervals with no approximation.

Vertical jumps are representable (two consecutive levels sharing an endpoint);
evaluation at the jump abscissa resolves to the upper membership value, i.e.
the side closer to the core.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left
from dataclasses import dataclass

from .errors import LevelSetError, NestingError, ValidationError, WeightError

# Tolerances are part of the contract: 1e-9 for level equality and nestedness
# slack, 1e-12 for structural redundancy during compression.
LEVEL_TOL = 1e-9
COMPRESS_TOL = 1e-12


@dataclass(frozen=True, order=True)
class Interval:
    """Closed interval [lo, hi]; construction rejects inverted bounds."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValidationError(f"interval bounds must be finite, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise NestingError(f"inverted interval [{self.lo}, {self.hi}]")

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return (self.lo + self.hi) / 2.0

    def shift_sum(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def scaled(self, factor: float) -> "Interval":
        return Interval(self.lo * factor, self.hi * factor)


def validate_levels(levels: tuple[float, ...]) -> None:
    """Check an ascending membership-level grid containing 0 and 1."""
    if len(levels) < 2:
        raise LevelSetError("level grid needs at least the levels 0 and 1")
    if levels[0] != 0.0 or levels[-1] != 1.0:
        raise LevelSetError(f"level grid must run from 0 to 1, got {levels[0]}..{levels[-1]}")
    for a, b in zip(levels, levels[1:]):
        if b - a <= LEVEL_TOL:
            raise LevelSetError(f"levels must ascend by more than {LEVEL_TOL}, got {a} then {b}")


def merge_levels(*grids: tuple[float, ...]) -> tuple[float, ...]:
    """Union of level grids, collapsing values closer than the level tolerance.

    Groups within tolerance collapse to their smallest member, except that a
    group containing an exact 0.0 or 1.0 keeps that endpoint so merged grids
    stay valid.
    """
    pool = sorted(set().union(*grids))
    merged: list[float] = []
    group: list[float] = []
    for value in pool:
        if group and value - group[0] > LEVEL_TOL:
            merged.append(_group_representative(group))
            group = []
        group.append(value)
    if group:
        merged.append(_group_representative(group))
    return tuple(merged)


def _group_representative(group: list[float]) -> float:
    if 0.0 in group:
        return 0.0
    if 1.0 in group:
        return 1.0
    return group[0]


@dataclass(frozen=True)
class PiecewiseMF:
    """Fuzzy number as aligned tuples of levels and cuts.

    ``cuts[i]`` is the cut at ``levels[i]``.  Cuts must be nested: higher
    levels give sub-intervals of lower ones (with 1e-9 slack for data that
    travelled through floats).
    """

    levels: tuple[float, ...]
    cuts: tuple[Interval, ...]

    def __post_init__(self) -> None:
        validate_levels(self.levels)
        if len(self.cuts) != len(self.levels):
            raise LevelSetError(
                f"{len(self.levels)} levels but {len(self.cuts)} cuts"
            )
        for i in range(len(self.cuts) - 1):
            outer, inner = self.cuts[i], self.cuts[i + 1]
            if inner.lo < outer.lo - LEVEL_TOL or inner.hi > outer.hi + LEVEL_TOL:
                raise NestingError(
                    f"cut at level {self.levels[i + 1]} escapes the cut at {self.levels[i]}"
                )

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_cuts(cls, cuts: dict[float, tuple[float, float]]) -> "PiecewiseMF":
        levels = tuple(sorted(cuts))
        return cls(levels, tuple(Interval(*cuts[a]) for a in levels))

    @classmethod
    def triangular(cls, left: float, peak: float, right: float) -> "PiecewiseMF":
        return cls((0.0, 1.0), (Interval(left, right), Interval(peak, peak)))

    @classmethod
    def trapezoidal(cls, a: float, b: float, c: float, d: float) -> "PiecewiseMF":
        return cls((0.0, 1.0), (Interval(a, d), Interval(b, c)))

    @classmethod
    def rectangular(cls, lo: float, hi: float) -> "PiecewiseMF":
        return cls((0.0, 1.0), (Interval(lo, hi), Interval(lo, hi)))

    @classmethod
    def point(cls, value: float) -> "PiecewiseMF":
        return cls.rectangular(value, value)

    # -- basic queries -----------------------------------------------------

    @property
    def support(self) -> Interval:
        return self.cuts[0]

    @property
    def core(self) -> Interval:
        return self.cuts[-1]

    def cut_map(self) -> dict[float, Interval]:
        return dict(zip(self.levels, self.cuts))

    def stored_index(self, level: float) -> int | None:
        """Index of a stored level equal to ``level`` within tolerance."""
        i = bisect_left(self.levels, level - LEVEL_TOL)
        if i < len(self.levels) and abs(self.levels[i] - level) <= LEVEL_TOL:
            return i
        return None

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "levels": list(self.levels),
            "cuts": {repr(a): [c.lo, c.hi] for a, c in zip(self.levels, self.cuts)},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PiecewiseMF":
        try:
            levels = tuple(float(a) for a in data["levels"])
            raw = {float(k): v for k, v in data["cuts"].items()}
        except (AttributeError, KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed membership function payload: {exc}") from exc
        if sorted(raw) != sorted(levels):
            raise LevelSetError("cut keys do not match the level grid")
        return cls(levels, tuple(Interval(*raw[a]) for a in levels))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def alpha_cut(mf: PiecewiseMF, level: float) -> Interval:
    """Cut at any level in [0, 1]: stored exactly, otherwise interpolated.

    Between consecutive stored levels the endpoints move linearly, so the
    interpolated cut of a sum equals the sum of interpolated cuts.
    """
    if not 0.0 <= level <= 1.0:
        raise ValidationError(f"membership level {level} outside [0, 1]")
    idx = mf.stored_index(level)
    if idx is not None:
        return mf.cuts[idx]
    hi_idx = bisect_left(mf.levels, level)
    lo_idx = hi_idx - 1
    below, above = mf.levels[lo_idx], mf.levels[hi_idx]
    t = (level - below) / (above - below)
    lo_cut, hi_cut = mf.cuts[lo_idx], mf.cuts[hi_idx]
    return Interval(
        lo_cut.lo + t * (hi_cut.lo - lo_cut.lo),
        lo_cut.hi + t * (hi_cut.hi - lo_cut.hi),
    )


def evaluate(mf: PiecewiseMF, x: float) -> float:
    """Membership degree at ``x``.

    Exactly 0 outside the closed support, exactly 1 on the core.  On a flank
    the degree interpolates between the two stored levels whose cuts bracket
    ``x``; at a vertical jump the upper value wins because membership of the
    stored cuts, not a slope formula, decides the bracket.
    """
    if x not in mf.cuts[0]:
        return 0.0
    if x in mf.cuts[-1]:
        return 1.0
    k = _bracket_index(mf, x)
    below, above = mf.levels[k], mf.levels[k + 1]
    outer, inner = mf.cuts[k], mf.cuts[k + 1]
    if x < inner.lo:
        t = (x - outer.lo) / (inner.lo - outer.lo)
    else:
        t = (outer.hi - x) / (outer.hi - inner.hi)
    t = min(1.0, max(0.0, t))
    return below + t * (above - below)


def _bracket_index(mf: PiecewiseMF, x: float) -> int:
    """Largest index whose cut still contains ``x`` (monotone by nesting)."""
    lo, hi = 0, len(mf.cuts) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if x in mf.cuts[mid]:
            lo = mid
        else:
            hi = mid
    return lo


def level_bracket(
    mf: PiecewiseMF, levels: tuple[float, ...], x: float
) -> tuple[float, float]:
    """Tightest pair of grid levels bracketing the membership of ``x``.

    Returns ``(0, 0)`` outside the support, ``(1, 1)`` on the core, and
    otherwise ``(max level whose cut contains x, min level whose cut does
    not)``.  The grid must refine the function's own stored levels.
    """
    validate_levels(levels)
    for own in mf.levels:
        if not any(abs(own - a) <= LEVEL_TOL for a in levels):
            raise LevelSetError(f"grid is missing the stored level {own}")
    if x not in mf.cuts[0]:
        return (0.0, 0.0)
    if x in mf.cuts[-1]:
        return (1.0, 1.0)
    below = 0.0
    for a in levels:
        if x in alpha_cut(mf, a):
            below = a
        else:
            return (below, a)
    raise AssertionError("unreachable: x outside core implies some cut excludes it")


def add(a: PiecewiseMF, b: PiecewiseMF) -> PiecewiseMF:
    """Extension-principle sum, computed level-wise on the merged grid."""
    levels = merge_levels(a.levels, b.levels)
    cuts = tuple(alpha_cut(a, lv).shift_sum(alpha_cut(b, lv)) for lv in levels)
    return PiecewiseMF(levels, cuts)


def scale(factor: float, mf: PiecewiseMF) -> PiecewiseMF:
    """Extension-principle product with a positive crisp factor."""
    if not factor > 0.0:
        raise ValidationError(f"scale factor must be positive, got {factor}")
    return PiecewiseMF(mf.levels, tuple(c.scaled(factor) for c in mf.cuts))


def weighted_average(
    mfs: list[PiecewiseMF] | tuple[PiecewiseMF, ...],
    weights: list[float] | tuple[float, ...],
) -> PiecewiseMF:
    """Convex combination of fuzzy numbers living on [0, 1].

    Weights must lie in [0, 1] and sum to 1 within 1e-9.  Endpoint sums use
    ``math.fsum`` and clamp into [0, 1]: the true result is contained there,
    so only one-ulp float overshoot gets removed.
    """
    if not mfs:
        raise ValidationError("weighted average of an empty family")
    if len(mfs) != len(weights):
        raise WeightError(f"{len(mfs)} operands but {len(weights)} weights")
    for i, mf in enumerate(mfs):
        if mf.support.lo < 0.0 or mf.support.hi > 1.0:
            raise ValidationError(
                f"operand {i} has support [{mf.support.lo}, {mf.support.hi}] outside [0, 1]"
            )
    for i, w in enumerate(weights):
        if not 0.0 <= w <= 1.0:
            raise WeightError(f"weight {i} is {w}, outside [0, 1]")
    if abs(math.fsum(weights) - 1.0) > 1e-9:
        raise WeightError(f"weights sum to {math.fsum(weights)}, not 1")
    levels = merge_levels(*(mf.levels for mf in mfs))
    cuts = []
    for lv in levels:
        level_cuts = [alpha_cut(mf, lv) for mf in mfs]
        lo = math.fsum(w * c.lo for w, c in zip(weights, level_cuts))
        hi = math.fsum(w * c.hi for w, c in zip(weights, level_cuts))
        cuts.append(Interval(min(1.0, max(0.0, lo)), min(1.0, max(0.0, hi))))
    return PiecewiseMF(levels, tuple(cuts))


def compress(mf: PiecewiseMF, tol: float = COMPRESS_TOL) -> PiecewiseMF:
    """Drop interior levels whose cut is a linear interpolant of its neighbors.

    Keeps 0 and 1 always; the function it describes is unchanged up to ``tol``.
    """
    keep = [0]
    for i in range(1, len(mf.levels) - 1):
        prev = keep[-1]
        nxt = i + 1
        t = (mf.levels[i] - mf.levels[prev]) / (mf.levels[nxt] - mf.levels[prev])
        lo_lin = mf.cuts[prev].lo + t * (mf.cuts[nxt].lo - mf.cuts[prev].lo)
        hi_lin = mf.cuts[prev].hi + t * (mf.cuts[nxt].hi - mf.cuts[prev].hi)
        if abs(lo_lin - mf.cuts[i].lo) > tol or abs(hi_lin - mf.cuts[i].hi) > tol:
            keep.append(i)
    keep.append(len(mf.levels) - 1)
    return PiecewiseMF(
        tuple(mf.levels[i] for i in keep), tuple(mf.cuts[i] for i in keep)
    )


def structurally_equal(a: PiecewiseMF, b: PiecewiseMF, tol: float = COMPRESS_TOL) -> bool:
    """True when both describe the same function up to ``tol``.

    Compared on the merged level grid so differently-stored but equivalent
    representations (e.g. one compressed, one not) count as equal.
    """
    levels = merge_levels(a.levels, b.levels)
    for lv in levels:
        ca, cb = alpha_cut(a, lv), alpha_cut(b, lv)
        if abs(ca.lo - cb.lo) > tol or abs(ca.hi - cb.hi) > tol:
            return False
    return True


def knots(mf: PiecewiseMF) -> list[tuple[float, float]]:
    """Polyline of the membership curve as (x, degree) pairs, x ascending.

    Vertical jumps appear as two knots sharing an abscissa; the core plateau
    contributes its two corners.  Suitable for plotting with straight segments
    and for grid oracles.
    """
    pts: list[tuple[float, float]] = []
    for lv, cut in zip(mf.levels, mf.cuts):
        _append_knot(pts, (cut.lo, lv))
    for lv, cut in zip(reversed(mf.levels), reversed(mf.cuts)):
        _append_knot(pts, (cut.hi, lv))
    return pts


def _append_knot(pts: list[tuple[float, float]], pt: tuple[float, float]) -> None:
    if not pts or pts[-1] != pt:
        pts.append(pt)

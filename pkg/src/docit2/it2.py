"""Interval type-2 fuzzy numbers: footprint pairs, arithmetic, total orders.

An interval type-2 membership function is stored as a dominated pair of
piecewise-linear fuzzy numbers: at every point the lower function stays
below the upper one, so the two trace out an uncertainty band.  Arithmetic
acts component-wise, which preserves the band by interval monotonicity.

Ranking uses a three-key lexicographic comparison of fuzzy numbers (mean of
cut midpoints, negated mean of cut widths, then a descending level-by-level
endpoint comparison).  The third key makes the comparison antisymmetric on
the representable class, and the first key alone already refines cutwise
dominance, so extending it lexicographically over the (lower, upper) or
(upper, lower) pair yields total orders that respect component dominance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from .errors import NestingError, ValidationError
from .fuzzy import (
    LEVEL_TOL,
    Interval,
    PiecewiseMF,
    alpha_cut,
    add,
    merge_levels,
    scale,
    weighted_average,
)

Comparison = Literal[-1, 0, 1]

# Levels this close to an existing grid value are not worth storing; mirrors
# the level grid's own minimum spacing with a safety factor.
_REFINE_TOL = 2 * LEVEL_TOL


@dataclass(frozen=True)
class IT2MF:
    """Dominated pair of fuzzy numbers (the uncertainty footprint)."""

    lower: PiecewiseMF
    upper: PiecewiseMF

    def __post_init__(self) -> None:
        levels = merge_levels(self.lower.levels, self.upper.levels)
        for lv in levels:
            inner, outer = alpha_cut(self.lower, lv), alpha_cut(self.upper, lv)
            if inner.lo < outer.lo - LEVEL_TOL or inner.hi > outer.hi + LEVEL_TOL:
                raise NestingError(
                    f"lower cut {[inner.lo, inner.hi]} escapes upper cut "
                    f"{[outer.lo, outer.hi]} at level {lv}"
                )

    @classmethod
    def from_t1(cls, mf: PiecewiseMF) -> "IT2MF":
        return cls(lower=mf, upper=mf)

    @property
    def is_t1(self) -> bool:
        return self.lower == self.upper

    def to_dict(self) -> dict:
        return {"lower": self.lower.to_dict(), "upper": self.upper.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "IT2MF":
        try:
            lower, upper = data["lower"], data["upper"]
        except (KeyError, TypeError) as exc:
            raise ValidationError(
                f"malformed footprint payload: {exc!r}"
            ) from exc
        return cls(
            lower=PiecewiseMF.from_dict(lower),
            upper=PiecewiseMF.from_dict(upper),
        )


def it2_alpha_cut(a: IT2MF, level: float) -> tuple[Interval, Interval]:
    """Cut pair (lower-function cut, upper-function cut) at one level."""
    return alpha_cut(a.lower, level), alpha_cut(a.upper, level)


def it2_add(a: IT2MF, b: IT2MF) -> IT2MF:
    return IT2MF(lower=add(a.lower, b.lower), upper=add(a.upper, b.upper))


def it2_scale(factor: float, a: IT2MF) -> IT2MF:
    return IT2MF(lower=scale(factor, a.lower), upper=scale(factor, a.upper))


def it2_weighted_average(
    operands: Sequence[IT2MF], weights: Sequence[float]
) -> IT2MF:
    """Component-wise convex combination; operands must live on [0, 1]."""
    if not operands:
        raise ValidationError("weighted average of an empty family")
    return IT2MF(
        lower=weighted_average([a.lower for a in operands], list(weights)),
        upper=weighted_average([a.upper for a in operands], list(weights)),
    )


# ---------------------------------------------------------------------------
# envelope of a family of T1 functions
# ---------------------------------------------------------------------------


def envelope_it2(members: Sequence[PiecewiseMF]) -> IT2MF:
    """Pointwise min/max band of a family of fuzzy numbers, exactly.

    The lower band's cut at each level is the intersection of the members'
    cuts, the upper band's their hull.  Both are piecewise linear in the
    level, with extra breakpoints wherever two members' cut endpoints cross
    strictly between stored levels; the level grid is refined with those
    crossings so the stored result is exact, not a chord approximation.

    All members must share at least one fully-satisfying point, otherwise
    the upper band would have a gap and stop being a fuzzy number.
    """
    if not members:
        raise ValidationError("envelope of an empty family")
    core_lo = max(m.core.lo for m in members)
    core_hi = min(m.core.hi for m in members)
    if core_lo > core_hi:
        raise ValidationError(
            "family cores do not overlap; the upper envelope would be bimodal"
        )
    if len(members) == 1:
        return IT2MF.from_t1(members[0])

    base = merge_levels(*(m.levels for m in members))
    levels = _refine_with_crossings(members, base)
    lower_cuts = []
    upper_cuts = []
    for lv in levels:
        cuts = [alpha_cut(m, lv) for m in members]
        lower_cuts.append(Interval(max(c.lo for c in cuts), min(c.hi for c in cuts)))
        upper_cuts.append(Interval(min(c.lo for c in cuts), max(c.hi for c in cuts)))
    return IT2MF(
        lower=PiecewiseMF(levels, tuple(lower_cuts)),
        upper=PiecewiseMF(levels, tuple(upper_cuts)),
    )


def _refine_with_crossings(
    members: Sequence[PiecewiseMF], base: tuple[float, ...]
) -> tuple[float, ...]:
    """Add levels where two members' cut endpoints cross between grid lines."""
    extra: list[float] = []
    for l0, l1 in zip(base, base[1:]):
        span = l1 - l0
        starts_lo, slopes_lo = [], []
        starts_hi, slopes_hi = [], []
        for m in members:
            c0, c1 = alpha_cut(m, l0), alpha_cut(m, l1)
            starts_lo.append(c0.lo)
            slopes_lo.append((c1.lo - c0.lo) / span)
            starts_hi.append(c0.hi)
            slopes_hi.append((c1.hi - c0.hi) / span)
        for starts, slopes in ((starts_lo, slopes_lo), (starts_hi, slopes_hi)):
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    denom = slopes[i] - slopes[j]
                    if denom == 0.0:
                        continue
                    t = (starts[j] - starts[i]) / denom
                    level = l0 + t
                    if l0 + _REFINE_TOL < level < l1 - _REFINE_TOL:
                        extra.append(level)
    if not extra:
        return base
    levels = list(base)
    for lv in sorted(extra):
        if all(abs(lv - existing) > _REFINE_TOL for existing in levels):
            levels.append(lv)
    return tuple(sorted(levels))


# ---------------------------------------------------------------------------
# admissible total orders
# ---------------------------------------------------------------------------


def _exact(x: float) -> Fraction:
    return Fraction(x)


def _key_integrals(
    levels: tuple[float, ...], cuts: list[Interval]
) -> tuple[Fraction, Fraction]:
    """Exact (integral of cut midpoint, integral of cut width) over levels."""
    mid_total = Fraction(0)
    width_total = Fraction(0)
    for k in range(len(levels) - 1):
        dl = _exact(levels[k + 1]) - _exact(levels[k])
        lo0, hi0 = _exact(cuts[k].lo), _exact(cuts[k].hi)
        lo1, hi1 = _exact(cuts[k + 1].lo), _exact(cuts[k + 1].hi)
        mid_total += dl * ((lo0 + hi0) + (lo1 + hi1)) / 4
        width_total += dl * ((hi0 - lo0) + (hi1 - lo1)) / 2
    return mid_total, width_total


def t1_order(a: PiecewiseMF, b: PiecewiseMF) -> Comparison:
    """Three-way comparison of fuzzy numbers under the admissible order.

    Keys, in order: integral of cut midpoints (a centroid in the level
    variable), negated integral of cut widths (narrower ranks higher), and
    finally endpoint-wise comparison from the core downward.  Returns 0 only
    when both describe the same function on their merged level grid.
    """
    levels = merge_levels(a.levels, b.levels)
    cuts_a = [alpha_cut(a, lv) for lv in levels]
    cuts_b = [alpha_cut(b, lv) for lv in levels]

    mid_a, width_a = _key_integrals(levels, cuts_a)
    mid_b, width_b = _key_integrals(levels, cuts_b)
    if mid_a != mid_b:
        return -1 if mid_a < mid_b else 1
    if width_a != width_b:
        # Negated width integral: the narrower operand is the greater one.
        return -1 if width_a > width_b else 1
    for ca, cb in zip(reversed(cuts_a), reversed(cuts_b)):
        if (ca.lo, ca.hi) != (cb.lo, cb.hi):
            return -1 if (ca.lo, ca.hi) < (cb.lo, cb.hi) else 1
    return 0


def it2_order_1(a: IT2MF, b: IT2MF) -> Comparison:
    """Lexicographic IT2 order: lower functions first, upper as tie-break."""
    first = t1_order(a.lower, b.lower)
    return first if first else t1_order(a.upper, b.upper)


def it2_order_2(a: IT2MF, b: IT2MF) -> Comparison:
    """Lexicographic IT2 order: upper functions first, lower as tie-break."""
    first = t1_order(a.upper, b.upper)
    return first if first else t1_order(a.lower, b.lower)

ORDERS = {"order_1": it2_order_1, "order_2": it2_order_2}

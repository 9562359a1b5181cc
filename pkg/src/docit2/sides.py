"""Placing elicited membership values on the criterion domain.

A label's fuzzy set is assembled from three pieces: a left flank rising from
the support edge to the core edge, the flat core, and a right flank falling
back to the support edge.  Each flank is elicited as a chain of reference
alternatives whose normalized membership values are known; this module pins
those values to domain positions and extracts the level cuts of the
assembled function exactly in rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .coresupport import CoreSupport
from .errors import InternalError, ValidationError
from .fuzzy import LEVEL_TOL, Interval, PiecewiseMF
from .solvers import Rational, as_fraction

SIDES = ("left", "right")


@dataclass(frozen=True)
class SideFragment:
    """One flank: membership values paired with domain positions.

    Memberships ascend from 0 at the support edge to 1 at the core edge;
    positions move toward the core, so they ascend for the left flank and
    descend for the right one.  Plateaus (equal consecutive memberships) and
    vertical jumps (equal consecutive positions) are both allowed, but not a
    completely duplicated point.
    """

    side: str
    memberships: tuple[Fraction, ...]
    positions: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.side not in SIDES:
            raise ValidationError(f"side must be one of {SIDES}, got {self.side!r}")
        if len(self.memberships) != len(self.positions):
            raise ValidationError(
                f"{len(self.memberships)} values need as many positions, "
                f"got {len(self.positions)}"
            )
        if len(self.memberships) < 2:
            raise ValidationError("a flank needs at least two points")
        if self.memberships[0] != 0 or self.memberships[-1] != 1:
            raise ValidationError("flank memberships must run from 0 to 1")
        toward_core = 1 if self.side == "left" else -1
        for j, (v0, v1) in enumerate(zip(self.memberships, self.memberships[1:])):
            if v1 < v0:
                raise ValidationError(f"memberships must not decrease (index {j})")
            dx = (self.positions[j + 1] - self.positions[j]) * toward_core
            if dx < 0:
                raise ValidationError(
                    f"{self.side} flank positions must move toward the core (index {j})"
                )
            if v1 == v0 and dx == 0:
                raise ValidationError(f"duplicated flank point at index {j}")

    @property
    def support_edge(self) -> Fraction:
        return self.positions[0]

    @property
    def core_edge(self) -> Fraction:
        return self.positions[-1]

    def position_at(self, level: Fraction) -> Fraction:
        """Domain position of this flank's cut boundary at a membership level.

        Returns the point furthest from the core whose membership reaches the
        level: the first crossing when walking in from the support edge.
        """
        if not 0 <= level <= 1:
            raise ValidationError(f"level {level} outside [0, 1]")
        if level == 0:
            return self.positions[0]
        for j in range(len(self.memberships) - 1):
            v0, v1 = self.memberships[j], self.memberships[j + 1]
            if v1 >= level and v1 > v0:
                t = (level - v0) / (v1 - v0)
                return self.positions[j] + t * (self.positions[j + 1] - self.positions[j])
        raise InternalError(f"no flank segment reaches level {level}")

    def to_json(self) -> dict:
        from .cards import format_fraction

        return {
            "side": self.side,
            "memberships": [format_fraction(v) for v in self.memberships],
            "positions": [format_fraction(x) for x in self.positions],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SideFragment":
        from .cards import parse_fraction

        return cls(
            data["side"],
            tuple(parse_fraction(v) for v in data["memberships"]),
            tuple(parse_fraction(x) for x in data["positions"]),
        )


def default_breakpoints(count: int, side: str, shape: CoreSupport) -> list[Fraction]:
    """Uniform subdivision from the support edge to the core edge."""
    if count < 2:
        raise ValidationError(f"need at least two breakpoints, got {count}")
    if side == "left":
        start, stop = as_fraction(shape.support.lo), as_fraction(shape.core.lo)
    elif side == "right":
        start, stop = as_fraction(shape.support.hi), as_fraction(shape.core.hi)
    else:
        raise ValidationError(f"side must be one of {SIDES}, got {side!r}")
    step = (stop - start) / (count - 1)
    return [start + k * step for k in range(count)]


def build_t1_side(
    values: Sequence[Rational],
    breakpoints: Sequence[Rational],
    side: str,
    shape: CoreSupport,
) -> SideFragment:
    """Pair normalized chain values with domain positions for one flank.

    Values and breakpoints may be given support-to-core (values ascending)
    or core-to-support (values descending); the latter is reversed.  The
    outermost breakpoint must equal the elicited support edge and the
    innermost the core edge.
    """
    vals = [as_fraction(v) for v in values]
    points = [as_fraction(x) for x in breakpoints]
    if len(vals) >= 2 and vals[0] > vals[-1]:
        vals.reverse()
        points.reverse()
    fragment = SideFragment(side, tuple(vals), tuple(points))
    edge = shape.support.lo if side == "left" else shape.support.hi
    core_edge = shape.core.lo if side == "left" else shape.core.hi
    if fragment.support_edge != as_fraction(edge):
        raise ValidationError(
            f"outermost breakpoint {fragment.support_edge} must sit on the "
            f"support edge {edge}"
        )
    if fragment.core_edge != as_fraction(core_edge):
        raise ValidationError(
            f"innermost breakpoint {fragment.core_edge} must sit on the "
            f"core edge {core_edge}"
        )
    return fragment


def ramp_fragment(side: str, shape: CoreSupport) -> SideFragment:
    """The no-information flank: a single linear ramp support edge to core edge."""
    return build_t1_side([0, 1], default_breakpoints(2, side, shape), side, shape)


def assemble_t1(
    shape: CoreSupport,
    left: SideFragment | None = None,
    right: SideFragment | None = None,
) -> PiecewiseMF:
    """Full fuzzy set from two flanks; missing flanks default to ramps.

    Levels are the union of both flanks' membership values; every cut is
    computed exactly in rational arithmetic before the float conversion of
    the stored representation.
    """
    left = left if left is not None else ramp_fragment("left", shape)
    right = right if right is not None else ramp_fragment("right", shape)
    if left.side != "left" or right.side != "right":
        raise ValidationError(
            f"flanks passed the wrong way round ({left.side!r}, {right.side!r})"
        )
    levels = sorted(set(left.memberships) | set(right.memberships))
    entries = []
    for level in levels:
        as_float = float(level)
        if entries and as_float - entries[-1][0] <= 2 * LEVEL_TOL and as_float != 1.0:
            continue
        if entries and as_float == 1.0 and as_float - entries[-1][0] <= 2 * LEVEL_TOL:
            entries.pop()
        entries.append(
            (as_float, float(left.position_at(level)), float(right.position_at(level)))
        )
    return PiecewiseMF(
        tuple(e[0] for e in entries),
        tuple(Interval(e[1], e[2]) for e in entries),
    )

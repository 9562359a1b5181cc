"""Core and support elicitation by four-boundary bisection.

The respondent has already tied a label to an anchor point of the domain.
Starting from that anchor the dialogue locates, on a uniform probe grid, the
leftmost and rightmost fully-satisfying points (the core) and the leftmost
and rightmost at-least-partially-satisfying points (the support).  Every
answer tightens exactly one bracket, and answers given on the way to one
boundary are remembered for the others, so no point is ever probed twice.

Answers use a three-word vocabulary: ``yes_full`` (fully confident the point
carries the label), ``partial`` (somewhat), ``no`` (not at all).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import InconsistencyError, InternalError, ProtocolError, ValidationError
from .fuzzy import Interval
from .solvers import Rational, as_fraction

ANSWERS = ("yes_full", "partial", "no")

STAGES = ("anchor", "core_left", "core_right", "support_left", "support_right", "done")


@dataclass(frozen=True)
class CoreSupport:
    """Support and core intervals of one label on the criterion domain."""

    support: Interval
    core: Interval

    def __post_init__(self) -> None:
        if not (self.support.lo <= self.core.lo and self.core.hi <= self.support.hi):
            raise ValidationError(
                f"core {self.core} must sit inside support {self.support}"
            )

    def to_json(self) -> dict:
        from .cards import format_fraction

        def encode(v):
            return format_fraction(v) if isinstance(v, Fraction) else v

        return {
            "support": [encode(self.support.lo), encode(self.support.hi)],
            "core": [encode(self.core.lo), encode(self.core.hi)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CoreSupport":
        from .cards import parse_fraction

        s, c = data["support"], data["core"]
        return cls(
            Interval(parse_fraction(s[0]), parse_fraction(s[1])),
            Interval(parse_fraction(c[0]), parse_fraction(c[1])),
        )


class BoundaryDialogue:
    """Deterministic probe sequence converging on a CoreSupport.

    The domain is discretized into ``(hi - lo) / resolution`` steps (the
    resolution must divide the width exactly; the default is one hundredth
    of it).  The anchor is snapped to the nearest grid point and must be
    confirmed fully satisfying, otherwise the label placement and this
    dialogue contradict each other.
    """

    def __init__(
        self,
        domain: tuple[Rational, Rational],
        anchor: Rational,
        resolution: Rational | None = None,
    ):
        lo, hi = as_fraction(domain[0]), as_fraction(domain[1])
        if hi <= lo:
            raise ValidationError(f"empty probe domain [{lo}, {hi}]")
        step = (hi - lo) / 100 if resolution is None else as_fraction(resolution)
        if step <= 0:
            raise ValidationError(f"resolution must be positive, got {step}")
        count = (hi - lo) / step
        if count.denominator != 1:
            raise ValidationError(
                f"resolution {step} does not divide the domain width {hi - lo}"
            )
        anchor = as_fraction(anchor)
        if not lo <= anchor <= hi:
            raise ValidationError(f"anchor {anchor} outside the domain [{lo}, {hi}]")

        self._origin = lo
        self._step = step
        self._last = int(count)
        # Snap the anchor to the nearest grid index, ties upward.
        self._anchor = min(self._last, int((anchor - lo) / step + Fraction(1, 2)))
        self._answers: dict[int, str] = {}
        self._probes = 0
        self._stage = "anchor"
        self._pending: int | None = self._anchor
        # Bracket conventions: the core-left boundary lives in (cl_lo, cl_hi]
        # where cl_hi is known fully satisfying and cl_lo known not (or the
        # virtual index -1); mirrored for the right side with the virtual
        # index last+1.  Support brackets start wide and tighten both from
        # their own probes and from anything learned during the core stages.
        self._cl = [-1, self._anchor]
        self._cr = [self._anchor, self._last + 1]
        self._sl = [-1, None]
        self._sr = [None, self._last + 1]
        self._core_left: int | None = None
        self._core_right: int | None = None
        self._result: CoreSupport | None = None

    # -- public surface ----------------------------------------------------

    @property
    def stage(self) -> str:
        return self._stage

    @property
    def probes_used(self) -> int:
        return self._probes

    @property
    def done(self) -> bool:
        return self._stage == "done"

    @property
    def pending(self) -> Fraction | None:
        """Domain position awaiting an answer, or None when finished."""
        if self._pending is None:
            return None
        return self._position(self._pending)

    def answer(self, reply: str) -> None:
        if reply not in ANSWERS:
            raise ValidationError(f"unknown answer {reply!r}, expected one of {ANSWERS}")
        if self._pending is None:
            raise ProtocolError(
                "no probe is pending", phase=self._stage, expected=[]
            )
        index = self._pending
        self._answers[index] = reply
        self._probes += 1
        self._pending = None
        self._apply(index, reply)
        self._advance()

    def result(self) -> CoreSupport:
        if self._result is None:
            raise ProtocolError(
                "dialogue still running", phase=self._stage, expected=["answer"]
            )
        return self._result

    def run(self, oracle: Callable[[Fraction], str]) -> CoreSupport:
        """Drive the dialogue to completion with a callable respondent."""
        while not self.done:
            self.answer(oracle(self.pending))
        return self.result()

    # -- mechanics ----------------------------------------------------------

    def _position(self, index: int) -> Fraction:
        return self._origin + index * self._step

    def _apply(self, index: int, reply: str) -> None:
        if self._stage == "anchor":
            if reply != "yes_full":
                raise InconsistencyError(
                    f"anchor {float(self._position(index))} answered {reply!r}; "
                    "the label placement must be revisited before probing",
                    phase="anchor",
                    expected=["yes_full"],
                )
        elif self._stage == "core_left":
            if reply == "yes_full":
                self._cl[1] = index
            else:
                self._cl[0] = index
                if reply == "no":
                    self._sl[0] = max(self._sl[0], index)
                else:
                    self._shrink_sl_hi(index)
                self._check_flank("left", self._sl)
        elif self._stage == "core_right":
            if reply == "yes_full":
                self._cr[0] = index
            else:
                self._cr[1] = index
                if reply == "no":
                    self._sr[1] = min(self._sr[1], index)
                else:
                    self._grow_sr_lo(index)
                self._check_flank("right", self._sr)
        elif self._stage == "support_left":
            if reply == "yes_full":
                raise InconsistencyError(
                    f"{float(self._position(index))} answered fully satisfying below "
                    "the established core; restart the support-left search",
                    phase="support_left",
                    expected=["partial", "no"],
                )
            if reply == "no":
                self._sl[0] = index
            else:
                self._sl[1] = index
        elif self._stage == "support_right":
            if reply == "yes_full":
                raise InconsistencyError(
                    f"{float(self._position(index))} answered fully satisfying above "
                    "the established core; restart the support-right search",
                    phase="support_right",
                    expected=["partial", "no"],
                )
            if reply == "no":
                self._sr[1] = index
            else:
                self._sr[0] = index
        else:
            raise InternalError(f"answer applied in stage {self._stage}")

    def _shrink_sl_hi(self, index: int) -> None:
        self._sl[1] = index if self._sl[1] is None else min(self._sl[1], index)

    def _grow_sr_lo(self, index: int) -> None:
        self._sr[0] = index if self._sr[0] is None else max(self._sr[0], index)

    def _check_flank(self, side: str, bracket: list) -> None:
        if None in bracket or bracket[0] < bracket[1]:
            return
        raise InconsistencyError(
            f"{side}-flank answers are contradictory (a rejection "
            f"{'above' if side == 'left' else 'below'} a partial acceptance); "
            f"restart the support-{side} search",
            phase=f"support_{side}",
            expected=["partial", "no"],
        )

    def _advance(self) -> None:
        while True:
            if self._stage == "anchor":
                self._stage = "core_left"
            elif self._stage == "core_left":
                if self._bisect(self._cl, pick_upper=True):
                    return
                self._core_left = self._cl[1]
                self._stage = "core_right"
            elif self._stage == "core_right":
                if self._bisect(self._cr, pick_upper=False):
                    return
                self._core_right = self._cr[0]
                self._enter_support_left()
            elif self._stage == "support_left":
                if self._bisect(self._sl, pick_upper=True):
                    return
                self._enter_support_right()
            elif self._stage == "support_right":
                if self._bisect(self._sr, pick_upper=False):
                    return
                self._finish()
                return
            else:
                raise InternalError(f"advance from stage {self._stage}")

    def _bisect(self, bracket: list, pick_upper: bool) -> bool:
        """Tighten one bracket; True when a probe was issued and we must wait."""
        while bracket[1] - bracket[0] > 1:
            mid = (bracket[0] + bracket[1]) // 2
            if mid in self._answers:
                self._apply(mid, self._answers[mid])
            else:
                self._pending = mid
                return True
        return False

    def _enter_support_left(self) -> None:
        self._shrink_sl_hi(self._core_left)
        self._check_flank("left", self._sl)
        self._stage = "support_left"

    def _enter_support_right(self) -> None:
        self._grow_sr_lo(self._core_right)
        self._check_flank("right", self._sr)
        self._stage = "support_right"

    def _finish(self) -> None:
        support = Interval(self._position(self._sl[1]), self._position(self._sr[0]))
        core = Interval(self._position(self._core_left), self._position(self._core_right))
        self._result = CoreSupport(support=support, core=core)
        self._stage = "done"
        self._pending = None


def probe_budget(steps: int) -> int:
    """Worst-case probes for a dialogue over ``steps`` grid intervals."""
    return 4 * math.ceil(math.log2(max(2, steps))) + 1

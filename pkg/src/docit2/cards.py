"""Card chains and the arithmetic of the elicitation protocol.

A chain orders reference points from least to most and records, between each
consecutive pair, how many blank cards the decision maker placed to widen the
gap.  All derived quantities (non-normalized values, ratio tables, membership
values, weights) are exact rationals; floats only appear when a caller brings
them in.

Hesitation is a closed integer interval instead of an exact count on any
subset of gaps; such chains must be enumerated into their exact combinations
before value arithmetic applies.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import EnumerationCapError, InternalError, PrecisionError, ValidationError
from .solvers import AbsDeviationLP, AbsTerm, Rational, as_fraction, solve_abs_lp, solve_int_alloc


@dataclass(frozen=True)
class CardGap:
    """Blank-card count between two chain neighbors; an interval when hesitant."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo < 0 or self.hi < self.lo:
            raise ValidationError(f"bad card gap [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, count: int) -> "CardGap":
        return cls(count, count)

    @classmethod
    def of(cls, raw: "CardGap | int | Sequence[int]") -> "CardGap":
        if isinstance(raw, CardGap):
            return raw
        if isinstance(raw, bool):
            raise ValidationError("card gap cannot be a boolean")
        if isinstance(raw, int):
            return cls.exact(raw)
        if isinstance(raw, Sequence) and len(raw) == 2:
            return cls(int(raw[0]), int(raw[1]))
        raise ValidationError(f"cannot read a card gap from {raw!r}")

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def count(self) -> int:
        if not self.is_exact:
            raise ValidationError(f"gap [{self.lo}, {self.hi}] is hesitant")
        return self.lo

    def to_json(self) -> int | list[int]:
        return self.lo if self.is_exact else [self.lo, self.hi]


@dataclass(frozen=True)
class CardChain:
    """Items ordered ascending with a card gap between each adjacent pair."""

    items: tuple[str, ...]
    gaps: tuple[CardGap, ...]

    def __post_init__(self) -> None:
        if len(self.items) < 2:
            raise ValidationError("a chain needs at least two items")
        if len(self.gaps) != len(self.items) - 1:
            raise ValidationError(
                f"{len(self.items)} items need {len(self.items) - 1} gaps, got {len(self.gaps)}"
            )

    @classmethod
    def of(cls, items: Sequence[str], gaps: Sequence[CardGap | int | Sequence[int]]) -> "CardChain":
        return cls(tuple(items), tuple(CardGap.of(g) for g in gaps))

    @property
    def is_exact(self) -> bool:
        return all(g.is_exact for g in self.gaps)

    def to_json(self) -> dict:
        return {"items": list(self.items), "gaps": [g.to_json() for g in self.gaps]}

    @classmethod
    def from_json(cls, data: dict) -> "CardChain":
        return cls.of(data["items"], data["gaps"])


def enumerate_chains(chain: CardChain, cap: int = 10_000) -> list[CardChain]:
    """All exact chains compatible with the hesitation intervals.

    The family size is the product of the interval widths; if it exceeds
    ``cap`` the error names the offending count before anything materializes.
    """
    count = math.prod(g.hi - g.lo + 1 for g in chain.gaps)
    if count > cap:
        raise EnumerationCapError(
            f"hesitation family has {count} members, cap is {cap}", count, cap
        )
    ranges = [range(g.lo, g.hi + 1) for g in chain.gaps]
    return [
        CardChain(chain.items, tuple(CardGap.exact(c) for c in combo))
        for combo in itertools.product(*ranges)
    ]


def unnormalized_values(chain: CardChain) -> list[Fraction]:
    """Position values: first item 0, then accumulate (cards + 1) per gap."""
    if not chain.is_exact:
        raise ValidationError("chain has hesitant gaps; enumerate before valuing")
    values = [Fraction(0)]
    for gap in chain.gaps:
        values.append(values[-1] + gap.count + 1)
    return values


@dataclass(frozen=True)
class RatioTable:
    """Pairwise value ratios over positions 2..p, with modification flags.

    ``entries[(s, r)]`` is value_s / value_r for 1-based positions s > r >= 2;
    position 1 is excluded because its value is always zero.
    """

    size: int
    entries: dict[tuple[int, int], Fraction] = field(hash=False)
    modified: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        expected = {(s, r) for r in range(2, self.size + 1) for s in range(r + 1, self.size + 1)}
        if set(self.entries) != expected:
            raise ValidationError("ratio table entries do not cover all pairs s > r >= 2")
        if not self.modified <= expected:
            raise ValidationError("modified flag on an unknown entry")
        for key, value in self.entries.items():
            if value <= 0:
                raise ValidationError(f"ratio {key} is {value}, must be positive")

    @classmethod
    def from_values(cls, values: Sequence[Rational]) -> "RatioTable":
        vals = [as_fraction(v) for v in values]
        for r, v in enumerate(vals[1:], start=2):
            if v <= 0:
                raise InternalError(f"position {r} has non-positive value {v}")
        entries = {
            (s, r): vals[s - 1] / vals[r - 1]
            for r in range(2, len(vals) + 1)
            for s in range(r + 1, len(vals) + 1)
        }
        return cls(len(vals), entries)

    def with_modification(self, s: int, r: int, value: Rational) -> "RatioTable":
        if (s, r) not in self.entries:
            raise ValidationError(f"no ratio entry for positions ({s}, {r})")
        ratio = as_fraction(value)
        if ratio <= 0:
            raise ValidationError(f"modified ratio ({s}, {r}) must be positive, got {ratio}")
        entries = dict(self.entries)
        entries[(s, r)] = ratio
        return RatioTable(self.size, entries, self.modified | {(s, r)})

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "entries": {
                f"{s},{r}": {
                    "value": format_fraction(v),
                    "modified": (s, r) in self.modified,
                }
                for (s, r), v in sorted(self.entries.items())
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "RatioTable":
        entries = {}
        modified = set()
        for key, cell in data["entries"].items():
            s, r = (int(part) for part in key.split(","))
            entries[(s, r)] = parse_fraction(cell["value"])
            if cell.get("modified"):
                modified.add((s, r))
        return cls(int(data["size"]), entries, frozenset(modified))


def normalize(values: Sequence[Rational]) -> list[Fraction]:
    """Membership values: divide by the last (largest) position value."""
    vals = [as_fraction(v) for v in values]
    if not vals:
        raise ValidationError("no values to normalize")
    top = vals[-1]
    if top <= 0:
        raise ValidationError(f"top position value is {top}, cannot normalize")
    for a, b in zip(vals, vals[1:]):
        if b < a:
            raise ValidationError("position values must be non-decreasing")
    return [v / top for v in vals]


def adjust_values(table: RatioTable, orientation: str = "ascending") -> list[Fraction]:
    """Position values >= 1 that fit a (possibly modified) ratio table best.

    Minimizes the total absolute deviation between each stored ratio and the
    value pair it relates, with every free position value at least 1; the
    first position stays pinned at 0.  ``orientation`` picks which side of
    the pair the ratio multiplies: ``"ascending"`` treats the entry for
    (s, r) as value_s / value_r (the default, consistent with how tables are
    built here); ``"literal"`` applies the transposed reading.  Ties go to
    the lexicographically smallest value vector.
    """
    if orientation not in ("ascending", "literal"):
        raise ValidationError(f"unknown orientation {orientation!r}")
    index = {pos: pos - 2 for pos in range(2, table.size + 1)}
    terms = []
    for (s, r), ratio in sorted(table.entries.items()):
        if orientation == "ascending":
            terms.append(AbsTerm(index[s], index[r], ratio))
        else:
            terms.append(AbsTerm(index[r], index[s], ratio))
    problem = AbsDeviationLP(
        lower_bounds=tuple(Fraction(1) for _ in index),
        terms=tuple(terms),
    )
    _, assignment = solve_abs_lp(problem)
    return [Fraction(0), *assignment]


def cards_from_values(
    values: Sequence[Rational],
    h_max: int,
    items: Sequence[str] | None = None,
) -> tuple[CardChain, int]:
    """Inverse step: a card chain whose values best match the given ones.

    Searches every total unit count h from p-1 to ``h_max``; for each h the
    increments are scaled to sum to h and rounded by the exact integer
    allocator.  The best (smallest L1 deviation) wins, ties going to the
    smaller h and then to the lexicographically smallest gap vector (the
    allocator already guarantees the latter per h).
    """
    vals = [as_fraction(v) for v in values]
    if len(vals) < 2:
        raise ValidationError("need at least two values")
    if vals[0] != 0:
        raise ValidationError(f"first value must be 0, got {vals[0]}")
    for a, b in zip(vals, vals[1:]):
        if b <= a:
            raise ValidationError("values must be strictly increasing")
    p = len(vals)
    if h_max < p - 1:
        raise ValidationError(f"h_max {h_max} cannot cover {p - 1} increments")
    if items is None:
        items = tuple(f"x{i}" for i in range(1, p + 1))
    elif len(items) != p:
        raise ValidationError(f"{p} values need {p} items, got {len(items)}")

    increments = [b - a for a, b in zip(vals, vals[1:])]
    top = vals[-1]
    best: tuple[Fraction, int, list[int]] | None = None
    for h in range(p - 1, h_max + 1):
        targets = [delta * h / top for delta in increments]
        shares = solve_int_alloc(targets, h)
        objective = sum(
            (abs(Fraction(s) - q) for s, q in zip(shares, targets)), Fraction(0)
        )
        if best is None or objective < best[0]:
            best = (objective, h, shares)
    _, h, shares = best
    chain = CardChain(tuple(items), tuple(CardGap.exact(s - 1) for s in shares))
    return chain, h


def weights_from_cards(chain: CardChain, worst_is_zero: bool = True) -> list[Fraction]:
    """Normalized importance weights, aligned with the chain's ascending items.

    The least important item gets 0 (or one base unit when ``worst_is_zero``
    is false); each step up adds the gap's card count plus one; the column is
    then normalized by its total to sum to exactly 1.
    """
    if not chain.is_exact:
        raise ValidationError("chain has hesitant gaps; enumerate before weighting")
    raw = [Fraction(0 if worst_is_zero else 1)]
    for gap in chain.gaps:
        raw.append(raw[-1] + gap.count + 1)
    total = sum(raw)
    return [w / total for w in raw]


@dataclass(frozen=True)
class ValueScale:
    """Scale values per label on [0, 1] plus the worth of a single card step."""

    labels: tuple[str, ...]
    values: tuple[Fraction, ...]
    card_value: Fraction

    def value_of(self, label: str) -> Fraction:
        try:
            return self.values[self.labels.index(label)]
        except ValueError:
            raise ValidationError(f"unknown label {label!r}") from None

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "values": [format_fraction(v) for v in self.values],
            "card_value": format_fraction(self.card_value),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ValueScale":
        return cls(
            tuple(data["labels"]),
            tuple(parse_fraction(v) for v in data["values"]),
            parse_fraction(data["card_value"]),
        )


def label_values(labels: Sequence[str], gaps: Sequence[CardGap | int]) -> ValueScale:
    """Spread ordered labels over [0, 1] by card counts.

    First label 0, last label 1, and every card step is worth the same
    exact fraction of the whole range.
    """
    if len(labels) < 2:
        raise ValidationError("need at least two labels")
    if len(set(labels)) != len(labels):
        raise ValidationError("labels must be unique")
    chain = CardChain.of(labels, gaps)
    if not chain.is_exact:
        raise ValidationError("label placement cannot be hesitant")
    positions = unnormalized_values(chain)
    span = positions[-1]
    return ValueScale(
        labels=tuple(labels),
        values=tuple(v / span for v in positions),
        card_value=Fraction(1) / span,
    )


def approximate_with_cards(values: Sequence[float], digits: int) -> list[int]:
    """Integer card counts reconstructing an ascending value tuple to 10^-digits.

    The counts are consecutive differences of floor(10^digits * value),
    computed exactly; they sum to 10^digits when the tuple ends at 1, and the
    partial sums divided by 10^digits miss each value by less than one unit
    in the last digit.  An explicit leading zero contributes no count.
    """
    if digits < 1:
        raise ValidationError(f"need at least one digit, got {digits}")
    vals = [as_fraction(v) for v in values]
    if vals and vals[0] == 0:
        vals = vals[1:]
    if not vals:
        raise ValidationError("no values to approximate")
    if vals[-1] != 1:
        raise ValidationError(f"last value must be 1, got {float(vals[-1])}")
    scale_num = 10**digits
    previous = 0
    counts = []
    for i, v in enumerate(vals):
        if not 0 < v <= 1:
            raise ValidationError(f"value {float(v)} at index {i} outside (0, 1]")
        floor_v = math.floor(v * scale_num)
        if floor_v <= previous:
            raise PrecisionError(
                f"values at index {i} collide at {digits} digits; increase digits",
                index=i,
            )
        counts.append(floor_v - previous)
        previous = floor_v
    return counts


def format_fraction(value: Fraction) -> str:
    """Exact string form: "n" for integers, "n/d" otherwise."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str | int | float) -> Fraction:
    if isinstance(text, bool):
        raise ValidationError("expected a number, got a boolean")
    if isinstance(text, (int, float)):
        return Fraction(text)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse {text!r} as a rational") from exc

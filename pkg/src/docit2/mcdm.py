"""Linguistic multi-criteria scoring and ranking.

Alternatives are judged per criterion with labels from that criterion's
linguistic scale; each label is bound to an interval type-2 fuzzy set on
[0, 1] produced by the elicitation pipeline.  Scores are weighted averages
of the judged sets, and rankings come from one of the two lexicographic
total orders, named explicitly in every report because they can disagree.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence

from .cards import ValueScale, format_fraction, parse_fraction
from .errors import ValidationError, WeightError
from .fuzzy import knots
from .it2 import IT2MF, ORDERS, it2_weighted_average
from .solvers import Rational, as_fraction


@dataclass(frozen=True)
class LinguisticScale:
    """Ordered labels with their scale values and per-label fuzzy sets.

    Bindings may be partial while elicitation is still in progress; scoring
    demands every label used in the matrix to be bound.
    """

    name: str
    values: ValueScale
    memberships: dict[str, IT2MF]

    def __post_init__(self) -> None:
        unknown = set(self.memberships) - set(self.values.labels)
        if unknown:
            raise ValidationError(
                f"scale {self.name!r} binds unknown labels {sorted(unknown)}"
            )
        for label, mf in self.memberships.items():
            support = mf.upper.support
            if support.lo < 0.0 or support.hi > 1.0:
                raise ValidationError(
                    f"label {label!r} on scale {self.name!r} has support "
                    f"[{support.lo}, {support.hi}] outside [0, 1]"
                )

    @property
    def labels(self) -> tuple[str, ...]:
        return self.values.labels

    def membership(self, label: str) -> IT2MF:
        if label not in self.labels:
            raise ValidationError(
                f"label {label!r} does not exist on scale {self.name!r}", field=label
            )
        try:
            return self.memberships[label]
        except KeyError:
            raise ValidationError(
                f"label {label!r} on scale {self.name!r} has no bound membership "
                "function",
                field=label,
            ) from None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "values": self.values.to_json(),
            "memberships": {
                label: mf.to_dict() for label, mf in sorted(self.memberships.items())
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LinguisticScale":
        try:
            return cls(
                name=data["name"],
                values=ValueScale.from_json(data["values"]),
                memberships={
                    label: IT2MF.from_dict(mf)
                    for label, mf in data["memberships"].items()
                },
            )
        except ValidationError:
            raise
        except (AttributeError, KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed scale payload: {exc!r}") from exc


@dataclass(frozen=True)
class Criterion:
    name: str
    scale: LinguisticScale


@dataclass(frozen=True)
class DecisionProblem:
    """Alternatives judged on weighted criteria over linguistic scales.

    A matrix cell is either a label from the criterion's scale or a direct
    IT2MF on [0, 1] for pre-normalized numeric criteria.
    """

    alternatives: tuple[str, ...]
    criteria: tuple[Criterion, ...]
    weights: tuple[Fraction, ...]
    performance: dict[tuple[str, str], "str | IT2MF"]

    def __post_init__(self) -> None:
        if not self.alternatives:
            raise ValidationError("no alternatives")
        if not self.criteria:
            raise ValidationError("no criteria")
        if len(set(self.alternatives)) != len(self.alternatives):
            raise ValidationError("duplicate alternative names")
        names = [c.name for c in self.criteria]
        if len(set(names)) != len(names):
            raise ValidationError("duplicate criterion names")
        if len(self.weights) != len(self.criteria):
            raise WeightError(
                f"{len(self.criteria)} criteria but {len(self.weights)} weights"
            )
        for w in self.weights:
            if w < 0 or w > 1:
                raise WeightError(f"weight {w} outside [0, 1]")
        if abs(sum(self.weights) - 1) > Fraction(1, 10**9):
            raise WeightError(f"weights sum to {sum(self.weights)}, not 1")
        expected = {(a, c.name) for a in self.alternatives for c in self.criteria}
        if set(self.performance) != expected:
            missing = sorted(expected - set(self.performance))
            extra = sorted(set(self.performance) - expected)
            raise ValidationError(
                f"performance matrix mismatch: missing {missing}, unknown {extra}"
            )
        for (alt, crit_name), cell in self.performance.items():
            if isinstance(cell, IT2MF):
                continue
            scale = self._criterion(crit_name).scale
            if cell not in scale.labels:
                raise ValidationError(
                    f"cell ({alt!r}, {crit_name!r}) uses label {cell!r} which is "
                    f"not on scale {scale.name!r}"
                )

    @classmethod
    def of(
        cls,
        alternatives: Sequence[str],
        criteria: Sequence[Criterion],
        weights: Sequence[Rational],
        performance: dict,
    ) -> "DecisionProblem":
        return cls(
            tuple(alternatives),
            tuple(criteria),
            tuple(as_fraction(w) for w in weights),
            dict(performance),
        )

    def _criterion(self, name: str) -> Criterion:
        for c in self.criteria:
            if c.name == name:
                return c
        raise ValidationError(f"unknown criterion {name!r}")

    def cell_membership(self, alternative: str, criterion: Criterion) -> IT2MF:
        cell = self.performance[(alternative, criterion.name)]
        if isinstance(cell, IT2MF):
            return cell
        return criterion.scale.membership(cell)

    def to_dict(self) -> dict:
        cells = {}
        for (alt, crit), cell in sorted(self.performance.items()):
            value = cell.to_dict() if isinstance(cell, IT2MF) else cell
            cells.setdefault(alt, {})[crit] = value
        return {
            "alternatives": list(self.alternatives),
            "criteria": [
                {"name": c.name, "scale": c.scale.to_dict()} for c in self.criteria
            ],
            "weights": [format_fraction(w) for w in self.weights],
            "performance": cells,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DecisionProblem":
        try:
            if isinstance(data.get("alternatives"), str):
                raise ValidationError("alternatives must be a list of names")
            criteria = tuple(
                Criterion(entry["name"], LinguisticScale.from_dict(entry["scale"]))
                for entry in data["criteria"]
            )
            performance = {}
            for alt, row in data["performance"].items():
                for crit, cell in row.items():
                    performance[(alt, crit)] = (
                        IT2MF.from_dict(cell) if isinstance(cell, dict) else cell
                    )
            return cls(
                alternatives=tuple(data["alternatives"]),
                criteria=criteria,
                weights=tuple(parse_fraction(w) for w in data["weights"]),
                performance=performance,
            )
        except ValidationError:
            raise
        except (AttributeError, KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed decision problem payload: {exc!r}") from exc


def score_alternative(problem: DecisionProblem, alternative: str) -> IT2MF:
    """Weighted average of one alternative's judged fuzzy sets."""
    if alternative not in problem.alternatives:
        raise ValidationError(f"unknown alternative {alternative!r}")
    row = [problem.cell_membership(alternative, c) for c in problem.criteria]
    return it2_weighted_average(row, [float(w) for w in problem.weights])


@dataclass(frozen=True)
class Ranking:
    """Best-first equivalence classes of alternatives under a named order."""

    order: str
    classes: tuple[tuple[str, ...], ...]
    scores: dict[str, IT2MF]

    def position(self, alternative: str) -> int:
        """Dense rank of an alternative, best class = 1."""
        for k, group in enumerate(self.classes, start=1):
            if alternative in group:
                return k
        raise ValidationError(f"unknown alternative {alternative!r}")

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "classes": [list(group) for group in self.classes],
            "scores": {alt: mf.to_dict() for alt, mf in sorted(self.scores.items())},
        }


def rank(problem: DecisionProblem, order: str = "order_1") -> Ranking:
    """Total ranking of all alternatives; ties become equivalence classes.

    Alternatives within a class keep their problem-definition order, so the
    output is deterministic for identical inputs.
    """
    try:
        compare = ORDERS[order]
    except KeyError:
        raise ValidationError(
            f"unknown order {order!r}, expected one of {sorted(ORDERS)}"
        ) from None
    scores = {a: score_alternative(problem, a) for a in problem.alternatives}
    best_first = sorted(
        problem.alternatives,
        key=cmp_to_key(lambda x, y: compare(scores[y], scores[x])),
    )
    classes: list[list[str]] = []
    for alt in best_first:
        if classes and compare(scores[classes[-1][-1]], scores[alt]) == 0:
            classes[-1].append(alt)
        else:
            classes.append([alt])
    return Ranking(
        order=order,
        classes=tuple(tuple(group) for group in classes),
        scores=scores,
    )


def ranking_csv(ranking: Ranking) -> str:
    """Two-column CSV of dense ranks, best first."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["rank", "alternative"])
    for position, group in enumerate(ranking.classes, start=1):
        for alt in group:
            writer.writerow([position, alt])
    return out.getvalue()


def score_knots_csv(ranking: Ranking) -> str:
    """Plot-ready knot table of every alternative's score band."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["alternative", "component", "x", "membership"])
    for alt in sorted(ranking.scores):
        mf = ranking.scores[alt]
        for component, curve in (("lower", mf.lower), ("upper", mf.upper)):
            for x, degree in knots(curve):
                writer.writerow([alt, component, repr(x), repr(degree)])
    return out.getvalue()

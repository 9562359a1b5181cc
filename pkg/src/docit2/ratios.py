"""Membership degrees from subjective preference-intensity ratios.

The protocol asks a respondent "how many times more does x satisfy the
criterion than w?", with w drawn from elements already judged fully
satisfying.  If those answers are coherent, dividing each answer by the
largest one for the same reference yields membership degrees that do not
depend on which reference was used; the checks here detect incoherence and
report it instead of repairing it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import RatioConsistencyError, ValidationError
from .solvers import Rational, as_fraction

DEFAULT_RATIO_TOL = Fraction(1, 20)


class RatioViolation(NamedTuple):
    """One failed coherence comparison, with both sides kept for display."""

    kind: str
    elements: tuple[str, ...]
    left: Fraction
    right: Fraction

    @property
    def relative_gap(self) -> Fraction:
        return abs(self.left - self.right) / max(self.left, self.right)


@dataclass(frozen=True)
class SubjectiveRatios:
    """Answers rho[(x, w)] for every element x against every reference w."""

    universe: tuple[str, ...]
    references: tuple[str, ...]
    ratios: dict[tuple[str, str], Fraction]

    def __post_init__(self) -> None:
        if len(set(self.universe)) != len(self.universe):
            raise ValidationError("universe has duplicate elements")
        if not self.references:
            raise ValidationError("need at least one reference element")
        missing = set(self.references) - set(self.universe)
        if missing:
            raise ValidationError(f"references {sorted(missing)} are not in the universe")
        expected = {(x, w) for x in self.universe for w in self.references}
        if set(self.ratios) != expected:
            raise ValidationError("ratio answers do not cover universe x references")
        for key, value in self.ratios.items():
            if value <= 0:
                raise ValidationError(f"ratio {key} is {value}, must be positive")

    @classmethod
    def of(
        cls,
        universe: Sequence[str],
        references: Sequence[str],
        ratios: dict[tuple[str, str], Rational],
    ) -> "SubjectiveRatios":
        return cls(
            tuple(universe),
            tuple(references),
            {key: as_fraction(value) for key, value in ratios.items()},
        )

    def ratio(self, x: str, reference: str) -> Fraction:
        try:
            return self.ratios[(x, reference)]
        except KeyError:
            raise ValidationError(f"no answer for {x!r} against {reference!r}") from None


def _within(left: Fraction, right: Fraction, tol: Fraction) -> bool:
    return abs(left - right) <= tol * max(left, right)


def check_reference_independence(
    table: SubjectiveRatios, tol: Rational = DEFAULT_RATIO_TOL
) -> list[RatioViolation]:
    """Compare every answer pair across every reference pair.

    Coherence demands rho(x|w) / rho(y|w) == rho(x|v) / rho(y|v); the test is
    cross-multiplied so only products of positive answers are compared, with
    a relative tolerance on the larger side.
    """
    tol = as_fraction(tol)
    violations = []
    for i, w in enumerate(table.references):
        for v in table.references[i + 1 :]:
            for j, x in enumerate(table.universe):
                for y in table.universe[j + 1 :]:
                    left = table.ratio(x, w) * table.ratio(y, v)
                    right = table.ratio(y, w) * table.ratio(x, v)
                    if not _within(left, right, tol):
                        violations.append(
                            RatioViolation("reference_independence", (x, y, w, v), left, right)
                        )
    return violations


def check_multiplicative(
    table: SubjectiveRatios, tol: Rational = DEFAULT_RATIO_TOL
) -> list[RatioViolation]:
    """Check the chaining rule rho(x|z) == rho(x|y) * rho(y|z).

    Runs over every element x and every ordered reference pair (y, z),
    including y == z, which quietly verifies rho(z|z) == 1.
    """
    tol = as_fraction(tol)
    violations = []
    for x in table.universe:
        for y in table.references:
            for z in table.references:
                left = table.ratio(x, z)
                right = table.ratio(x, y) * table.ratio(y, z)
                if not _within(left, right, tol):
                    violations.append(
                        RatioViolation("multiplicative", (x, y, z), left, right)
                    )
    return violations


def memberships_from_ratios(
    table: SubjectiveRatios,
    reference: str | None = None,
    tol: Rational = DEFAULT_RATIO_TOL,
) -> dict[str, Fraction]:
    """Membership degree of every element, normalized by the largest answer.

    Refuses incoherent tables: all violations from both checks are collected
    into the raised error, never patched over.  For coherent tables the
    result is the same (exactly, up to the tolerance the checks allow) no
    matter which reference is chosen.
    """
    violations = check_reference_independence(table, tol) + check_multiplicative(table, tol)
    if violations:
        raise RatioConsistencyError(
            f"{len(violations)} coherence violations in the ratio answers", violations
        )
    if reference is None:
        reference = table.references[0]
    elif reference not in table.references:
        raise ValidationError(f"{reference!r} is not a reference element")
    top = max(table.ratio(x, reference) for x in table.universe)
    return {x: table.ratio(x, reference) / top for x in table.universe}

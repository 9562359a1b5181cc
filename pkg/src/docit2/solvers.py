"""Exact solvers for the two small optimization problems of the protocol.

Both problems are tiny (tens of variables), so they are solved here with
exact rational arithmetic and deterministic tie-breaking instead of calling
an external solver: results must be reproducible bit for bit, and "the
objective is zero" must mean exactly zero.

``solve_abs_lp`` minimizes a sum of absolute deviations ``|x_i - c * x_j|``
over real variables with lower bounds, via a dense two-phase simplex on
``fractions.Fraction`` with Bland's rule.  Among multiple optima it returns
the lexicographically smallest assignment, found by re-solving with the
optimum pinned and each variable minimized in turn.

``solve_int_alloc`` distributes an integer total over slots with a minimum
per slot, minimizing the L1 distance to fractional targets.  It starts from a
largest-remainder allocation and applies single-unit exchanges; the objective
is separable convex under a sum constraint, so a 1-exchange-stable point is
globally optimal.  A final pass pins each coordinate to the smallest value
that still admits an optimal completion, giving the lexicographically
smallest optimal allocation.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InternalError, ValidationError

Rational = Fraction | int | float


def as_fraction(value: Rational) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


# ---------------------------------------------------------------------------
# absolute-deviation linear program
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbsTerm:
    """One objective term ``|x[left] - coef * x[right]]``."""

    left: int
    right: int
    coef: Fraction


@dataclass(frozen=True)
class AbsDeviationLP:
    """Sum-of-absolute-deviations program over lower-bounded variables."""

    lower_bounds: tuple[Fraction, ...]
    terms: tuple[AbsTerm, ...]

    def __post_init__(self) -> None:
        n = len(self.lower_bounds)
        for t in self.terms:
            if not (0 <= t.left < n and 0 <= t.right < n):
                raise ValidationError(f"term {t} references an unknown variable")
            if t.left == t.right:
                raise ValidationError(f"term {t} compares a variable with itself")


def solve_abs_lp(problem: AbsDeviationLP) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Exact optimum and lexicographically smallest optimal assignment."""
    n = len(problem.lower_bounds)
    k = len(problem.terms)
    if n == 0:
        return Fraction(0), ()
    # Variables: y_0..y_{n-1} (shifted originals), d_0..d_{k-1} (deviations).
    width = n + k
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for j, t in enumerate(problem.terms):
        const = problem.lower_bounds[t.left] - t.coef * problem.lower_bounds[t.right]
        row = [Fraction(0)] * width
        row[t.left] = Fraction(1)
        row[t.right] -= t.coef
        row[n + j] = Fraction(-1)
        rows.append(row)
        rhs.append(-const)
        rows.append([-v for v in row[:n]] + row[n:])
        rhs.append(const)
    objective = [Fraction(0)] * n + [Fraction(1)] * k

    optimum, assignment = _simplex(objective, rows, rhs, [], [])
    # Pin the optimum, then minimize each original variable in turn.
    eq_rows: list[list[Fraction]] = [list(objective)]
    eq_rhs: list[Fraction] = [optimum]
    values: list[Fraction] = []
    for i in range(n):
        unit = [Fraction(0)] * width
        unit[i] = Fraction(1)
        v, assignment = _simplex(unit, rows, rhs, eq_rows, eq_rhs)
        values.append(v)
        eq_rows.append(unit)
        eq_rhs.append(v)
    xs = tuple(v + lb for v, lb in zip(values, problem.lower_bounds))
    return optimum, xs


def _simplex(
    c: list[Fraction],
    a_ub: list[list[Fraction]],
    b_ub: list[Fraction],
    a_eq: list[list[Fraction]],
    b_eq: list[Fraction],
) -> tuple[Fraction, list[Fraction]]:
    """min c.x s.t. a_ub x <= b_ub, a_eq x = b_eq, x >= 0.

    Dense two-phase tableau with Bland's rule; exact on Fractions.
    """
    n = len(c)
    m_ub, m_eq = len(a_ub), len(a_eq)
    m = m_ub + m_eq
    total = n + m_ub + m  # originals, slacks, artificials
    tableau = [[Fraction(0)] * (total + 1) for _ in range(m)]
    for i in range(m):
        body = a_ub[i] if i < m_ub else a_eq[i - m_ub]
        b = b_ub[i] if i < m_ub else b_eq[i - m_ub]
        row = tableau[i]
        for j, v in enumerate(body):
            row[j] = v
        if i < m_ub:
            row[n + i] = Fraction(1)
        if b < 0:
            for j in range(total):
                row[j] = -row[j]
            b = -b
        row[n + m_ub + i] = Fraction(1)
        row[total] = b
    basis = [n + m_ub + i for i in range(m)]

    phase1 = [Fraction(0)] * total + [Fraction(0)]
    for j in range(n + m_ub, total):
        phase1[j] = Fraction(1)
    _price_out(phase1, tableau, basis)
    _iterate(phase1, tableau, basis, total)
    if -phase1[total] != 0:
        raise InternalError("linear program is infeasible")
    _expel_artificials(tableau, basis, n + m_ub, total)

    phase2 = list(c) + [Fraction(0)] * (m_ub + m) + [Fraction(0)]
    _price_out(phase2, tableau, basis)
    artificial_floor = n + m_ub
    _iterate(phase2, tableau, basis, total, forbidden_floor=artificial_floor)
    solution = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            solution[var] = tableau[i][total]
    return -phase2[total], solution


def _price_out(obj: list[Fraction], tableau: list[list[Fraction]], basis: list[int]) -> None:
    # Express the objective through non-basic variables.  The last entry then
    # holds the negated objective value, the classic z-row convention, which
    # stays consistent under the same row operations as any tableau row.
    for i, var in enumerate(basis):
        coef = obj[var]
        if coef != 0:
            row = tableau[i]
            for j in range(len(obj)):
                obj[j] -= coef * row[j]


def _iterate(
    obj: list[Fraction],
    tableau: list[list[Fraction]],
    basis: list[int],
    total: int,
    forbidden_floor: int | None = None,
) -> None:
    while True:
        entering = -1
        for j in range(total):
            if forbidden_floor is not None and j >= forbidden_floor:
                break
            if obj[j] < 0:
                entering = j
                break
        if entering < 0:
            return
        leaving, best = -1, None
        for i, row in enumerate(tableau):
            if row[entering] > 0:
                ratio = row[total] / row[entering]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leaving]
                ):
                    leaving, best = i, ratio
        if leaving < 0:
            raise InternalError("linear program is unbounded")
        _pivot(obj, tableau, basis, leaving, entering)


def _pivot(
    obj: list[Fraction],
    tableau: list[list[Fraction]],
    basis: list[int],
    row_i: int,
    col: int,
) -> None:
    row = tableau[row_i]
    inv = Fraction(1) / row[col]
    for j in range(len(row)):
        row[j] *= inv
    for other in tableau:
        if other is not row and other[col] != 0:
            coef = other[col]
            for j in range(len(row)):
                other[j] -= coef * row[j]
    coef = obj[col]
    if coef != 0:
        for j in range(len(row)):
            obj[j] -= coef * row[j]
    basis[row_i] = col


def _expel_artificials(
    tableau: list[list[Fraction]], basis: list[int], artificial_floor: int, total: int
) -> None:
    # A basic artificial at zero either pivots out on any eligible column or
    # marks a redundant row that can stay (it is all zeros outside artificials).
    dummy = [Fraction(0)] * (total + 1)
    for i, var in enumerate(basis):
        if var >= artificial_floor:
            for j in range(artificial_floor):
                if tableau[i][j] != 0:
                    _pivot(dummy, tableau, basis, i, j)
                    break


# ---------------------------------------------------------------------------
# integer allocation
# ---------------------------------------------------------------------------


def solve_int_alloc(
    targets: Sequence[Rational], total: int, minimum: int = 1
) -> list[int]:
    """Integer shares >= minimum summing to ``total``, L1-closest to targets.

    Deterministic: among all optimal allocations the lexicographically
    smallest is returned.
    """
    qs = [as_fraction(t) for t in targets]
    n = len(qs)
    if n == 0:
        raise ValidationError("no allocation slots")
    for i, q in enumerate(qs):
        if q <= 0:
            raise ValidationError(f"target {i} is {q}, must be positive")
    if total < minimum * n:
        raise ValidationError(
            f"cannot give {n} slots at least {minimum} each out of {total} units"
        )
    shares = _largest_remainder(qs, total, minimum)
    _exchange_to_optimum(shares, qs, minimum)
    opt = _cost(shares, qs)

    # Pin coordinates left to right to the smallest value that still admits
    # an optimal completion; certified by the greedy minimum-cost oracle.
    result: list[int] = []
    remaining = total
    prefix = Fraction(0)
    for i in range(n - 1):
        floor_rest = minimum * (n - 1 - i)
        for v in range(minimum, remaining - floor_rest + 1):
            rest = _min_cost(qs[i + 1 :], remaining - v, minimum)
            if prefix + abs(Fraction(v) - qs[i]) + rest == opt:
                result.append(v)
                prefix += abs(Fraction(v) - qs[i])
                remaining -= v
                break
        else:
            raise InternalError("optimal completion lost during refinement")
    result.append(remaining)
    if _cost(result, qs) != opt:
        raise InternalError("refined allocation is not optimal")
    return result


def _cost(shares: Sequence[int], qs: Sequence[Fraction]) -> Fraction:
    return sum((abs(Fraction(s) - q) for s, q in zip(shares, qs)), Fraction(0))


def _largest_remainder(qs: list[Fraction], total: int, minimum: int) -> list[int]:
    shares = [max(minimum, int(q)) for q in qs]
    order = sorted(range(len(qs)), key=lambda i: (-(qs[i] - int(qs[i])), i))
    surplus = total - sum(shares)
    idx = 0
    while surplus > 0:
        shares[order[idx % len(order)]] += 1
        surplus -= 1
        idx += 1
    while surplus < 0:
        # Initial floors overshot (many sub-minimum targets); take back units
        # where the loss is smallest.
        best = min(
            (i for i in range(len(qs)) if shares[i] > minimum),
            key=lambda i: (abs(Fraction(shares[i] - 1) - qs[i]) - abs(Fraction(shares[i]) - qs[i]), i),
        )
        shares[best] -= 1
        surplus += 1
    return shares


def _exchange_to_optimum(shares: list[int], qs: list[Fraction], minimum: int) -> None:
    n = len(qs)
    while True:
        best_delta = Fraction(0)
        best_move = None
        for i in range(n):
            if shares[i] <= minimum:
                continue
            drop = abs(Fraction(shares[i] - 1) - qs[i]) - abs(Fraction(shares[i]) - qs[i])
            for j in range(n):
                if i == j:
                    continue
                gain = abs(Fraction(shares[j] + 1) - qs[j]) - abs(Fraction(shares[j]) - qs[j])
                delta = drop + gain
                if delta < best_delta:
                    best_delta = delta
                    best_move = (i, j)
        if best_move is None:
            return
        i, j = best_move
        shares[i] -= 1
        shares[j] += 1


def _min_cost(qs: Sequence[Fraction], units: int, minimum: int) -> Fraction:
    """Optimal cost of allocating ``units`` over ``qs`` (greedy marginals)."""
    n = len(qs)
    if n == 0:
        return Fraction(0) if units == 0 else Fraction(10**12)
    if units < minimum * n:
        return Fraction(10**12)  # infeasible sentinel, larger than any real cost
    shares = [minimum] * n
    heap: list[tuple[Fraction, int, int]] = []
    for i, q in enumerate(qs):
        delta = abs(Fraction(minimum + 1) - q) - abs(Fraction(minimum) - q)
        heapq.heappush(heap, (delta, i, minimum))
    for _ in range(units - minimum * n):
        delta, i, s = heapq.heappop(heap)
        shares[i] = s + 1
        nxt = abs(Fraction(s + 2) - qs[i]) - abs(Fraction(s + 1) - qs[i])
        heapq.heappush(heap, (nxt, i, s + 1))
    return _cost(shares, qs)

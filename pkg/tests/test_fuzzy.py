"""Level-map fuzzy numbers: exact examples, properties, and the grid oracle.

Expected values in the example tests were derived by hand from the cut
interpolation rule and frozen here; the oracle comparisons then confirm the
same numbers through an independent sup-min route.
"""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from docit2.errors import LevelSetError, NestingError, ValidationError, WeightError
from docit2.fuzzy import (
    Interval,
    PiecewiseMF,
    add,
    alpha_cut,
    compress,
    evaluate,
    knots,
    level_bracket,
    merge_levels,
    scale,
    structurally_equal,
    weighted_average,
)
from docit2.oracle import extension_oracle, flank_slope_bound


def three_level_mf() -> PiecewiseMF:
    return PiecewiseMF.from_cuts({0.0: (0.0, 8.0), 0.4: (2.0, 6.0), 1.0: (4.0, 4.0)})


# -- construction and validation ------------------------------------------


def test_rejects_missing_unit_level():
    with pytest.raises(LevelSetError):
        PiecewiseMF.from_cuts({0.0: (0.0, 1.0), 0.5: (0.2, 0.8)})


def test_rejects_non_nested_cuts():
    with pytest.raises(NestingError):
        PiecewiseMF.from_cuts({0.0: (0.0, 1.0), 1.0: (-0.5, 0.5)})


def test_rejects_inverted_interval():
    with pytest.raises(NestingError):
        Interval(2.0, 1.0)


def test_merge_levels_keeps_exact_endpoints():
    merged = merge_levels((0.0, 0.4, 1.0), (0.0, 0.4 + 1e-12, 0.7, 1.0))
    assert merged == (0.0, 0.4, 0.7, 1.0)


# -- alpha_cut --------------------------------------------------------------


def test_alpha_cut_stored_level_is_exact():
    mf = three_level_mf()
    assert alpha_cut(mf, 0.4) == Interval(2.0, 6.0)


def test_alpha_cut_interpolates_between_levels():
    # At 0.7, halfway between stored 0.4 and 1.0: [2,6] -> [4,4] gives [3,5].
    mf = three_level_mf()
    cut = alpha_cut(mf, 0.7)
    assert cut.lo == pytest.approx(3.0, abs=1e-12)
    assert cut.hi == pytest.approx(5.0, abs=1e-12)


def test_alpha_cut_triangular_midlevel():
    mf = PiecewiseMF.triangular(0.0, 0.5, 1.0)
    cut = alpha_cut(mf, 0.5)
    assert (cut.lo, cut.hi) == (0.25, 0.75)


def test_alpha_cut_rejects_level_outside_unit_interval():
    with pytest.raises(ValidationError):
        alpha_cut(three_level_mf(), 1.5)


# -- evaluate ---------------------------------------------------------------


def test_evaluate_on_left_flank():
    assert evaluate(three_level_mf(), 3.0) == pytest.approx(0.7, abs=1e-12)


def test_evaluate_support_and_core_are_exact():
    mf = three_level_mf()
    assert evaluate(mf, -0.0001) == 0.0
    assert evaluate(mf, 8.0001) == 0.0
    assert evaluate(mf, 4.0) == 1.0


def test_evaluate_at_jump_returns_upper_value():
    # Left endpoints of the 0.4 and 1.0 cuts coincide: vertical jump at x=1.
    mf = PiecewiseMF.from_cuts({0.0: (0.0, 3.0), 0.4: (1.0, 2.0), 1.0: (1.0, 1.0)})
    assert evaluate(mf, 1.0) == 1.0


def test_evaluate_rectangular_is_indicator():
    mf = PiecewiseMF.rectangular(0.25, 0.75)
    assert evaluate(mf, 0.25) == 1.0
    assert evaluate(mf, 0.24999) == 0.0


# -- level_bracket ----------------------------------------------------------


def test_level_bracket_three_cases():
    mf = three_level_mf()
    grid = mf.levels
    assert level_bracket(mf, grid, 9.0) == (0.0, 0.0)
    assert level_bracket(mf, grid, 4.0) == (1.0, 1.0)
    assert level_bracket(mf, grid, 3.0) == (0.4, 1.0)


def test_level_bracket_refined_grid_tightens():
    mf = three_level_mf()
    assert level_bracket(mf, (0.0, 0.4, 0.7, 1.0), 3.0) == (0.7, 1.0)


def test_level_bracket_requires_refining_grid():
    with pytest.raises(LevelSetError):
        level_bracket(three_level_mf(), (0.0, 1.0), 3.0)


def test_level_bracket_contains_membership():
    mf = three_level_mf()
    for x in np.linspace(-1.0, 9.0, 101):
        lo, hi = level_bracket(mf, mf.levels, float(x))
        mu = evaluate(mf, float(x))
        assert lo - 1e-12 <= mu <= hi + 1e-12


# -- arithmetic -------------------------------------------------------------


def test_add_merges_levels_and_sums_cuts():
    a = three_level_mf()
    b = PiecewiseMF.from_cuts({0.0: (1.0, 3.0), 1.0: (2.0, 2.0)})
    out = add(a, b)
    assert out.levels == (0.0, 0.4, 1.0)
    # B interpolates to [1.4, 2.6] at 0.4, so the sum cut is [3.4, 8.6].
    assert alpha_cut(out, 0.0) == Interval(1.0, 11.0)
    assert alpha_cut(out, 0.4).lo == pytest.approx(3.4, abs=1e-12)
    assert alpha_cut(out, 0.4).hi == pytest.approx(8.6, abs=1e-12)
    assert alpha_cut(out, 1.0) == Interval(6.0, 6.0)


def test_scale_shrinks_every_cut():
    out = scale(0.25, three_level_mf())
    assert alpha_cut(out, 0.0) == Interval(0.0, 2.0)
    assert alpha_cut(out, 1.0) == Interval(1.0, 1.0)


def test_scale_rejects_nonpositive_factor():
    with pytest.raises(ValidationError):
        scale(0.0, three_level_mf())


def test_weighted_average_of_two_triangles():
    a = PiecewiseMF.triangular(0.0, 0.0, 0.5)
    b = PiecewiseMF.triangular(0.5, 1.0, 1.0)
    out = weighted_average([a, b], [0.5, 0.5])
    assert alpha_cut(out, 0.0) == Interval(0.25, 0.75)
    assert alpha_cut(out, 1.0) == Interval(0.5, 0.5)


def test_weighted_average_rejects_escaping_support():
    a = PiecewiseMF.triangular(0.0, 0.5, 1.5)
    b = PiecewiseMF.triangular(0.0, 0.5, 1.0)
    with pytest.raises(ValidationError):
        weighted_average([a, b], [0.5, 0.5])


def test_weighted_average_rejects_bad_weights():
    a = PiecewiseMF.triangular(0.0, 0.5, 1.0)
    with pytest.raises(WeightError):
        weighted_average([a, a], [0.7, 0.4])


# -- compress and structural equality --------------------------------------


def test_compress_removes_interpolant_level():
    mf = PiecewiseMF.from_cuts({0.0: (0.0, 8.0), 0.5: (2.0, 6.0), 1.0: (4.0, 4.0)})
    out = compress(mf)
    assert out.levels == (0.0, 1.0)
    assert structurally_equal(out, mf)


def test_compress_keeps_essential_level():
    mf = three_level_mf()  # 0.4 cut is not the linear interpolant
    assert compress(mf).levels == (0.0, 0.4, 1.0)


# -- serialization ----------------------------------------------------------


def test_json_round_trip_is_bit_stable():
    mf = PiecewiseMF.from_cuts({0.0: (0.1, 0.9), 1.0 / 3.0: (0.2, 0.7), 1.0: (0.4, 0.4)})
    back = PiecewiseMF.from_dict(json.loads(mf.to_json()))
    assert back.levels == mf.levels
    assert back.cuts == mf.cuts


def test_from_dict_rejects_mismatched_keys():
    with pytest.raises(LevelSetError):
        PiecewiseMF.from_dict({"levels": [0.0, 1.0], "cuts": {"0.0": [0, 1], "0.5": [0, 1]}})


def test_from_dict_rejects_list_shaped_cuts():
    # cuts must be a level-keyed mapping, not a parallel list
    with pytest.raises(ValidationError, match="malformed"):
        PiecewiseMF.from_dict({"levels": [0.0, 1.0], "cuts": [[0, 1], [0.5, 0.5]]})


# -- random generation for properties ---------------------------------------

from strategies import piecewise_mfs


@given(piecewise_mfs(), st.floats(0.0, 1.0))
def test_alpha_cut_nesting_property(mf, level):
    inner = alpha_cut(mf, level)
    assert inner.lo >= mf.support.lo - 1e-9
    assert inner.hi <= mf.support.hi + 1e-9
    deeper = alpha_cut(mf, min(1.0, level + 0.1))
    assert deeper.lo >= inner.lo - 1e-9
    assert deeper.hi <= inner.hi + 1e-9


@given(piecewise_mfs(), piecewise_mfs())
def test_add_alpha_cut_identity_property(a, b):
    out = add(a, b)
    for lv in out.levels:
        ca, cb, co = alpha_cut(a, lv), alpha_cut(b, lv), alpha_cut(out, lv)
        assert abs(co.lo - (ca.lo + cb.lo)) <= 1e-12
        assert abs(co.hi - (ca.hi + cb.hi)) <= 1e-12


@given(piecewise_mfs())
def test_compress_preserves_cuts(mf):
    # The contract is cut-space: every original level still interpolates to
    # the same interval within the compression tolerance.
    out = compress(mf)
    assert out.levels[0] == 0.0 and out.levels[-1] == 1.0
    assert structurally_equal(out, mf)


def test_compress_keeps_membership_curve_when_flanks_are_wide():
    mf = PiecewiseMF.from_cuts(
        {0.0: (0.0, 8.0), 0.5: (2.0 + 4e-13, 6.0), 1.0: (4.0, 4.0)}
    )
    out = compress(mf)
    assert out.levels == (0.0, 1.0)
    for x in np.linspace(-0.5, 8.5, 91):
        assert abs(evaluate(out, float(x)) - evaluate(mf, float(x))) <= 1e-12


@given(piecewise_mfs())
def test_json_round_trip_property(mf):
    back = PiecewiseMF.from_dict(json.loads(mf.to_json()))
    assert back == mf


@settings(max_examples=30, deadline=None)
@given(piecewise_mfs(min_flank=0.6), piecewise_mfs(min_flank=0.6))
def test_oracle_matches_exact_sum(a, b):
    step = 1e-2
    zs, degrees = extension_oracle(a, b, "sum", step)
    bound = max(flank_slope_bound(a), flank_slope_bound(b)) * step
    worst = max(
        abs(evaluate(add(a, b), float(z)) - float(d)) for z, d in zip(zs, degrees)
    )
    assert worst <= bound + 1e-9


def test_oracle_product_agrees_with_scale():
    mf = three_level_mf()
    factor = 1.5
    zs, degrees = extension_oracle(mf, PiecewiseMF.point(factor), "product", 1e-2)
    scaled = scale(factor, mf)
    worst = max(
        abs(evaluate(scaled, float(z)) - float(d)) for z, d in zip(zs, degrees)
    )
    assert worst <= flank_slope_bound(scaled) * 1e-2 + 1e-9


def test_knots_trace_the_polyline():
    mf = three_level_mf()
    assert knots(mf) == [
        (0.0, 0.0),
        (2.0, 0.4),
        (4.0, 1.0),
        (6.0, 0.4),
        (8.0, 0.0),
    ]


def test_weighted_average_fsum_is_permutation_invariant():
    mfs = [
        PiecewiseMF.triangular(0.0, 0.1, 0.3),
        PiecewiseMF.triangular(0.2, 0.5, 0.8),
        PiecewiseMF.triangular(0.6, 0.9, 1.0),
    ]
    weights = [6 / 11, 4 / 11, 1 / 11]
    fwd = weighted_average(mfs, weights)
    rev = weighted_average(mfs[::-1], weights[::-1])
    assert fwd.levels == rev.levels
    assert fwd.cuts == rev.cuts


def test_evaluate_matches_fsum_midpoints():
    # Spot-check membership against direct linear algebra on a dense grid.
    mf = three_level_mf()
    for x, expected in [(1.0, 0.2), (5.0, 0.7), (7.0, 0.2)]:
        assert evaluate(mf, x) == pytest.approx(expected, abs=1e-12)
    assert math.isclose(evaluate(mf, 2.0), 0.4, abs_tol=1e-12)

"""Brute-force extension-principle oracle on rasterized supports.

The level-wise arithmetic in :mod:`docit2.fuzzy` is exact; this module
recomputes the same operations the slow way, as a sup-min scan over a grid,
so tests can compare two independent routes.  Accuracy is bounded by the
flank slopes times the grid step.  Not meant for production use.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .fuzzy import PiecewiseMF, evaluate, knots


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    if hi <= lo:
        return np.array([lo])
    n = int(np.ceil((hi - lo) / step)) + 1
    return np.linspace(lo, hi, n)


def _memberships(mf: PiecewiseMF, xs: np.ndarray) -> np.ndarray:
    pts = knots(mf)
    kx = np.array([p[0] for p in pts])
    if np.any(np.diff(kx) <= 0.0):
        # Vertical jumps duplicate abscissas, which np.interp resolves to the
        # wrong side; fall back to the exact scalar evaluation.
        return np.array([evaluate(mf, float(x)) for x in xs])
    ky = np.array([p[1] for p in pts])
    return np.interp(xs, kx, ky, left=0.0, right=0.0)


def extension_oracle(
    a: PiecewiseMF,
    b: PiecewiseMF,
    op: str = "sum",
    grid_step: float = 1e-2,
) -> tuple[np.ndarray, np.ndarray]:
    """Sup-min combination of two membership functions over a grid.

    Parameters
    ----------
    op:
        ``"sum"`` maximizes min(a(x), b(z - x)) over rasterized x for every z
        on a grid of the summed supports; ``"product"`` accumulates over the
        distinct pairwise products of the two support grids.
    grid_step:
        Rasterization step for the supports and, for sums, the result axis.

    Returns
    -------
    (zs, degrees):
        Result abscissas and the sup-min membership found at each.
    """
    if grid_step <= 0:
        raise ValidationError(f"grid step must be positive, got {grid_step}")
    xs = _grid(a.support.lo, a.support.hi, grid_step)
    if op == "sum":
        zs = _grid(
            a.support.lo + b.support.lo, a.support.hi + b.support.hi, grid_step
        )
        mu_x = _memberships(a, xs)
        mu_b_at = _memberships(b, (zs[None, :] - xs[:, None]).ravel())
        pair = np.minimum(mu_x[:, None], mu_b_at.reshape(len(xs), len(zs)))
        return zs, pair.max(axis=0)
    if op == "product":
        ys = _grid(b.support.lo, b.support.hi, grid_step)
        pair = np.minimum(
            _memberships(a, xs)[:, None], _memberships(b, ys)[None, :]
        )
        zs, inverse = np.unique((xs[:, None] * ys[None, :]).ravel(), return_inverse=True)
        degrees = np.zeros(len(zs))
        np.maximum.at(degrees, inverse, pair.ravel())
        return zs, degrees
    raise ValidationError(f"unsupported oracle operation {op!r}")


def flank_slope_bound(mf: PiecewiseMF) -> float:
    """Largest finite absolute slope of the membership curve.

    Tests use this to turn the grid step into a rigorous tolerance for
    comparing the oracle against exact arithmetic.
    """
    worst = 0.0
    pts = knots(mf)
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if x1 - x0 > 0:
            worst = max(worst, abs(y1 - y0) / (x1 - x0))
    return worst

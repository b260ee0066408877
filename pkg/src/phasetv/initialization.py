"""Fill the unknown region by propagating zero-difference extrapolations.

Every difference filter has stencil configurations in which exactly one
pixel is unknown; setting that pixel so the wrapped difference vanishes
extends the known data without creating new energy.  Second differences
extrapolate linear trends (the natural companion of the second-order
regularizer), so they are preferred over the mixed difference, which is
preferred over plain first-order copying.

The scan runs raster sweeps over the still-unfilled pixels, alternating
forward and backward, until a sweep makes no progress.  Within one sweep
every fill is computed against the state at sweep start, so a band or
disc grows inward one layer per sweep from all of its boundaries instead
of cascading across from whichever side the scan happens to reach first;
the nearest data wins, which keeps the start of the solver close to the
data on every side.  Pixels that no active stencil can reach (an unknown
component with no known contact) are left at 0.
"""

from __future__ import annotations

import numpy as np

from .circle import wrap
from .model import Weights, _check_mask

# (offsets, kind) per difference type, in fill preference order; offsets
# are (row, col) displacements from the leading pixel.
_H2 = ((0, 0), (0, 1), (0, 2))
_V2 = ((0, 0), (1, 0), (2, 0))
_MIX = ((0, 0), (1, 0), (0, 1), (1, 1))
_H1 = ((0, 0), (0, 1))
_V1 = ((0, 0), (1, 0))
_D1 = ((0, 0), (1, 1))
_A1 = ((0, 1), (1, 0))


def _fill_first(values, t):
    return values[1 - t]


def _fill_second(values, t):
    if t == 0:
        return wrap(2.0 * values[1] - values[2])
    if t == 2:
        return wrap(2.0 * values[1] - values[0])
    # Center pixel: two zero-difference solutions half a turn apart;
    # take the one closer to the left/top neighbor, first on a tie.
    cand = wrap(0.5 * (values[0] + values[2]))
    alt = wrap(cand + np.pi)
    if abs(wrap(cand - values[0])) <= abs(wrap(alt - values[0])):
        return cand
    return alt


def _fill_mixed(values, t):
    v = values
    if t == 0:
        return wrap(v[1] + v[2] - v[3])
    if t == 1:
        return wrap(v[0] - v[2] + v[3])
    if t == 2:
        return wrap(v[0] - v[1] + v[3])
    return wrap(v[1] + v[2] - v[0])


def _active_kinds(weights: Weights, n_rows: int, n_cols: int):
    a1, a2, a3, a4 = weights.alpha
    b1, b2 = weights.beta
    table = (
        (_H2, _fill_second, b1, 1, 3),
        (_V2, _fill_second, b2, 3, 1),
        (_MIX, _fill_mixed, weights.gamma, 2, 2),
        (_H1, _fill_first, a1, 1, 2),
        (_V1, _fill_first, a2, 2, 1),
        (_D1, _fill_first, a3, 2, 2),
        (_A1, _fill_first, a4, 2, 2),
    )
    kinds = []
    for offsets, solve, weight, need_rows, need_cols in table:
        if weight > 0.0 and n_rows >= need_rows and n_cols >= need_cols:
            kinds.append((offsets, solve))
    return kinds


def _try_fill(r, c, kinds, x, filled, n_rows, n_cols):
    for offsets, solve in kinds:
        # Positions of (r, c) within the stencil, leading placement
        # leftmost/topmost first so trends propagate along the sweep.
        for t in range(len(offsets) - 1, -1, -1):
            r0 = r - offsets[t][0]
            c0 = c - offsets[t][1]
            values = []
            ok = True
            for u, (dr, dc) in enumerate(offsets):
                ru, cu = r0 + dr, c0 + dc
                if not (0 <= ru < n_rows and 0 <= cu < n_cols):
                    ok = False
                    break
                if u != t:
                    if not filled[ru, cu]:
                        ok = False
                        break
                    values.append(x[ru, cu])
                else:
                    values.append(None)
            if ok:
                return solve(values, t)
    return None


def initialize(f, mask, weights: Weights) -> np.ndarray:
    """Return an image equal to ``f`` on known pixels with the unknown
    region filled by zero-difference propagation."""
    f = np.asarray(f, dtype=float)
    if f.ndim != 2:
        raise ValueError("expected a 2-D image")
    known = _check_mask(f.shape, mask)
    n_rows, n_cols = f.shape

    x = np.where(known, f, 0.0)
    filled = known.copy()
    kinds = _active_kinds(weights, n_rows, n_cols)
    pending = [(int(r), int(c)) for r, c in zip(*np.nonzero(~known))]

    forward = True
    while pending:
        remaining = []
        fills = []
        scan = pending if forward else reversed(pending)
        for r, c in scan:
            value = _try_fill(r, c, kinds, x, filled, n_rows, n_cols)
            if value is None:
                remaining.append((r, c))
            else:
                fills.append((r, c, value))
        if not fills:
            break
        for r, c, value in fills:
            x[r, c] = value
            filled[r, c] = True
        remaining.sort()
        pending = remaining
        forward = not forward
    return x

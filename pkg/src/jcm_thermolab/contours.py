"""Marching-squares extraction of level sets from a scalar grid.

Cells are classified by which corners sit at or above the level; crossing
points are placed on cell edges by linear interpolation, and the resulting
segments are chained into polylines.  Crossings are keyed by the grid edge
they live on, so chaining is exact (no floating-point point matching).
Saddle cells (two opposite corners above the level) are disambiguated by
the cell-center average.  Closed contours repeat their first point at the
end; open contours terminate on the grid boundary.
"""

from __future__ import annotations

from collections import defaultdict

import numpy as np

__all__ = ["marching_squares"]

# Segment table indexed by the 4-bit corner pattern
# bit0 = (i, j), bit1 = (i+1, j), bit2 = (i+1, j+1), bit3 = (i, j+1),
# a bit is set when the corner value is >= level.  Entries are pairs of
# local edge ids: 0 bottom (j), 1 top (j+1), 2 left (i), 3 right (i+1).
_B, _T, _L, _R = 0, 1, 2, 3
_SEGMENTS = {
    0: [],
    1: [(_B, _L)],
    2: [(_B, _R)],
    3: [(_L, _R)],
    4: [(_T, _R)],
    6: [(_B, _T)],
    7: [(_L, _T)],
    8: [(_L, _T)],
    9: [(_B, _T)],
    11: [(_T, _R)],
    12: [(_L, _R)],
    13: [(_B, _R)],
    14: [(_B, _L)],
    15: [],
}
# cases 5 (corners 0 and 2) and 10 (corners 1 and 3) depend on the center:
# center >= level joins the two inside corners, otherwise it separates them.
_SADDLE = {
    5: {True: [(_B, _R), (_L, _T)], False: [(_B, _L), (_T, _R)]},
    10: {True: [(_B, _L), (_T, _R)], False: [(_B, _R), (_L, _T)]},
}


def _edge_key(i: int, j: int, local: int):
    # global edge id: (axis, i, j) with axis 0 = edge (i,j)-(i+1,j) and
    # axis 1 = edge (i,j)-(i,j+1)
    if local == _B:
        return (0, i, j)
    if local == _T:
        return (0, i, j + 1)
    if local == _L:
        return (1, i, j)
    return (1, i + 1, j)


def marching_squares(x, y, values, level: float) -> list[np.ndarray]:
    """Extract the `values == level` curves from a rectilinear grid.

    Parameters
    ----------
    x : (nx,) array
        Coordinates along the first grid axis.
    y : (ny,) array
        Coordinates along the second grid axis.
    values : (nx, ny) array
        Scalar field sampled at the grid nodes; must be finite.
    level : float
        Iso-level to extract.

    Returns
    -------
    list of (m, 2) arrays
        Polylines of (x, y) points.  Empty list when the level is never
        crossed.  Deterministic ordering for identical inputs.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    values = np.asarray(values, dtype=float)
    if x.ndim != 1 or y.ndim != 1 or values.shape != (x.size, y.size):
        raise ValueError(
            f"shape mismatch: values {values.shape} vs grid ({x.size}, {y.size})"
        )
    if x.size < 2 or y.size < 2:
        raise ValueError("grid must have at least 2 points per axis")
    if not np.all(np.isfinite(values)):
        raise ValueError("grid values must be finite")

    inside = values >= level

    points: dict[tuple, tuple[float, float]] = {}

    def crossing(key) -> tuple[float, float]:
        pt = points.get(key)
        if pt is not None:
            return pt
        axis, i, j = key
        if axis == 0:
            v0, v1 = values[i, j], values[i + 1, j]
            t = (level - v0) / (v1 - v0)
            pt = (x[i] + t * (x[i + 1] - x[i]), y[j])
        else:
            v0, v1 = values[i, j], values[i, j + 1]
            t = (level - v0) / (v1 - v0)
            pt = (x[i], y[j] + t * (y[j + 1] - y[j]))
        points[key] = pt
        return pt

    adjacency: dict[tuple, list[tuple]] = defaultdict(list)
    for i in range(x.size - 1):
        for j in range(y.size - 1):
            case = (
                int(inside[i, j])
                | int(inside[i + 1, j]) << 1
                | int(inside[i + 1, j + 1]) << 2
                | int(inside[i, j + 1]) << 3
            )
            if case in _SADDLE:
                center = 0.25 * (
                    values[i, j] + values[i + 1, j] + values[i + 1, j + 1] + values[i, j + 1]
                )
                segments = _SADDLE[case][bool(center >= level)]
            else:
                segments = _SEGMENTS[case]
            for e1, e2 in segments:
                k1, k2 = _edge_key(i, j, e1), _edge_key(i, j, e2)
                adjacency[k1].append(k2)
                adjacency[k2].append(k1)

    used: set[frozenset] = set()

    def walk(start) -> list[tuple]:
        path = [start]
        current = start
        while True:
            step = None
            for neighbor in adjacency[current]:
                link = frozenset((current, neighbor))
                if link not in used:
                    used.add(link)
                    step = neighbor
                    break
            if step is None:
                return path
            path.append(step)
            current = step

    polylines: list[np.ndarray] = []
    keys = sorted(adjacency.keys())
    # open curves first (boundary-terminated), then the remaining loops
    for key in keys:
        if len(adjacency[key]) == 1:
            path = walk(key)
            if len(path) > 1:
                polylines.append(np.array([crossing(k) for k in path]))
    for key in keys:
        if any(frozenset((key, nb)) not in used for nb in adjacency[key]):
            path = walk(key)
            if len(path) > 1:
                polylines.append(np.array([crossing(k) for k in path]))
    return polylines

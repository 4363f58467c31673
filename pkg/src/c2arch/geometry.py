"""Planar primitives: points, disks, nearest-neighbour assignment, packing.

Point collections are ``(n, 2)`` float arrays throughout the package; the
``Point2D`` tuple exists for single points and for readability at call sites.
"""

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import NamedTuple

import numpy as np

REL_TOL = 1e-9
_CHUNK = 2048


class Point2D(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Disk:
    center: Point2D = Point2D(0.0, 0.0)
    radius: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", Point2D(*map(float, self.center)))
        if not np.isfinite(self.radius) or self.radius < 0:
            raise ValueError(f"invalid disk radius {self.radius}")

    @property
    def area(self) -> float:
        return np.pi * self.radius**2

    def contains(self, points, rel_tol: float = REL_TOL):
        """Boolean mask of points inside the closed disk (with slack)."""
        p = np.atleast_2d(np.asarray(points, dtype=float))
        d = np.hypot(p[:, 0] - self.center.x, p[:, 1] - self.center.y)
        return d <= self.radius * (1 + rel_tol) + 1e-12


def distance(p, q) -> float:
    return float(np.hypot(p[0] - q[0], p[1] - q[1]))


def nearest_index(p, candidates) -> int:
    """Index of the closest candidate; ties go to the lowest index."""
    c = np.asarray(candidates, dtype=float).reshape(-1, 2)
    if len(c) == 0:
        raise ValueError("no candidates")
    d2 = (c[:, 0] - p[0]) ** 2 + (c[:, 1] - p[1]) ** 2
    return int(np.argmin(d2))


def nearest_indices(points, candidates) -> np.ndarray:
    """Vectorised ``nearest_index`` for every row of ``points``."""
    p = np.asarray(points, dtype=float).reshape(-1, 2)
    c = np.asarray(candidates, dtype=float).reshape(-1, 2)
    if len(c) == 0:
        raise ValueError("no candidates")
    out = np.empty(len(p), dtype=np.intp)
    for s in range(0, len(p), _CHUNK):
        blk = p[s : s + _CHUNK]
        d2 = (blk[:, None, 0] - c[None, :, 0]) ** 2 + (blk[:, None, 1] - c[None, :, 1]) ** 2
        out[s : s + _CHUNK] = np.argmin(d2, axis=1)
    return out


# ---------------------------------------------------------------------------
# circle packing in a circle


@lru_cache(maxsize=1)
def _layouts():
    raw = json.loads(resources.files("c2arch").joinpath("data/packings.json").read_text())
    table = {}
    for key, entry in raw.items():
        c = _canonical(np.asarray(entry["centers"], dtype=float).reshape(-1, 2))
        table[int(key)] = (float(np.max(np.hypot(c[:, 0], c[:, 1]))) + 1.0, c)
    return dict(sorted(table.items()))


def _canonical(c):
    """Sort outermost-first, counter-clockwise, and rotate the first onto +x."""
    r = np.hypot(c[:, 0], c[:, 1])
    if np.max(r) < 1e-9:
        return np.zeros_like(c)
    ang = np.mod(np.arctan2(c[:, 1], c[:, 0]), 2 * np.pi)
    order = np.lexsort((np.round(ang, 9), -np.round(r, 7)))
    c = c[order]
    a0 = np.arctan2(c[0, 1], c[0, 0])
    rot = np.array([[np.cos(-a0), -np.sin(-a0)], [np.sin(-a0), np.cos(-a0)]])
    out = c @ rot.T
    out[0, 1] = 0.0
    return out


def packing_ratio_table() -> dict:
    """Enclosing-to-inner radius ratio of the embedded layout for each N."""
    return {n: ratio for n, (ratio, _) in _layouts().items()}


_HEX_OFFSETS = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0 / np.sqrt(3.0)))


def _hex_layout(ratio: float):
    """Largest hexagonal-lattice packing of unit disks inside radius ``ratio``."""
    reach = ratio - 1.0
    if reach < 0:
        return np.zeros((0, 2))
    m = int(np.ceil(reach / np.sqrt(3.0))) + 2
    i, j = np.meshgrid(np.arange(-m - 1, m + 2), np.arange(-m - 1, m + 2), indexing="ij")
    base = np.column_stack([(2 * i + j).ravel(), (np.sqrt(3.0) * j).ravel()]).astype(float)
    best = np.zeros((0, 2))
    for off in _HEX_OFFSETS:
        pts = base - np.asarray(off)
        keep = np.hypot(pts[:, 0], pts[:, 1]) <= reach * (1 + REL_TOL)
        if keep.sum() > len(best):
            best = pts[keep]
    r = np.hypot(best[:, 0], best[:, 1])
    ang = np.mod(np.arctan2(best[:, 1], best[:, 0]), 2 * np.pi)
    return best[np.lexsort((np.round(ang, 9), -np.round(r, 9)))]


def packing_count(outer_radius: float, inner_radius: float) -> int:
    return len(pack_disks(outer_radius, inner_radius))


def pack_disks(outer_radius: float, inner_radius: float) -> np.ndarray:
    """Centres of as many disjoint ``inner_radius`` disks as fit in the outer disk.

    Up to 50 disks the embedded near-optimal layouts are used: the count is
    the largest N whose layout ratio does not exceed ``outer/inner``. Beyond
    that a hexagonal lattice takes over whenever it holds more disks. The
    layout is centred on the origin and fully deterministic.

    Returns
    -------
    ndarray of shape (N, 2)
    """
    if not (inner_radius > 0 and outer_radius > 0):
        raise ValueError("radii must be positive")
    if inner_radius > outer_radius * (1 + REL_TOL):
        raise ValueError("cluster exceeds network")
    ratio = outer_radius / inner_radius
    table = _layouts()
    n_tab, layout = 1, table[1][1]
    for n, (r, c) in table.items():
        if r <= ratio * (1 + REL_TOL):
            n_tab, layout = n, c
    if ratio >= max(r for r, _ in table.values()):
        hexed = _hex_layout(ratio)
        if len(hexed) > n_tab:
            layout = hexed
    return layout * inner_radius

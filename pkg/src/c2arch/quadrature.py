"""Polar quadrature of the gain-density integral  I(x) = int_A f(|x - y|) rho(y) dy.

The region A is a disk, optionally with a disk-shaped hole, and rho is
piecewise constant on rings around the network centre. Along a ray from x
the integrand ``f(r) rho r`` is then piecewise of the form ``c * f(r) r``
between computable breakpoints (d0, d1 and the ray's crossings of every
circle involved), so the radial integral is evaluated exactly with the
antiderivative of ``f(r) r``. What remains is a one-dimensional periodic
integral over the ray angle. It is smooth except at a finite set of angles
(circle-circle intersections and tangents seen from x), which become panel
ends for an adaptive Gauss-Legendre rule with step-halving error estimates.
"""

import numpy as np

from .geometry import Disk
from .pathloss import ThreeSlopeParams, radial_antiderivative
from .sampling import DensityProfile

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(12)
MAX_PANELS = 200_000
MAX_ROUNDS = 60


class QuadratureError(RuntimeError):
    def __init__(self, message, estimate, error):
        super().__init__(f"{message} (estimate={estimate:.6g}, error={error:.3g})")
        self.estimate = estimate
        self.error = error


def _circle_hits(x, e, center, radius):
    """Distances along unit rays ``e`` (n, 2) from x to a circle; NaN if missed."""
    w = x - np.asarray(center, dtype=float)
    b = e @ w
    disc = b * b - (w @ w - radius * radius)
    root = np.sqrt(np.where(disc >= 0, disc, np.nan))
    return -b - root, -b + root


def _critical_angles(x, circles, pathloss):
    """Angles (seen from x) where the ray integrand may lose smoothness."""
    rings = list(circles) + [(tuple(x), pathloss.d0), (tuple(x), pathloss.d1)]
    angles = []
    for i, (c1, a1) in enumerate(circles):
        w = np.asarray(c1, dtype=float) - x
        s = np.hypot(*w)
        if s >= a1 * (1 - 1e-12) and s > 0:
            base = np.arctan2(w[1], w[0])
            half = np.arcsin(min(1.0, a1 / s))
            angles += [base - half, base + half]
        for c2, a2 in rings[i + 1 :]:
            for p in _circle_intersections(c1, a1, c2, a2):
                v = p - x
                if np.hypot(*v) > 1e-12:
                    angles.append(np.arctan2(v[1], v[0]))
    return angles


def _circle_intersections(c1, a1, c2, a2):
    c1 = np.asarray(c1, dtype=float)
    c2 = np.asarray(c2, dtype=float)
    d = np.hypot(*(c2 - c1))
    if d == 0 or d > a1 + a2 or d < abs(a1 - a2):
        return []
    along = (a1 * a1 - a2 * a2 + d * d) / (2 * d)
    h = np.sqrt(max(a1 * a1 - along * along, 0.0))
    u = (c2 - c1) / d
    mid = c1 + along * u
    perp = np.array([-u[1], u[0]])
    return [mid + h * perp, mid - h * perp]


class _RayIntegrand:
    def __init__(self, x, region, hole, density, network, pathloss):
        self.x = x
        self.region = region
        self.hole = hole
        self.density = density
        self.network = network
        self.pathloss = pathloss
        circles = [(region.center, region.radius)]
        if hole is not None and hole.radius > 0:
            circles.append((hole.center, hole.radius))
        if network is not None:
            inner, outer = density.ring_radii(network)
            circles += [(network.center, r) for r in outer]
        self.circles = circles

    def __call__(self, phi):
        e = np.column_stack([np.cos(phi), np.sin(phi)])
        cols = [np.zeros(len(phi)), np.full(len(phi), self.pathloss.d0), np.full(len(phi), self.pathloss.d1)]
        for c, a in self.circles:
            cols.extend(_circle_hits(self.x, e, c, a))
        b = np.column_stack(cols)
        b = np.where(np.isfinite(b) & (b > 0), b, 0.0)
        b.sort(axis=1)
        mid = 0.5 * (b[:, 1:] + b[:, :-1])
        pts = self.x[None, None, :] + mid[:, :, None] * e[:, None, :]
        flat = pts.reshape(-1, 2)
        weight = _inside(flat, self.region)
        if self.hole is not None:
            weight &= ~_inside(flat, self.hole)
        if self.network is not None:
            rho = self.density.density_at(flat, self.network)
        else:
            rho = np.full(len(flat), self.density.densities[0])
        weight = (weight * rho).reshape(mid.shape)
        g = radial_antiderivative(b, self.pathloss)
        return np.sum(weight * np.diff(g, axis=1), axis=1)


def _inside(points, disk):
    d = np.hypot(points[:, 0] - disk.center.x, points[:, 1] - disk.center.y)
    return d < disk.radius


def _gauss(func, a, b):
    """Gauss-Legendre estimates on whole panels and on their two halves."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    quarter = 0.5 * half
    nodes = np.concatenate(
        [
            mid[:, None] + half[:, None] * _NODES,
            (a + quarter)[:, None] + quarter[:, None] * _NODES,
            (mid + quarter)[:, None] + quarter[:, None] * _NODES,
        ],
        axis=1,
    )
    vals = func(nodes.ravel()).reshape(nodes.shape)
    n = len(_NODES)
    whole = half * (vals[:, :n] @ _WEIGHTS)
    halves = quarter * (vals[:, n : 2 * n] @ _WEIGHTS + vals[:, 2 * n :] @ _WEIGHTS)
    return halves, np.abs(halves - whole)


def adaptive_angle_integral(func, breaks, rel_tol, abs_tol=0.0):
    """Integrate a 2*pi-periodic function given panel breakpoints in angle."""
    breaks = np.unique(np.mod(np.asarray(breaks, dtype=float), 2 * np.pi))
    if len(breaks) == 0:
        breaks = np.array([0.0])
    edges = np.concatenate([breaks, [breaks[0] + 2 * np.pi]])
    # no panel wider than pi/8 so the first estimate already resolves the shape
    pieces = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        k = max(1, int(np.ceil((hi - lo) / (np.pi / 8))))
        pieces.append(np.linspace(lo, hi, k + 1))
    grid = np.unique(np.concatenate(pieces))
    a, b = grid[:-1], grid[1:]
    done_val = 0.0
    done_err = 0.0
    for _ in range(MAX_ROUNDS):
        val, err = _gauss(func, a, b)
        total = done_val + val.sum()
        tol = max(rel_tol * abs(total), abs_tol)
        if done_err + err.sum() <= tol:
            return total, done_err + err.sum()
        # panels already well below their share are frozen
        share = tol / (len(a) + 1)
        keep = err > 0.5 * share
        done_val += val[~keep].sum()
        done_err += err[~keep].sum()
        a, b = a[keep], b[keep]
        mid = 0.5 * (a + b)
        a, b = np.concatenate([a, mid]), np.concatenate([mid, b])
        if len(a) > MAX_PANELS:
            break
    raise QuadratureError("quadrature failure", float(total), float(done_err + err.sum()))


def integrate_gain(
    x,
    region: Disk,
    density: DensityProfile,
    pathloss: ThreeSlopeParams,
    rel_tol: float = 1e-8,
    network: Disk | None = None,
    hole: Disk | None = None,
) -> float:
    """Integral of f(|x - y|) * rho(y) over ``region`` (minus ``hole``).

    ``network`` anchors the rings of ``density`` and zeroes it outside the
    network disk; without it the density's single value is used everywhere.
    Raises ``QuadratureError`` if ``rel_tol`` cannot be met.
    """
    if not (1e-12 < rel_tol < 1e-2):
        raise ValueError("rel_tol must lie in (1e-12, 1e-2)")
    if network is None and len(density.densities) > 1:
        network = region
    if region.radius == 0 or not any(density.densities):
        return 0.0
    x = np.asarray(x, dtype=float)
    func = _RayIntegrand(x, region, hole, density, network, pathloss)
    breaks = _critical_angles(x, func.circles, pathloss)
    # absolute floor: a tiny fraction of what the whole plane would contribute
    scale = max(density.densities) * 2 * np.pi * pathloss.d1**-1.5 * pathloss.log_ratio
    value, _ = adaptive_angle_integral(func, breaks, rel_tol, abs_tol=1e-15 * scale)
    return float(value)

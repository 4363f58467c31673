"""Closed-form cluster capacity and the round-cluster capacity region.

The large-system capacity of a cluster is governed by the gain-density
integrals seen from one BS location x inside it::

    C(x) = log2[(n0/P + I_{D0}(x)) / (n0/P + I_{D0 \\ Dj}(x))]

and the cluster capacity equals C at some x in the cluster (mean-value
argument over the BS density). For a constant user density and the
three-slope gain, ``V(x) = 1 - I_{Dj}(x) / I_{D0}(x)`` and the bounds below
bracket the capacity of a round cluster of radius ``R_j``.
"""

from dataclasses import dataclass

import numpy as np

from .flags import UNBOUNDED
from .geometry import REL_TOL, Disk
from .pathloss import ThreeSlopeParams, plane_integral
from .quadrature import integrate_gain
from .sampling import DensityProfile

_UNIT = DensityProfile.constant(1.0)
DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class RegionPair:
    network: Disk
    cluster: Disk

    def __post_init__(self):
        off = np.hypot(
            self.cluster.center.x - self.network.center.x,
            self.cluster.center.y - self.network.center.y,
        )
        if self.cluster.radius > self.network.radius * (1 + REL_TOL):
            raise ValueError("cluster radius exceeds network radius")
        if off > self.network.radius * (1 + REL_TOL):
            raise ValueError("cluster centre lies outside the network")


@dataclass(frozen=True)
class BoundSet:
    cj_max_lower: float
    cj_min_lower: float
    vj_min_upper: float
    vj_max_upper: float
    q_value: float

    @property
    def mean(self) -> float:
        return 0.5 * (self.cj_max_lower + self.cj_min_lower)


def _check_inside(x, cluster):
    if not cluster.contains(np.asarray(x, dtype=float))[0]:
        raise ValueError("evaluation point lies outside the cluster disk")


def log_ratio(x, regions: RegionPair, density, pathloss, n0_over_p=0.0, rel_tol=DEFAULT_TOL):
    """Capacity formula at x without the inside-cluster precondition.

    The out-of-cluster integral is computed directly over the lune
    ``D0 \\ Dj``, never as a difference of two disk integrals.
    """
    net, cl = regions.network, regions.cluster
    full = integrate_gain(x, net, density, pathloss, rel_tol, network=net)
    if cl.radius == 0:
        return 0.0
    outside = integrate_gain(x, net, density, pathloss, rel_tol, network=net, hole=cl)
    den = n0_over_p + outside
    if den <= 0:
        return UNBOUNDED if full > 0 else 0.0
    return max(float(np.log2((n0_over_p + full) / den)), 0.0)


def theorem1_capacity(x, regions: RegionPair, density: DensityProfile, pathloss: ThreeSlopeParams,
                      n0_over_p: float = 0.0, rel_tol: float = DEFAULT_TOL):
    """Large-system capacity per BS evaluated at BS location ``x`` (bits/s/Hz).

    Returns ``UNBOUNDED`` when there is neither noise nor out-of-cluster
    user mass.
    """
    _check_inside(x, regions.cluster)
    return log_ratio(x, regions, density, pathloss, n0_over_p, rel_tol)


def corollary1_capacity(x, regions: RegionPair, pathloss: ThreeSlopeParams, rel_tol: float = DEFAULT_TOL):
    """Interference-limited capacity under constant user density (density cancels)."""
    return theorem1_capacity(x, regions, _UNIT, pathloss, 0.0, rel_tol)


def vj_of_x(x, regions: RegionPair, pathloss: ThreeSlopeParams, rel_tol: float = DEFAULT_TOL) -> float:
    """V(x) = 1 - I_{Dj}(x) / I_{D0}(x) for constant user density."""
    _check_inside(x, regions.cluster)
    net = regions.network
    full = integrate_gain(x, net, _UNIT, pathloss, rel_tol)
    inner = integrate_gain(x, regions.cluster, _UNIT, pathloss, rel_tol)
    return float(min(max(1.0 - inner / full, 0.0), 1.0))


def mean_log_ratio(bs_positions, regions, density, pathloss, n0_over_p=0.0, rel_tol=DEFAULT_TOL):
    """BS-averaged capacity formula, the discrete form the mean-value step collapses."""
    vals = [log_ratio(x, regions, density, pathloss, n0_over_p, rel_tol) for x in np.asarray(bs_positions)]
    if any(v is UNBOUNDED for v in vals):
        return UNBOUNDED
    return float(np.mean(vals))


# ---------------------------------------------------------------------------
# round-cluster bounds, three-slope gain, constant user density


def q_of_rj(r_j: float, pathloss: ThreeSlopeParams, rel_tol: float = DEFAULT_TOL) -> float:
    """Gain integral over a radius-``r_j`` disk seen from a point on its rim."""
    if r_j < 0:
        raise ValueError("cluster radius must be non-negative")
    if r_j == 0:
        return 0.0
    return integrate_gain((r_j, 0.0), Disk((0.0, 0.0), r_j), _UNIT, pathloss, rel_tol)


def vj_min_upper_bound(r_j: float, pathloss: ThreeSlopeParams) -> float:
    """Upper bound on the smallest V over the cluster (attained at its centre)."""
    d0, d1 = pathloss.d0, pathloss.d1
    k = pathloss.log_ratio
    if r_j <= 0:
        return 1.0
    if r_j > d1:
        return (2.0 / 3.0) * r_j**-1.5 / (d1**-1.5 * k)
    if r_j > d0:
        return (np.log(d1 / r_j) + 2.0 / 3.0) / k
    return 1.0 - r_j**2 / (2.0 * d0**2 * k)


def vj_max_upper_bound(r_j: float, pathloss: ThreeSlopeParams, rel_tol: float = DEFAULT_TOL) -> float:
    return 1.0 - q_of_rj(r_j, pathloss, rel_tol) / plane_integral(pathloss)


def cj_max_lower_bound(r_j: float, pathloss: ThreeSlopeParams) -> float:
    """Lower bound on the largest cluster capacity, bits/s/Hz."""
    return float(-np.log2(vj_min_upper_bound(r_j, pathloss)))


def cj_min_lower_bound(r_j: float, pathloss: ThreeSlopeParams, rel_tol: float = DEFAULT_TOL) -> float:
    """Lower bound on the smallest cluster capacity, bits/s/Hz (at most 1)."""
    a = plane_integral(pathloss)
    return float(np.log2(a / (a - q_of_rj(r_j, pathloss, rel_tol))))


def bound_set(r_j: float, pathloss: ThreeSlopeParams, rel_tol: float = DEFAULT_TOL) -> BoundSet:
    q = q_of_rj(r_j, pathloss, rel_tol)
    a = plane_integral(pathloss)
    return BoundSet(
        cj_max_lower=cj_max_lower_bound(r_j, pathloss),
        cj_min_lower=float(np.log2(a / (a - q))),
        vj_min_upper=vj_min_upper_bound(r_j, pathloss),
        vj_max_upper=1.0 - q / a,
        q_value=q,
    )

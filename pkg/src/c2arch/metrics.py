"""Per-cluster capacity of an architecture and network-level aggregates."""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .architectures import Architecture
from .channel import eigen_capacity_from_sums, mc_capacity_from_gains, pairwise_gains
from .flags import UNBOUNDED, is_unbounded
from .sampling import DensityProfile
from .theory import DEFAULT_TOL, RegionPair, mean_log_ratio

log = logging.getLogger(__name__)

EIGEN, MC, THEORY = "eigen", "mc", "theory"
METHODS = (EIGEN, MC, THEORY)
_BLOCK = 3_000_000  # gain-matrix elements per chunk


@dataclass(frozen=True)
class ClusterCapacity:
    cluster_id: int
    n_bs: int
    n_users: int
    capacity: object  # float or UNBOUNDED
    method: str
    std_error: float = 0.0


@dataclass(frozen=True)
class CapacityReport:
    per_cluster: list
    c_bs: float
    c_u: float
    realized_beta: float
    n_unbounded: int = 0
    kind: str = field(default="")


def network_capacity_per_bs(per_cluster) -> float:
    """BS-weighted mean of cluster capacities; unbounded clusters are skipped."""
    bounded = [c for c in per_cluster if not is_unbounded(c.capacity)]
    total_bs = sum(c.n_bs for c in bounded)
    if total_bs <= 0:
        raise ValueError("no base stations")
    return math.fsum(c.capacity * c.n_bs for c in bounded) / total_bs


def network_capacity_per_user(c_bs: float, realized_beta: float) -> float:
    if not realized_beta > 0:
        raise ValueError("zero users")
    return c_bs / realized_beta


def interference_sums(arch: Architecture, pathloss):
    """Per-BS in-cluster and out-of-cluster gain sums over all users."""
    ns = arch.node_set
    bs, users = ns.bs_positions, ns.user_positions
    in_sum = np.zeros(len(bs))
    out_sum = np.zeros(len(bs))
    step = max(1, _BLOCK // max(len(users), 1))
    for s in range(0, len(bs), step):
        g = pairwise_gains(bs[s : s + step], users, pathloss)
        same = arch.bs_labels[s : s + step, None] == arch.user_labels[None, :]
        in_sum[s : s + step] = np.where(same, g, 0.0).sum(axis=1)
        out_sum[s : s + step] = np.where(same, 0.0, g).sum(axis=1)
    return in_sum, out_sum


def _eigen(arch, pathloss, n0_over_p):
    in_sum, out_sum = interference_sums(arch, pathloss)
    out = []
    for c in arch.clusters:
        cap = 0.0 if c.n_bs == 0 else eigen_capacity_from_sums(in_sum[c.bs_indices], out_sum[c.bs_indices], n0_over_p)
        out.append(ClusterCapacity(c.id, c.n_bs, c.n_users, cap, EIGEN))
    return out


def _mc(arch, pathloss, n0_over_p, trials, seed):
    _, out_sum = interference_sums(arch, pathloss)
    p_over_n0 = np.inf if n0_over_p == 0 else 1.0 / n0_over_p
    ns = arch.node_set
    out = []
    for c in arch.clusters:
        if c.n_bs == 0 or c.n_users == 0:
            out.append(ClusterCapacity(c.id, c.n_bs, c.n_users, 0.0, MC))
            continue
        g_in = pairwise_gains(ns.bs_positions[c.bs_indices], ns.user_positions[c.user_indices], pathloss)
        sub = int(np.random.SeedSequence([seed, c.id]).generate_state(1)[0])
        est = mc_capacity_from_gains(g_in, out_sum[c.bs_indices], p_over_n0, trials, sub)
        out.append(ClusterCapacity(c.id, c.n_bs, c.n_users, est.mean, MC, est.std_error))
    return out


def _theory(arch, pathloss, n0_over_p, user_density, rel_tol):
    ns = arch.node_set
    if user_density is None:
        user_density = DensityProfile.constant(ns.n_users / ns.network.area)
    out = []
    for c in arch.clusters:
        if c.region is None:
            raise ValueError("no region for closed form")
        if c.n_bs == 0:
            cap = 0.0
        else:
            regions = RegionPair(ns.network, c.region)
            cap = mean_log_ratio(ns.bs_positions[c.bs_indices], regions, user_density, pathloss, n0_over_p, rel_tol)
        out.append(ClusterCapacity(c.id, c.n_bs, c.n_users, cap, THEORY))
    return out


def evaluate_architecture(
    arch: Architecture,
    pathloss,
    n0_over_p: float = 0.0,
    method: str = EIGEN,
    trials: int = 100,
    seed: int = 0,
    user_density: DensityProfile | None = None,
    rel_tol: float = DEFAULT_TOL,
) -> CapacityReport:
    """Capacity of every cluster by the chosen method, plus network aggregates.

    ``eigen`` uses the large-system per-BS SINR sums, ``mc`` averages the
    fading log-det over ``trials`` draws, and ``theory`` averages the
    closed-form capacity over the cluster's BS positions (disk clusters only).
    """
    if method == EIGEN:
        per = _eigen(arch, pathloss, n0_over_p)
    elif method == MC:
        per = _mc(arch, pathloss, n0_over_p, trials, seed)
    elif method == THEORY:
        per = _theory(arch, pathloss, n0_over_p, user_density, rel_tol)
    else:
        raise ValueError(f"unknown method {method!r}")
    n_unb = sum(is_unbounded(c.capacity) for c in per)
    if n_unb:
        log.warning("%d cluster(s) with unbounded capacity excluded from aggregates", n_unb)
    beta = arch.node_set.realized_beta
    if all(is_unbounded(c.capacity) for c in per):
        c_bs = UNBOUNDED
        c_u = UNBOUNDED
    else:
        c_bs = network_capacity_per_bs(per)
        c_u = network_capacity_per_user(c_bs, beta)
    return CapacityReport(per, c_bs, c_u, beta, n_unb, arch.kind)

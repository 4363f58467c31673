"""Partitions of a node set into clusters: C2 (packed disks), cellular, CoMP."""

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .geometry import REL_TOL, Disk, nearest_indices, pack_disks
from .sampling import NodeSet

C2, CELLULAR, COMP = "c2", "cellular", "comp"
KINDS = (C2, CELLULAR, COMP)


@dataclass(frozen=True)
class Cluster:
    id: int
    bs_indices: np.ndarray
    user_indices: np.ndarray
    region: Disk | None = None

    @property
    def n_bs(self) -> int:
        return len(self.bs_indices)

    @property
    def n_users(self) -> int:
        return len(self.user_indices)


@dataclass(frozen=True)
class Architecture:
    kind: str
    clusters: list
    node_set: NodeSet = field(repr=False)
    bs_labels: np.ndarray = field(repr=False, default=None)
    user_labels: np.ndarray = field(repr=False, default=None)
    anchors: np.ndarray = field(repr=False, default=None)  # (M, 2) cluster centre / BS / datum

    @property
    def n_clusters(self) -> int:
        return len(self.clusters)


def _from_labels(kind, node_set, bs_labels, user_labels, n_clusters, anchors, regions=None):
    bs_order = np.argsort(bs_labels, kind="stable")
    user_order = np.argsort(user_labels, kind="stable")
    bs_split = np.searchsorted(bs_labels[bs_order], np.arange(1, n_clusters))
    user_split = np.searchsorted(user_labels[user_order], np.arange(1, n_clusters))
    clusters = [
        Cluster(j, b, u, None if regions is None else regions[j])
        for j, (b, u) in enumerate(zip(np.split(bs_order, bs_split), np.split(user_order, user_split)))
    ]
    return Architecture(kind, clusters, node_set, bs_labels, user_labels, np.asarray(anchors, dtype=float))


def c2_centers(network: Disk, r_th: float) -> np.ndarray:
    if r_th > network.radius * (1 + REL_TOL):
        raise ValueError("cluster radius threshold exceeds network radius")
    return pack_disks(network.radius, r_th) + np.asarray(network.center)


def build_c2(node_set: NodeSet, r_th: float) -> Architecture:
    """Capacity-centric clusters: packed disks of radius ``r_th``.

    Nodes inside a disk join it; nodes in the packing gaps join the cluster
    whose centre is nearest (lowest id on ties). Because the disks are
    disjoint, nearest-centre assignment also reproduces disk membership, so
    one rule covers both cases. The layout depends only on the radii.
    """
    centers = c2_centers(node_set.network, r_th)
    regions = [Disk(tuple(c), r_th) for c in centers]
    bs_labels = nearest_indices(node_set.bs_positions, centers)
    user_labels = nearest_indices(node_set.user_positions, centers)
    return _from_labels(C2, node_set, bs_labels, user_labels, len(centers), centers, regions)


def build_cellular(node_set: NodeSet) -> Architecture:
    """One cluster per BS; users attach to their nearest BS."""
    if node_set.n_bs == 0:
        raise ValueError("no base stations")
    bs_labels = np.arange(node_set.n_bs)
    user_labels = nearest_indices(node_set.user_positions, node_set.bs_positions)
    return _from_labels(CELLULAR, node_set, bs_labels, user_labels, node_set.n_bs, node_set.bs_positions)


def build_comp(node_set: NodeSet, r_comp: float, seed) -> Architecture:
    """BS-centric clusters grown around random datum BSs.

    Repeatedly pick a uniformly random unassigned BS, claim every unassigned
    BS within ``r_comp`` of it, until none remain. Users inherit the cluster
    of their nearest BS.
    """
    if node_set.n_bs == 0:
        raise ValueError("no base stations")
    if not r_comp > 0:
        raise ValueError("r_comp must be positive")
    rng = np.random.default_rng(seed)
    bs = node_set.bs_positions
    tree = cKDTree(bs)
    labels = np.full(node_set.n_bs, -1, dtype=np.intp)
    unassigned = np.arange(node_set.n_bs)
    datums = []
    j = 0
    while len(unassigned):
        datum = unassigned[rng.integers(len(unassigned))]
        datums.append(datum)
        near = np.asarray(tree.query_ball_point(bs[datum], r_comp), dtype=np.intp)
        near = near[labels[near] < 0]
        labels[near] = j
        labels[datum] = j
        unassigned = np.flatnonzero(labels < 0)
        j += 1
    user_bs = nearest_indices(node_set.user_positions, bs)
    return _from_labels(COMP, node_set, labels, labels[user_bs], j, bs[datums])


def build(kind: str, node_set: NodeSet, r_th: float, r_comp: float | None = None, seed=0) -> Architecture:
    if kind == C2:
        return build_c2(node_set, r_th)
    if kind == CELLULAR:
        return build_cellular(node_set)
    if kind == COMP:
        return build_comp(node_set, r_th if r_comp is None else r_comp, seed)
    raise ValueError(f"unknown architecture {kind!r}")

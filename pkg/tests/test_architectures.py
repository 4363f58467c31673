import math

import numpy as np
import pytest

from c2arch.architectures import build, build_c2, build_cellular, build_comp
from c2arch.geometry import Disk
from c2arch.sampling import DensityProfile, NodeSet, sample_network

NET = Disk((0.0, 0.0), 1000.0)


def _nodes(seed=0, bs_profile=None, users=3e-4, net=NET):
    bs_profile = bs_profile or DensityProfile.constant(1e-4)
    return sample_network(net, DensityProfile.constant(users), bs_profile, seed)


def _assert_partition(arch):
    ns = arch.node_set
    bs = np.sort(np.concatenate([c.bs_indices for c in arch.clusters]))
    us = np.sort(np.concatenate([c.user_indices for c in arch.clusters]))
    assert np.array_equal(bs, np.arange(ns.n_bs))
    assert np.array_equal(us, np.arange(ns.n_users))


@pytest.mark.parametrize("kind", ["c2", "cellular", "comp"])
def test_partition(kind):
    arch = build(kind, _nodes(1), r_th=150.0, r_comp=150.0, seed=3)
    _assert_partition(arch)
    assert [c.id for c in arch.clusters] == list(range(arch.n_clusters))


def test_c2_count_175():
    assert build_c2(_nodes(), 175.0).n_clusters == 24


def test_c2_full_network():
    ns = _nodes()
    arch = build_c2(ns, 1000.0)
    assert arch.n_clusters == 1
    assert arch.clusters[0].n_bs == ns.n_bs and arch.clusters[0].n_users == ns.n_users


def test_c2_area_bound():
    ns = _nodes()
    for r in (90.0, 140.0, 175.0, 300.0, 600.0):
        assert build_c2(ns, r).n_clusters <= math.floor(1000.0**2 / r**2)


def test_c2_independent_of_bs_layout():
    a = build_c2(_nodes(5, DensityProfile.constant(1e-4)), 175.0)
    b = build_c2(_nodes(5, DensityProfile.urban_rural(1e-4)), 175.0)
    assert a.n_clusters == b.n_clusters
    assert np.array_equal(a.anchors, b.anchors)
    assert [c.region for c in a.clusters] == [c.region for c in b.clusters]


def test_c2_members_inside_disk_stay():
    ns = _nodes(2)
    arch = build_c2(ns, 175.0)
    for c in arch.clusters:
        d = np.hypot(*(ns.user_positions - np.asarray(c.region.center)).T)
        inside = np.flatnonzero(d <= c.region.radius)
        assert set(inside) <= set(c.user_indices)


def test_cellular_examples():
    bs = np.array([[0.0, 0.0], [100.0, 0.0], [0.0, 100.0]])
    users = np.array([[1.0, 1.0], [90.0, 0.0], [5.0, 80.0], [60.0, 60.0], [-30.0, -30.0]])
    arch = build_cellular(NodeSet(bs, users, NET))
    assert arch.n_clusters == 3
    assert sum(c.n_users for c in arch.clusters) == 5

    one = build_cellular(NodeSet(bs[:1], users, NET))
    assert one.n_clusters == 1 and one.clusters[0].n_users == 5

    tie = build_cellular(NodeSet(np.array([[-1.0, 0.0], [1.0, 0.0]]), np.array([[0.0, 0.0]]), NET))
    assert list(tie.clusters[0].user_indices) == [0]


def test_cellular_count_equals_bs():
    ns = _nodes(4)
    assert build_cellular(ns).n_clusters == ns.n_bs


def test_comp_degenerate_radii():
    ns = _nodes(6)
    tiny = build_comp(ns, 1e-6, seed=0)
    assert tiny.n_clusters == ns.n_bs
    huge = build_comp(ns, 2000.0, seed=0)
    assert huge.n_clusters == 1


def test_comp_determinism():
    rng = np.random.default_rng(0)
    bs = rng.uniform(-500, 500, (100, 2))
    users = rng.uniform(-500, 500, (300, 2))
    ns = NodeSet(bs, users, NET)
    a = build_comp(ns, 100.0, seed=42)
    b = build_comp(ns, 100.0, seed=42)
    assert a.n_clusters == b.n_clusters
    assert np.array_equal(a.bs_labels, b.bs_labels)
    assert np.array_equal(a.user_labels, b.user_labels)
    # every BS sits within r_comp of its datum
    for c in a.clusters:
        d = np.hypot(*(bs[c.bs_indices] - a.anchors[c.id]).T)
        assert d.max() <= 100.0 + 1e-9


def test_unknown_kind():
    with pytest.raises(ValueError):
        build("voronoi", _nodes(), 100.0)

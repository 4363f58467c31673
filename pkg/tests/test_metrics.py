import numpy as np
import pytest

from c2arch.architectures import build, build_c2, build_cellular
from c2arch.channel import asymptotic_eigen_capacity
from c2arch.flags import UNBOUNDED
from c2arch.geometry import Disk
from c2arch.metrics import (
    ClusterCapacity,
    evaluate_architecture,
    network_capacity_per_bs,
    network_capacity_per_user,
)
from c2arch.sampling import DensityProfile, NodeSet, sample_network
from c2arch.theory import RegionPair, mean_log_ratio

PLATEAU = 50.0**-1.5 * 10.0**-2


def _cc(cap, n_bs, i=0):
    return ClusterCapacity(i, n_bs, 1, cap, "eigen")


def test_weighted_mean_examples():
    assert network_capacity_per_bs([_cc(2.0, 10), _cc(4.0, 30, 1)]) == pytest.approx(3.5, abs=1e-15)
    assert network_capacity_per_bs([_cc(5.0, 3)]) == 5.0
    assert network_capacity_per_bs([_cc(0.0, 3), _cc(0.0, 4)]) == 0.0


def test_unbounded_excluded():
    assert network_capacity_per_bs([_cc(UNBOUNDED, 3), _cc(2.0, 5)]) == 2.0
    with pytest.raises(ValueError):
        network_capacity_per_bs([])


def test_per_user_examples():
    assert network_capacity_per_user(3.5, 2.0) == 1.75
    assert network_capacity_per_user(0.0, 2.0) == 0.0
    assert network_capacity_per_user(2.7, 1.0) == 2.7
    with pytest.raises(ValueError):
        network_capacity_per_user(1.0, 0.0)


def test_permutation_bit_identical():
    rng = np.random.default_rng(1)
    items = [_cc(float(c), int(n), i) for i, (c, n) in enumerate(zip(rng.uniform(0, 5, 200), rng.integers(1, 9, 200)))]
    base = network_capacity_per_bs(items)
    for _ in range(5):
        perm = [items[i] for i in rng.permutation(len(items))]
        assert network_capacity_per_bs(perm) == base
    caps = [c.capacity for c in items]
    assert min(caps) <= base <= max(caps)


def test_single_cluster(pl):
    net = Disk((0, 0), 300.0)
    ns = sample_network(net, DensityProfile.constant(1e-3), DensityProfile.constant(5e-4), 0)
    rep = evaluate_architecture(build_c2(ns, 300.0), pl, n0_over_p=1e-4)
    assert len(rep.per_cluster) == 1
    assert rep.c_bs == rep.per_cluster[0].capacity


def test_eigen_hand_computed(pl):
    # BS 0 serves user 0 (plateau), BS 1 far away serves user 1 (plateau)
    bs = np.array([[0.0, 0.0], [1000.0, 0.0]])
    users = np.array([[3.0, 0.0], [1004.0, 0.0]])
    ns = NodeSet(bs, users, Disk((500.0, 0), 600.0))
    rep = evaluate_architecture(build_cellular(ns), pl)
    cross = [1004.0**-3.5, 997.0**-3.5]
    lam = [PLATEAU / cross[0], PLATEAU / cross[1]]
    for c, l in zip(rep.per_cluster, lam):
        assert c.capacity == pytest.approx(np.log2(1 + l), rel=1e-12)
    assert rep.c_bs == pytest.approx(np.mean(np.log2(1 + np.array(lam))), rel=1e-12)


def test_zero_user_cellular_cluster_counts_as_zero(pl):
    bs = np.array([[0.0, 0.0], [500.0, 0.0]])
    users = np.array([[5.0, 0.0]])
    ns = NodeSet(bs, users, Disk((0, 0), 600.0))
    rep = evaluate_architecture(build_cellular(ns), pl)
    assert rep.per_cluster[1].capacity == 0.0
    assert rep.n_unbounded == 1
    assert rep.c_bs == 0.0


def test_full_network_unbounded_report(pl, caplog):
    net = Disk((0, 0), 200.0)
    ns = sample_network(net, DensityProfile.constant(1e-3), DensityProfile.constant(5e-4), 0)
    rep = evaluate_architecture(build_c2(ns, 200.0), pl)
    assert rep.c_bs is UNBOUNDED and rep.n_unbounded == 1
    assert "unbounded" in caplog.text


def test_mc_close_to_eigen(pl):
    net = Disk((0, 0), 400.0)
    ns = sample_network(net, DensityProfile.constant(2e-3), DensityProfile.constant(1e-3), 3)
    arch = build_c2(ns, 150.0)
    eig = evaluate_architecture(arch, pl, method="eigen")
    mc = evaluate_architecture(arch, pl, method="mc", trials=20, seed=1)
    assert mc.c_bs == pytest.approx(eig.c_bs, rel=0.2)
    assert mc.realized_beta == ns.realized_beta
    assert mc.c_u == pytest.approx(mc.c_bs / ns.realized_beta, rel=1e-15)
    assert all(c.std_error > 0 for c in mc.per_cluster if c.n_bs and c.n_users)


def test_theory_matches_eigen_on_disk_cluster(pl):
    # the closed form integrates over the cluster disk, so compare on a
    # cluster that is exactly a centred disk
    net = Disk((0, 0), 600.0)
    ns = sample_network(net, DensityProfile.constant(5e-3), DensityProfile.constant(1e-3), 8)
    inside = np.hypot(*ns.user_positions.T) <= 120.0
    bs = ns.bs_positions[np.hypot(*ns.bs_positions.T) <= 120.0]
    eig = asymptotic_eigen_capacity(bs, ns.user_positions[inside], ns.user_positions[~inside], pl)
    dens = DensityProfile.constant(ns.n_users / net.area)
    th = mean_log_ratio(bs, RegionPair(net, Disk((0, 0), 120.0)), dens, pl, rel_tol=1e-6)
    assert th == pytest.approx(eig, rel=0.1)


def test_theory_method_on_c2(pl):
    net = Disk((0, 0), 400.0)
    ns = sample_network(net, DensityProfile.constant(2e-3), DensityProfile.constant(1e-3), 3)
    rep = evaluate_architecture(build_c2(ns, 150.0), pl, method="theory", rel_tol=1e-6)
    assert all(c.method == "theory" for c in rep.per_cluster)
    assert 0 < rep.c_bs < 10


def test_theory_needs_regions(pl):
    ns = sample_network(Disk((0, 0), 200.0), DensityProfile.constant(1e-3), DensityProfile.constant(5e-4), 0)
    with pytest.raises(ValueError):
        evaluate_architecture(build("cellular", ns, 100.0), pl, method="theory")
    with pytest.raises(ValueError):
        evaluate_architecture(build("cellular", ns, 100.0), pl, method="exact")

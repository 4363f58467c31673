"""Per-cluster fading channels and their log-det capacity.

All powers are normalised by the user transmit power P, so the only scale
parameter is ``p_over_n0`` (``inf`` for the interference-limited regime).
Out-of-cluster interference enters through its fading expectation: row l of
the channel is whitened by ``1/p_over_n0 + sum_out f(d_l,kappa)``.
"""

from dataclasses import dataclass

import numpy as np

from .flags import UNBOUNDED
from .pathloss import ThreeSlopeParams, gain, gain_from_squared_distance

_LN2 = np.log(2.0)
_BATCH_ELEMENTS = 2_000_000


@dataclass(frozen=True)
class ClusterChannel:
    H: np.ndarray  # (L_j, K_j) complex
    sigma: np.ndarray  # (L_j,) expected interference, units of P
    p_over_n0: float

    def __post_init__(self):
        H = np.atleast_2d(np.asarray(self.H, dtype=complex))
        sigma = np.asarray(self.sigma, dtype=float).reshape(-1)
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "sigma", sigma)
        if H.shape[0] != sigma.shape[0]:
            raise ValueError("sigma length must match the number of BS rows")
        if np.any(sigma < 0):
            raise ValueError("interference must be non-negative")
        if not self.p_over_n0 >= 0:
            raise ValueError("p_over_n0 must be non-negative")


@dataclass(frozen=True)
class CapacityEstimate:
    mean: float
    std_error: float
    trials: int


def pairwise_gains(bs, users, pathloss) -> np.ndarray:
    """(L, K) matrix of squared large-scale gains."""
    bs = np.asarray(bs, dtype=float).reshape(-1, 2)
    users = np.asarray(users, dtype=float).reshape(-1, 2)
    dx = bs[:, None, 0] - users[None, :, 0]
    dy = bs[:, None, 1] - users[None, :, 1]
    if isinstance(pathloss, ThreeSlopeParams):
        return gain_from_squared_distance(dx * dx + dy * dy, pathloss)
    d = np.hypot(dx, dy)
    return np.asarray(gain(d, pathloss), dtype=float).reshape(len(bs), len(users))


def cluster_gains(bs, users_in, users_out, pathloss):
    """Large-scale gains inside the cluster and the per-BS interference sum."""
    bs = np.asarray(bs, dtype=float).reshape(-1, 2)
    users_in = np.asarray(users_in, dtype=float).reshape(-1, 2)
    if len(bs) == 0 or len(users_in) == 0:
        raise ValueError("degenerate cluster")
    g_in = pairwise_gains(bs, users_in, pathloss)
    sigma = np.zeros(len(bs))
    users_out = np.asarray(users_out, dtype=float).reshape(-1, 2)
    for s in range(0, len(users_out), 4096):
        sigma += pairwise_gains(bs, users_out[s : s + 4096], pathloss).sum(axis=1)
    return g_in, sigma


def _fading(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def build_cluster_channel(bs, users_in, users_out, pathloss, p_over_n0, seed) -> ClusterChannel:
    """One Rayleigh realisation ``H = sqrt(f) * g`` with g ~ CN(0, 1)."""
    g_in, sigma = cluster_gains(bs, users_in, users_out, pathloss)
    rng = np.random.default_rng(seed)
    return ClusterChannel(np.sqrt(g_in) * _fading(rng, g_in.shape), sigma, p_over_n0)


def _row_scale(sigma, p_over_n0):
    noise = 0.0 if np.isinf(p_over_n0) else (np.inf if p_over_n0 == 0 else 1.0 / p_over_n0)
    denom = noise + sigma
    with np.errstate(divide="ignore"):
        return 1.0 / np.sqrt(denom)


def logdet_capacity(Ht: np.ndarray) -> float:
    """(1/L) log2 det(I + Ht Ht^H) via Cholesky of the smaller Gram matrix."""
    L, K = Ht.shape
    gram = Ht @ Ht.conj().T if L <= K else Ht.conj().T @ Ht
    a = np.eye(gram.shape[-1]) + gram
    chol = np.linalg.cholesky(a)
    return float(2.0 * np.sum(np.log(np.real(np.diagonal(chol)))) / _LN2 / L)


def _batched_logdet(Ht: np.ndarray) -> np.ndarray:
    """``logdet_capacity`` over a stack of (L, K) matrices."""
    L, K = Ht.shape[-2:]
    Hc = np.conj(np.swapaxes(Ht, -1, -2))
    gram = Ht @ Hc if L <= K else Hc @ Ht
    chol = np.linalg.cholesky(np.eye(gram.shape[-1]) + gram)
    return 2.0 * np.sum(np.log(np.real(np.diagonal(chol, axis1=-2, axis2=-1))), axis=-1) / _LN2 / L


def sample_capacity(ch: ClusterChannel):
    """Per-BS capacity of one realisation, bits/s/Hz."""
    if not np.all(np.isfinite(ch.H)):
        raise ValueError("invalid channel")
    scale = _row_scale(ch.sigma, ch.p_over_n0)
    if np.any(np.isinf(scale)):
        return UNBOUNDED
    return max(logdet_capacity(ch.H * scale[:, None]), 0.0)


def mc_capacity(bs, users_in, users_out, pathloss, p_over_n0, trials, seed) -> CapacityEstimate:
    """Monte-Carlo mean of ``sample_capacity`` over independent fading draws."""
    g_in, sigma = cluster_gains(bs, users_in, users_out, pathloss)
    return mc_capacity_from_gains(g_in, sigma, p_over_n0, trials, seed)


def mc_capacity_from_gains(g_in, sigma, p_over_n0, trials, seed) -> CapacityEstimate:
    """Monte-Carlo capacity given the large-scale gains and interference.

    Trial ``t`` draws from ``default_rng([seed, t])`` so any subset of trials
    can be evaluated independently; the mean is a pairwise sum over the
    trial-ordered results.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    scale = _row_scale(np.asarray(sigma, dtype=float), p_over_n0)
    if np.any(np.isinf(scale)):
        return CapacityEstimate(UNBOUNDED, 0.0, trials)
    amp = np.sqrt(g_in) * scale[:, None]
    L, K = amp.shape
    values = np.empty(trials)
    # trials are stacked so the small-matrix factorisations run batched
    block = max(1, min(trials, _BATCH_ELEMENTS // (L * K + min(L, K) ** 2)))
    for s in range(0, trials, block):
        ts = range(s, min(s + block, trials))
        Ht = amp * np.stack([_fading(np.random.default_rng([seed, t]), amp.shape) for t in ts])
        values[s : s + len(ts)] = _batched_logdet(Ht)
    values = np.maximum(values, 0.0)
    se = float(np.std(values, ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return CapacityEstimate(float(np.mean(values)), se, trials)


def eigen_capacity_from_sums(in_sum, out_sum, n0_over_p=0.0):
    """(1/L) sum_l log2(1 + in_l / (n0_over_p + out_l)); UNBOUNDED when a denominator vanishes."""
    in_sum = np.asarray(in_sum, dtype=float)
    denom = n0_over_p + np.asarray(out_sum, dtype=float)
    if np.any((denom <= 0) & (in_sum > 0)):
        return UNBOUNDED
    with np.errstate(divide="ignore", invalid="ignore"):
        lam = np.where(in_sum > 0, in_sum / denom, 0.0)
    return float(np.mean(np.log2(1.0 + lam)))


def asymptotic_eigen_capacity(bs, users_in, users_out, pathloss, n0_over_p=0.0):
    """Deterministic large-system capacity per BS.

    Each BS contributes ``log2(1 + lambda_l)`` with ``lambda_l`` the ratio of
    in-cluster to (noise + out-of-cluster) large-scale gain sums.
    """
    bs = np.asarray(bs, dtype=float).reshape(-1, 2)
    if len(bs) == 0:
        raise ValueError("degenerate cluster")
    users_in = np.asarray(users_in, dtype=float).reshape(-1, 2)
    in_sum = pairwise_gains(bs, users_in, pathloss).sum(axis=1) if len(users_in) else np.zeros(len(bs))
    out_sum = np.zeros(len(bs))
    users_out = np.asarray(users_out, dtype=float).reshape(-1, 2)
    for s in range(0, len(users_out), 4096):
        out_sum += pairwise_gains(bs, users_out[s : s + 4096], pathloss).sum(axis=1)
    return eigen_capacity_from_sums(in_sum, out_sum, n0_over_p)


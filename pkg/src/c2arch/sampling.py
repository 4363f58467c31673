"""Seeded node placement over the network disk.

Densities are piecewise constant on concentric rings around the network
centre (a single ring is the constant-density case). Counts per ring are
Poisson with mean ``density * ring_area`` by default, or the rounded mean in
``fixed`` mode; positions are exactly uniform within each ring.
"""

from dataclasses import dataclass, field

import numpy as np

from .geometry import Disk

URBAN_RURAL_WEIGHTS = (5 / 9, 3 / 9, 1 / 9)
URBAN_RURAL_BOUNDARIES = (1 / 3, 2 / 3, 1.0)


@dataclass(frozen=True)
class DensityProfile:
    """Ring boundaries are fractions of the network radius ending at 1."""

    boundaries: tuple = (1.0,)
    densities: tuple = (0.0,)
    kind: str = field(default="constant")

    def __post_init__(self):
        b = tuple(float(x) for x in self.boundaries)
        rho = tuple(float(x) for x in self.densities)
        object.__setattr__(self, "boundaries", b)
        object.__setattr__(self, "densities", rho)
        if len(b) != len(rho) or not b:
            raise ValueError("boundaries and densities must have equal, non-zero length")
        if any(x <= 0 for x in b) or any(y <= x for x, y in zip(b, b[1:])) or abs(b[-1] - 1) > 1e-12:
            raise ValueError("ring boundaries must be strictly increasing in (0, 1] and end at 1")
        if any(not np.isfinite(r) or r < 0 for r in rho):
            raise ValueError("densities must be finite and non-negative")

    @classmethod
    def constant(cls, density: float) -> "DensityProfile":
        return cls((1.0,), (density,), "constant")

    @classmethod
    def concentric(cls, boundaries, densities) -> "DensityProfile":
        return cls(tuple(boundaries), tuple(densities), "concentric")

    @classmethod
    def urban_rural(cls, rho_b: float) -> "DensityProfile":
        """Centrally dense profile: 5/9, 3/9, 1/9 of ``rho_b`` on three equal-width rings."""
        return cls.concentric(URBAN_RURAL_BOUNDARIES, [w * rho_b for w in URBAN_RURAL_WEIGHTS])

    def ring_radii(self, network: Disk):
        """(inner, outer) radius of every ring in metres."""
        outer = np.asarray(self.boundaries) * network.radius
        inner = np.concatenate([[0.0], outer[:-1]])
        return inner, outer

    def ring_areas(self, network: Disk) -> np.ndarray:
        a, b = self.ring_radii(network)
        return np.pi * (b**2 - a**2)

    def expected_counts(self, network: Disk) -> np.ndarray:
        return np.asarray(self.densities) * self.ring_areas(network)

    def density_at(self, points, network: Disk) -> np.ndarray:
        """Density at each point; zero outside the network disk."""
        p = np.atleast_2d(np.asarray(points, dtype=float))
        s = np.hypot(p[:, 0] - network.center.x, p[:, 1] - network.center.y) / network.radius
        idx = np.searchsorted(np.asarray(self.boundaries), s, side="left")
        rho = np.concatenate([self.densities, [0.0]])
        return rho[np.minimum(idx, len(self.densities))]


@dataclass
class NodeSet:
    bs_positions: np.ndarray
    user_positions: np.ndarray
    network: Disk

    @property
    def n_bs(self) -> int:
        return len(self.bs_positions)

    @property
    def n_users(self) -> int:
        return len(self.user_positions)

    @property
    def realized_beta(self) -> float:
        return self.n_users / self.n_bs


def sample_nodes(network: Disk, profile: DensityProfile, seed, mode: str = "poisson") -> np.ndarray:
    """Draw node positions, ``(n, 2)`` array, deterministic in ``seed``."""
    means = profile.expected_counts(network)
    if not means.sum() > 0:
        raise ValueError("empty density profile")
    if mode not in ("poisson", "fixed"):
        raise ValueError(f"unknown sampling mode {mode!r}")
    rng = np.random.default_rng(seed)
    inner, outer = profile.ring_radii(network)
    chunks = []
    for mean, a, b in zip(means, inner, outer):
        n = int(rng.poisson(mean)) if mode == "poisson" else int(round(mean))
        r = np.sqrt(a * a + rng.uniform(size=n) * (b * b - a * a))
        phi = rng.uniform(0.0, 2 * np.pi, size=n)
        chunks.append(np.column_stack([r * np.cos(phi), r * np.sin(phi)]))
    pts = np.vstack(chunks)
    return pts + np.asarray(network.center)


def sample_network(
    network: Disk,
    user_profile: DensityProfile,
    bs_profile: DensityProfile,
    seed: int,
    mode: str = "poisson",
) -> NodeSet:
    """Users and BSs from independent child streams of ``seed``.

    Both lists are guaranteed non-empty; in the rare empty draw the seed
    stream is advanced until a non-empty set appears.
    """
    user_seq, bs_seq = np.random.SeedSequence(seed).spawn(2)
    users = _nonempty(network, user_profile, user_seq, mode)
    bss = _nonempty(network, bs_profile, bs_seq, mode)
    return NodeSet(bs_positions=bss, user_positions=users, network=network)


def _nonempty(network, profile, seq, mode):
    for child in seq.spawn(64):
        pts = sample_nodes(network, profile, child, mode)
        if len(pts):
            return pts
    raise ValueError("density profile too sparse to produce any node")

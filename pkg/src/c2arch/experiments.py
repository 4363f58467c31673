"""Scenario configuration and the three experiment drivers.

``run_compare`` contrasts architectures on common node sets, ``run_bounds_curve``
tabulates the capacity-region bounds against simulated centred clusters, and
``run_heatmap`` lists every cluster of every architecture for plotting.
Each driver returns plain row dicts; ``write_table`` serialises them.
"""

import csv
import dataclasses
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .architectures import KINDS, build
from .channel import asymptotic_eigen_capacity, mc_capacity
from .flags import is_unbounded
from .geometry import Disk
from .metrics import METHODS, MC, evaluate_architecture
from .pathloss import ThreeSlopeParams
from .sampling import DensityProfile, sample_network
from .theory import bound_set

BS_PROFILES = ("constant", "concentric")
SAMPLING_MODES = ("poisson", "fixed-count")
DEFAULT_R0_GRID = (400.0, 600.0, 800.0, 1000.0)

COMPARISON_COLUMNS = (
    "r0_m", "architecture", "seed", "n_clusters", "n_bs", "n_users",
    "realized_beta", "c_bs", "c_u", "n_unbounded",
)
BOUNDS_COLUMNS = (
    "rj_m", "cj_max_lower", "cj_min_lower", "bound_mean", "q_value",
    "beta", "seed", "n_bs", "n_users", "c_sim",
)
HEATMAP_COLUMNS = (
    "seed", "cluster_id", "center_x_m", "center_y_m", "radius_m", "n_bs", "n_users", "capacity",
)


class ConfigError(ValueError):
    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass
class ScenarioConfig:
    r0_m: float = 1000.0
    rho_u_per_m2: float = 6e-3
    beta: float = 2.0
    r_th_m: float = 100.0
    d0_m: float = 10.0
    d1_m: float = 50.0
    n0_over_p: float = 0.0
    bs_profile: str = "constant"
    architectures: tuple = KINDS
    r_comp_m: float | None = None
    method: str = "eigen"
    trials: int = 100
    seeds: tuple = (0, 1, 2)
    sampling: str = "poisson"
    output_dir: str = "results"

    def __post_init__(self):
        self.validate()

    @property
    def r_comp(self) -> float:
        return self.r_th_m if self.r_comp_m is None else self.r_comp_m

    @property
    def pathloss(self) -> ThreeSlopeParams:
        return ThreeSlopeParams(self.d0_m, self.d1_m)

    def network(self, r0=None) -> Disk:
        return Disk((0.0, 0.0), self.r0_m if r0 is None else r0)

    def user_profile(self) -> DensityProfile:
        return DensityProfile.constant(self.rho_u_per_m2)

    def bs_density_profile(self, beta=None) -> DensityProfile:
        rho_b = self.rho_u_per_m2 / (self.beta if beta is None else beta)
        if self.bs_profile == "concentric":
            return DensityProfile.urban_rural(rho_b)
        return DensityProfile.constant(rho_b)

    def validate(self):
        for key in ("r0_m", "rho_u_per_m2", "beta", "r_th_m", "d0_m", "d1_m"):
            v = getattr(self, key)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ConfigError(key, f"must be a positive number, got {v!r}")
        if not self.d0_m < self.d1_m < self.r0_m:
            raise ConfigError("d1_m", "need d0_m < d1_m < r0_m")
        if self.r_th_m > self.r0_m:
            raise ConfigError("r_th_m", "cluster radius threshold exceeds network radius")
        if self.r_comp_m is not None and not self.r_comp_m > 0:
            raise ConfigError("r_comp_m", "must be positive")
        if not (math.isfinite(self.n0_over_p) and self.n0_over_p >= 0):
            raise ConfigError("n0_over_p", "must be a non-negative number")
        if self.bs_profile not in BS_PROFILES:
            raise ConfigError("bs_profile", f"must be one of {BS_PROFILES}")
        if not self.architectures or any(a not in KINDS for a in self.architectures):
            raise ConfigError("architectures", f"must be a non-empty subset of {KINDS}")
        if self.method not in METHODS:
            raise ConfigError("method", f"must be one of {METHODS}")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ConfigError("trials", "must be a positive integer")
        if not self.seeds:
            raise ConfigError("seeds", "at least one seed is required")
        if self.sampling not in SAMPLING_MODES:
            raise ConfigError("sampling", f"must be one of {SAMPLING_MODES}")

    def as_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["architectures"] = list(self.architectures)
        d["seeds"] = list(self.seeds)
        return d

    # -- parsing ---------------------------------------------------------

    @classmethod
    def from_mapping(cls, values: dict) -> "ScenarioConfig":
        """Build from strings or native values; unknown keys are rejected."""
        names = {f.name: f for f in dataclasses.fields(cls)}
        kwargs = {}
        for key, raw in values.items():
            if key not in names:
                raise ConfigError(key, "unknown key")
            kwargs[key] = _coerce(key, raw)
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path, overrides: dict | None = None) -> "ScenarioConfig":
        values = parse_config_text(Path(path).read_text(encoding="utf-8"))
        values.update(overrides or {})
        return cls.from_mapping(values)


_FLOAT_KEYS = {"r0_m", "rho_u_per_m2", "beta", "r_th_m", "d0_m", "d1_m", "n0_over_p"}


def _coerce(key, raw):
    try:
        if key in _FLOAT_KEYS:
            return float(raw)
        if key == "r_comp_m":
            return None if raw in (None, "", "none", "None") else float(raw)
        if key == "trials":
            return int(raw)
        if key == "seeds":
            items = raw.split(",") if isinstance(raw, str) else raw
            return tuple(int(s) for s in items if str(s).strip() != "")
        if key == "architectures":
            items = raw.split(",") if isinstance(raw, str) else raw
            return tuple(str(s).strip() for s in items if str(s).strip())
        return str(raw).strip()
    except (TypeError, ValueError) as exc:
        raise ConfigError(key, f"cannot parse {raw!r}") from exc


def parse_config_text(text: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {n}", "expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = value
    return out


# ---------------------------------------------------------------------------
# drivers


def _node_set(cfg, seed, r0=None, beta=None):
    mode = "fixed" if cfg.sampling == "fixed-count" else "poisson"
    return sample_network(cfg.network(r0), cfg.user_profile(), cfg.bs_density_profile(beta), seed, mode)


def _fmt_capacity(value):
    return math.inf if is_unbounded(value) else value


def run_compare(cfg: ScenarioConfig, r0_grid=None) -> list:
    """One row per (network radius, architecture, seed)."""
    rows = []
    for r0 in (r0_grid or (cfg.r0_m,)):
        if not r0 > cfg.d1_m:
            raise ConfigError("r0_grid", f"network radius {r0} must exceed d1_m")
        if cfg.r_th_m > r0:
            raise ConfigError("r_th_m", f"exceeds network radius {r0}")
        for seed in cfg.seeds:
            ns = _node_set(cfg, seed, r0)
            for kind in cfg.architectures:
                arch = build(kind, ns, cfg.r_th_m, cfg.r_comp, seed)
                rep = evaluate_architecture(arch, cfg.pathloss, cfg.n0_over_p, cfg.method, cfg.trials, seed)
                rows.append(
                    {
                        "r0_m": r0,
                        "architecture": kind,
                        "seed": seed,
                        "n_clusters": arch.n_clusters,
                        "n_bs": ns.n_bs,
                        "n_users": ns.n_users,
                        "realized_beta": rep.realized_beta,
                        "c_bs": _fmt_capacity(rep.c_bs),
                        "c_u": _fmt_capacity(rep.c_u),
                        "n_unbounded": rep.n_unbounded,
                    }
                )
    return rows


def summarize_compare(rows) -> list:
    """Mean and standard deviation of c_bs and c_u over seeds."""
    groups = {}
    for r in rows:
        groups.setdefault((r["r0_m"], r["architecture"]), []).append(r)
    out = []
    for (r0, kind), rs in groups.items():
        c_bs = np.array([r["c_bs"] for r in rs], dtype=float)
        c_u = np.array([r["c_u"] for r in rs], dtype=float)
        out.append(
            {
                "r0_m": r0,
                "architecture": kind,
                "seeds": len(rs),
                "c_bs_mean": float(np.mean(c_bs)),
                "c_bs_std": float(np.std(c_bs)),
                "c_u_mean": float(np.mean(c_u)),
                "c_u_std": float(np.std(c_u)),
                "n_clusters_mean": float(np.mean([r["n_clusters"] for r in rs])),
            }
        )
    return out


def centred_cluster_capacity(ns, r_j, pathloss, method="eigen", n0_over_p=0.0, trials=100, seed=0):
    """Capacity of a disk cluster of radius ``r_j`` at the network centre.

    Returns ``(capacity, n_bs, n_users)``; capacity is None when the disk
    holds no BS or no user.
    """
    c = np.asarray(ns.network.center)
    bs_in = np.hypot(*(ns.bs_positions - c).T) <= r_j
    u_in = np.hypot(*(ns.user_positions - c).T) <= r_j
    n_bs, n_u = int(bs_in.sum()), int(u_in.sum())
    if n_bs == 0 or n_u == 0:
        return None, n_bs, n_u
    args = (ns.bs_positions[bs_in], ns.user_positions[u_in], ns.user_positions[~u_in], pathloss)
    if method == MC:
        p_over_n0 = math.inf if n0_over_p == 0 else 1.0 / n0_over_p
        cap = mc_capacity(*args, p_over_n0, trials, seed).mean
    else:
        cap = asymptotic_eigen_capacity(*args, n0_over_p)
    return cap, n_bs, n_u


def run_bounds_curve(cfg: ScenarioConfig, rj_list, betas=None) -> list:
    """Bounds and simulated centred-cluster capacity per (R_j, beta, seed)."""
    rj_list = [float(r) for r in rj_list]
    if not rj_list:
        raise ConfigError("rj_list", "must not be empty")
    for r in rj_list:
        if not (r > 0 and r <= 2 * cfg.r0_m):
            raise ConfigError("rj_list", f"values must lie in (0, 2*r0_m], got {r}")
    betas = [float(b) for b in (betas or (cfg.beta,))]
    if any(not b > 0 for b in betas):
        raise ConfigError("beta", "must be positive")
    pl = cfg.pathloss
    bounds = {r: bound_set(r, pl) for r in rj_list}
    method = "mc" if cfg.method == MC else "eigen"
    rows = []
    for beta in betas:
        for seed in cfg.seeds:
            ns = _node_set(cfg, seed, beta=beta)
            for r in rj_list:
                b = bounds[r]
                cap, n_bs, n_u = centred_cluster_capacity(ns, r, pl, method, cfg.n0_over_p, cfg.trials, seed)
                rows.append(
                    {
                        "rj_m": r,
                        "cj_max_lower": b.cj_max_lower,
                        "cj_min_lower": b.cj_min_lower,
                        "bound_mean": b.mean,
                        "q_value": b.q_value,
                        "beta": beta,
                        "seed": seed,
                        "n_bs": n_bs,
                        "n_users": n_u,
                        "c_sim": "" if cap is None else _fmt_capacity(cap),
                    }
                )
    return rows


def run_heatmap(cfg: ScenarioConfig) -> dict:
    """Per-architecture cluster tables: anchor point, radius, sizes, capacity."""
    tables = {kind: [] for kind in cfg.architectures}
    for seed in cfg.seeds:
        ns = _node_set(cfg, seed)
        for kind in cfg.architectures:
            arch = build(kind, ns, cfg.r_th_m, cfg.r_comp, seed)
            rep = evaluate_architecture(arch, cfg.pathloss, cfg.n0_over_p, cfg.method, cfg.trials, seed)
            for cl, cap in zip(arch.clusters, rep.per_cluster):
                x, y = arch.anchors[cl.id]
                tables[kind].append(
                    {
                        "seed": seed,
                        "cluster_id": cl.id,
                        "center_x_m": float(x),
                        "center_y_m": float(y),
                        "radius_m": cl.region.radius if cl.region is not None else "",
                        "n_bs": cl.n_bs,
                        "n_users": cl.n_users,
                        "capacity": _fmt_capacity(cap.capacity),
                    }
                )
    return tables


# ---------------------------------------------------------------------------
# output


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    return v


def write_table(path, rows, columns):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r[c]) for c in columns])


def write_sidecar(path, cfg: ScenarioConfig, **extra):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = {"config": cfg.as_dict(), **extra}
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


__all__ = [
    "BOUNDS_COLUMNS",
    "COMPARISON_COLUMNS",
    "ConfigError",
    "DEFAULT_R0_GRID",
    "HEATMAP_COLUMNS",
    "ScenarioConfig",
    "centred_cluster_capacity",
    "parse_config_text",
    "run_bounds_curve",
    "run_compare",
    "run_heatmap",
    "summarize_compare",
    "write_sidecar",
    "write_table",
]

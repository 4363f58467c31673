"""Regenerate the embedded circle-in-circle packing layouts.

Searches for dense packings of N unit disks inside the smallest enclosing
disk (N = 1..50) with multi-start SLSQP, then writes the best layout found
for each N to ``src/c2arch/data/packings.json``.  Slow (tens of minutes on
one core); the output is committed so the library never runs this.

    python tools/generate_packings.py [--starts 40] [--nmax 50]
    python tools/generate_packings.py --neighbours --only 31 44
    python tools/generate_packings.py --lattice
"""

import argparse
import json
from pathlib import Path

import numpy as np
from scipy.optimize import minimize

OUT = Path(__file__).resolve().parents[1] / "src" / "c2arch" / "data" / "packings.json"

# Best-known enclosing radii (unit inner disks) for comparison only.
BEST_KNOWN = {
    1: 1.0, 2: 2.0, 3: 2.154700538, 4: 2.414213562, 5: 2.701301617,
    6: 3.0, 7: 3.0, 8: 3.304764871, 9: 3.613125930, 10: 3.813026180,
    11: 3.923804400, 12: 4.029593683, 13: 4.236067977, 14: 4.328428036,
    15: 4.521356237, 16: 4.615353506, 17: 4.792033984, 18: 4.863703305,
    19: 4.863703305, 20: 5.122320581, 21: 5.252030796, 22: 5.439718612,
    23: 5.545003942, 24: 5.651661978, 25: 5.752824971, 26: 5.828176313,
    27: 5.906397934, 28: 6.014938060, 29: 6.138597388, 30: 6.197741070,
    31: 6.291502622, 32: 6.429462970, 33: 6.486703431, 34: 6.610925680,
    35: 6.697171129, 36: 6.746753388, 37: 6.758770483, 38: 6.961886965,
    39: 7.057884163, 40: 7.123846226, 41: 7.260012794, 42: 7.346796035,
    43: 7.419944123, 44: 7.497919641, 45: 7.572912326, 46: 7.650179835,
    47: 7.724170162, 48: 7.791271341, 49: 7.886870062, 50: 7.947515440,
}


def _solve(c0):
    n = len(c0)
    iu, ju = np.triu_indices(n, 1)
    t0 = float(np.max(np.sum(c0**2, axis=1))) + 1.0
    z0 = np.concatenate([c0.ravel(), [np.sqrt(t0)]])

    def unpack(z):
        return z[:-1].reshape(n, 2), z[-1]

    def obj(z):
        return z[-1]

    def obj_jac(z):
        g = np.zeros_like(z)
        g[-1] = 1.0
        return g

    def cons(z):
        c, s = unpack(z)
        d = c[iu] - c[ju]
        pair = np.sum(d**2, axis=1) - 4.0
        cont = s**2 - np.sum(c**2, axis=1)
        return np.concatenate([pair, cont])

    def cons_jac(z):
        c, s = unpack(z)
        m = len(iu)
        jac = np.zeros((m + n, 2 * n + 1))
        d = c[iu] - c[ju]
        rows = np.arange(m)
        jac[rows, 2 * iu] = 2 * d[:, 0]
        jac[rows, 2 * iu + 1] = 2 * d[:, 1]
        jac[rows, 2 * ju] = -2 * d[:, 0]
        jac[rows, 2 * ju + 1] = -2 * d[:, 1]
        rows = m + np.arange(n)
        jac[rows, 2 * np.arange(n)] = -2 * c[:, 0]
        jac[rows, 2 * np.arange(n) + 1] = -2 * c[:, 1]
        jac[rows, -1] = 2 * s
        return jac

    res = minimize(
        obj, z0, jac=obj_jac, method="SLSQP",
        constraints=[{"type": "ineq", "fun": cons, "jac": cons_jac}],
        options={"maxiter": 2000, "ftol": 1e-13},
    )
    c, s = unpack(res.x)
    return c, s


def _exact_ratio(c):
    """Enclosing radius after removing any residual overlap by uniform scaling."""
    n = len(c)
    if n == 1:
        return np.zeros((1, 2)), 1.0
    iu, ju = np.triu_indices(n, 1)
    dmin = np.min(np.linalg.norm(c[iu] - c[ju], axis=1))
    c = c * (2.0 / dmin)
    return c, float(np.max(np.linalg.norm(c, axis=1)) + 1.0)


def best_layout(n, starts, rng):
    if n == 1:
        return np.zeros((1, 2)), 1.0
    best = None
    for _ in range(starts):
        r_guess = 1.2 * np.sqrt(n)
        rad = r_guess * np.sqrt(rng.uniform(size=n))
        ang = rng.uniform(0, 2 * np.pi, size=n)
        c0 = np.column_stack([rad * np.cos(ang), rad * np.sin(ang)])
        c, _ = _solve(c0)
        c, ratio = _exact_ratio(c)
        if best is None or ratio < best[1]:
            best = (c, ratio)
    return best


def neighbour_starts(n, data, rng, jitter=0.05):
    """Starts built from the stored N+1 layout minus one disk and the N-1 layout plus one."""
    out = []
    up = data.get(str(n + 1))
    if up is not None:
        c = np.asarray(up["centers"])
        out += [np.delete(c, i, axis=0) for i in range(len(c))]
    down = data.get(str(n - 1))
    if down is not None and n > 2:
        c = np.asarray(down["centers"])
        r = np.max(np.linalg.norm(c, axis=1)) + 1.0
        for _ in range(2 * n):
            rad, ang = (r - 1.0) * np.sqrt(rng.uniform()), rng.uniform(0, 2 * np.pi)
            out.append(np.vstack([c, [rad * np.cos(ang), rad * np.sin(ang)]]))
    return [c + jitter * rng.standard_normal(c.shape) for c in out]


def lattice_layout(n):
    """N hexagonal-lattice points (spacing 2) nearest to the best of three centres."""
    m = int(np.sqrt(n)) + 3
    i, j = np.meshgrid(np.arange(-m, m + 1), np.arange(-m, m + 1), indexing="ij")
    base = np.column_stack([(2 * i + j).ravel(), (np.sqrt(3.0) * j).ravel()]).astype(float)
    best = None
    for off in ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0 / np.sqrt(3.0))):
        pts = base - np.asarray(off)
        pts = pts[np.argsort(np.hypot(pts[:, 0], pts[:, 1]), kind="stable")[:n]]
        ratio = float(np.max(np.hypot(pts[:, 0], pts[:, 1])) + 1.0)
        if best is None or ratio < best[1] - 1e-12:
            best = (pts, ratio)
    return best


def best_seeded(starts):
    best = None
    for c0 in starts:
        c, _ = _solve(c0)
        c, ratio = _exact_ratio(c)
        if best is None or ratio < best[1]:
            best = (c, ratio)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--starts", type=int, default=40)
    ap.add_argument("--nmax", type=int, default=50)
    ap.add_argument("--only", type=int, nargs="*")
    ap.add_argument("--neighbours", action="store_true", help="seed from stored N-1 / N+1 layouts")
    ap.add_argument("--lattice", action="store_true", help="try hexagonal-lattice patches")
    args = ap.parse_args()

    data = json.loads(OUT.read_text()) if OUT.exists() else {}
    ns = args.only or range(1, args.nmax + 1)
    for n in ns:
        rng = np.random.default_rng(1000 + n)
        if args.lattice:
            c, ratio = lattice_layout(n)
        elif args.neighbours:
            c, ratio = best_seeded(neighbour_starts(n, data, rng))
        else:
            c, ratio = best_layout(n, args.starts, rng)
        old = data.get(str(n))
        if old is not None and old["ratio"] <= ratio:
            print(f"N={n:2d} kept {old['ratio']:.6f} (new {ratio:.6f})", flush=True)
            continue
        data[str(n)] = {"ratio": ratio, "centers": np.round(c, 12).tolist()}
        gap = ratio / BEST_KNOWN[n] - 1
        print(f"N={n:2d} ratio={ratio:.6f} best={BEST_KNOWN[n]:.6f} gap={gap:+.2e}", flush=True)
        OUT.write_text(json.dumps(data, indent=1))


if __name__ == "__main__":
    main()

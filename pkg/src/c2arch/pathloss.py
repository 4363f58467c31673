"""Large-scale fading: squared path gain f(d) = theta * d**(-alpha).

Two parameterisations are supported. ``PowerLawParams`` is a single slope;
``ThreeSlopeParams`` switches exponent 0 / 2 / 3.5 at the near-field and
far-field boundaries ``d0`` and ``d1``. The three-slope gain is bounded by
its near-field plateau ``d1**-1.5 * d0**-2``, so it has no singularity.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ThreeSlopeParams:
    d0: float = 10.0
    d1: float = 50.0

    def __post_init__(self):
        if not (0 < self.d0 < self.d1):
            raise ValueError(f"need 0 < d0 < d1, got d0={self.d0}, d1={self.d1}")

    @property
    def plateau(self) -> float:
        return self.d1**-1.5 * self.d0**-2

    @property
    def log_ratio(self) -> float:
        """ln(d1/d0) + 7/6, the shape factor of the infinite-plane integral."""
        return np.log(self.d1 / self.d0) + 7.0 / 6.0


@dataclass(frozen=True)
class PowerLawParams:
    theta: float = 1.0
    alpha: float = 3.5

    def __post_init__(self):
        if not self.theta > 0:
            raise ValueError("theta must be positive")
        if self.alpha < 0:
            raise ValueError("alpha must be non-negative")


def gain_squared(d, params: ThreeSlopeParams):
    """Three-slope squared gain, elementwise over ``d`` (metres)."""
    d = np.asarray(d, dtype=float)
    if np.any(d < 0):
        raise ValueError("negative distance")
    d0, d1 = params.d0, params.d1
    with np.errstate(divide="ignore"):
        out = np.where(
            d > d1,
            d**-3.5,
            np.where(d > d0, d1**-1.5 * d**-2.0, params.plateau),
        )
    return out if out.ndim else float(out)


def gain_from_squared_distance(d2, params: ThreeSlopeParams) -> np.ndarray:
    """Three-slope gain from squared distances; avoids square roots in bulk sums."""
    d2 = np.asarray(d2, dtype=float)
    with np.errstate(divide="ignore"):
        out = d2**-1.75
    near = d2 <= params.d1**2
    out[near] = params.d1**-1.5 / np.maximum(d2[near], params.d0**2)
    return out


def gain_squared_powerlaw(d, params: PowerLawParams):
    d = np.asarray(d, dtype=float)
    if np.any(d < 0):
        raise ValueError("negative distance")
    if params.alpha == 0:
        out = np.full_like(d, params.theta)
    else:
        if np.any(d == 0):
            raise ValueError("singular at zero distance")
        out = params.theta * d ** (-params.alpha)
    return out if out.ndim else float(out)


def gain(d, params):
    """Dispatch on the parameter type."""
    if isinstance(params, ThreeSlopeParams):
        return gain_squared(d, params)
    if isinstance(params, PowerLawParams):
        return gain_squared_powerlaw(d, params)
    raise TypeError(f"unsupported path-loss parameters: {type(params).__name__}")


def radial_antiderivative(r, params: ThreeSlopeParams):
    """G(r) = integral_0^r f(t) t dt for the three-slope gain (exact).

    The integral of f over a polar sector of angle dphi between radii a and b
    is ``dphi * (G(b) - G(a))``.
    """
    r = np.asarray(r, dtype=float)
    d0, d1 = params.d0, params.d1
    k = d1**-1.5
    inner = 0.5 * k  # G(d0)
    mid = inner + k * np.log(d1 / d0)  # G(d1)
    rc = np.maximum(r, 1e-300)
    out = np.where(
        r <= d0,
        0.5 * params.plateau * r * r,
        np.where(
            r <= d1,
            inner + k * np.log(np.clip(rc, d0, d1) / d0),
            mid + (k - np.maximum(rc, d1) ** -1.5) / 1.5,
        ),
    )
    return out if out.ndim else float(out)


def plane_integral(params: ThreeSlopeParams) -> float:
    """Integral of f over the whole plane: 2*pi*d1**-1.5*(7/6 + ln(d1/d0))."""
    return 2 * np.pi * params.d1**-1.5 * params.log_ratio

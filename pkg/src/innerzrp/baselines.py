"""Reference formulas: Fermi/Wigner zero-range scattering and the square-well delta sequence."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DeltaSequenceDivergence

POLE_TOL = 1e-8


def wigner_sigma(a, k):
    """4 pi a^2 / (1 + a^2 k^2)."""
    a = np.asarray(a, dtype=float)
    k = np.asarray(k, dtype=float)
    out = 4 * np.pi * a**2 / (1 + a**2 * k**2)
    return out if np.ndim(out) else float(out)


def effective_range_F(a, r0, k):
    """Two-term effective-range expansion -1/a + (r0/2) k^2."""
    if np.any(np.asarray(a) == 0):
        raise ValueError("scattering length must be nonzero")
    out = -1.0 / np.asarray(a, dtype=float) + 0.5 * np.asarray(r0, dtype=float) * np.asarray(k) ** 2
    return out if np.ndim(out) else out[()]


@dataclass(frozen=True)
class DeltaSequenceParams:
    """Square well of radius eps*r0 whose depth reproduces scattering length ``a``."""

    a: float
    r0: float
    eps: float
    attractive: bool = False

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if not self.r0 > 0:
            raise ValueError(f"r0 must be positive, got {self.r0}")
        if self.a == 0:
            raise ValueError("a must be nonzero")

    @property
    def x(self) -> float:
        # eps q0 r0 with q0^2 = 3|a| / (eps^3 r0^3)
        return math.sqrt(3 * abs(self.a) / (self.eps * self.r0))


def delta_ratio(params: DeltaSequenceParams) -> float:
    """sigma / (4 pi eps^2 r0^2), i.e. (tanh x / x - 1)^2 or (tan x / x - 1)^2."""
    x = params.x
    if params.attractive:
        # distance to the nearest odd multiple of pi/2
        m = round((x - math.pi / 2) / math.pi)
        if abs(x - (math.pi / 2 + m * math.pi)) < POLE_TOL:
            raise DeltaSequenceDivergence(f"tan(x) diverges at x = {x} (eps = {params.eps})")
        t = math.tan(x)
    else:
        t = math.tanh(x)
    return (t / x - 1.0) ** 2


def delta_sigma(params: DeltaSequenceParams) -> float:
    """Zero-energy cross-section of the delta-sequence well."""
    return 4 * math.pi * (params.eps * params.r0) ** 2 * delta_ratio(params)


@dataclass(frozen=True)
class EpsSweep:
    eps: np.ndarray
    ratio: np.ndarray  # sigma / (4 pi eps^2 r0^2); nan where tan diverges
    spread: float  # max - min of ratio over the smallest-eps decade
    mean: float
    converged: bool


def _auto_num(a: float, r0: float, eps_min: float, eps_max: float, samples_per_period: int) -> int:
    # x = sqrt(3|a|/(eps r0)) moves by x/2 per unit of ln(eps); resolve one period pi
    x_max = math.sqrt(3 * abs(a) / (eps_min * r0))
    per_log = x_max / 2 * samples_per_period / math.pi
    return max(2, math.ceil(per_log * math.log(eps_max / eps_min)) + 1)


def eps_sweep(
    a: float,
    r0: float,
    attractive: bool,
    eps_min: float = 1e-6,
    eps_max: float = 1e-1,
    num: int | None = None,
    samples_per_period: int = 200,
) -> EpsSweep:
    """Evaluate the ratio on a log grid and test for a limit as eps -> 0.

    The sequence is declared non-convergent when, over the last decade
    [eps_min, 10 eps_min], max - min of the ratio exceeds its mean. By default
    the grid resolves the oscillation of tan(x) at eps_min with
    ``samples_per_period`` points; a coarse grid steps over the tan poles and
    cannot see the divergence.
    """
    DeltaSequenceParams(a, r0, eps_min, attractive)
    if not eps_max > eps_min:
        raise ValueError("eps_max must exceed eps_min")
    if num is None:
        num = _auto_num(a, r0, eps_min, eps_max, samples_per_period)
    eps = np.logspace(math.log10(eps_min), math.log10(eps_max), num)
    x = np.sqrt(3 * abs(a) / (eps * r0))
    if attractive:
        t = np.tan(x)
        r = np.remainder(x - np.pi / 2, np.pi)
        off = np.minimum(r, np.pi - r)
        ratio = np.where(off < POLE_TOL, np.nan, (t / x - 1.0) ** 2)
    else:
        ratio = (np.tanh(x) / x - 1.0) ** 2
    tail = ratio[(eps <= 10 * eps_min) & np.isfinite(ratio)]
    spread = float(np.max(tail) - np.min(tail))
    mean = float(np.mean(tail))
    return EpsSweep(eps, ratio, spread, mean, spread <= mean)

"""Phase shift, S-matrix, amplitudes and cross-sections on the real k axis.

Every hot path uses the polynomial form of F, which is regular at the inner
resonances. The fraction form appears only in :func:`amplitudes` and the
boundary identity, both of which work at 128 bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _hp
from .errors import InconsistentParameters
from .model import (
    ExtensionParameters,
    InnerSpectrum,
    ReducedParameters,
    _hp_q,
    f_polynomial,
    f_scale,
)


@dataclass(frozen=True)
class ScatteringPoint:
    k: float
    F: float
    delta: float
    S: complex
    f: complex
    sigma: float


@dataclass(frozen=True)
class AmplitudePair:
    T: complex
    T_E: complex
    mismatch: float = 0.0  # relative gap between closed form and 2x2 solve


@dataclass(frozen=True)
class Sweep:
    """Columns of a real-k sweep; ``delta`` is unwrapped along ``k``."""

    k: np.ndarray
    F: np.ndarray
    delta: np.ndarray
    S: np.ndarray
    f: np.ndarray
    sigma: np.ndarray


def _principal_delta(F, k):
    # delta in (-pi/2, pi/2] with tan(delta) = k / F; F = 0 gives pi/2
    F = np.asarray(F, dtype=float)
    k = np.asarray(k, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.arctan(k / F)
    out = np.where(F == 0, np.pi / 2, out)
    return np.where(k == 0, 0.0, out)


def _columns(k: np.ndarray, reduced: ReducedParameters, spectrum: InnerSpectrum):
    F = np.asarray(f_polynomial(k, reduced, spectrum), dtype=float)
    denom = F - 1j * k
    f = 1.0 / denom
    S = (F + 1j * k) / denom
    sigma = 4 * np.pi * np.abs(f) ** 2
    return F, _principal_delta(F, k), S, f, sigma


def evaluate(k: float, reduced: ReducedParameters, spectrum: InnerSpectrum) -> ScatteringPoint:
    """Scattering data at real k >= 0; k = 0 is the analytic limit S = 1, sigma = 4 pi a^2.

    ``delta`` is the principal value in (-pi/2, pi/2]; use :func:`sweep` for a
    phase that is continuous in k.
    """
    k = float(k)
    if k < 0 or not math.isfinite(k):
        raise ValueError(f"k must be real and nonnegative, got {k}")
    F, delta, S, f, sigma = _columns(np.array([k]), reduced, spectrum)
    return ScatteringPoint(k, float(F[0]), float(delta[0]), complex(S[0]), complex(f[0]), float(sigma[0]))


def sweep(k, reduced: ReducedParameters, spectrum: InnerSpectrum) -> Sweep:
    """Vectorized evaluation over a sorted k grid, then a sequential unwrap of delta.

    Grid points are evaluated independently, so the columns do not depend on
    evaluation order; only the unwrap pass runs along the grid.
    """
    k = np.asarray(k, dtype=float)
    if k.ndim != 1 or np.any(k < 0) or np.any(np.diff(k) <= 0):
        raise ValueError("k grid must be one-dimensional, nonnegative and increasing")
    F, delta, S, f, sigma = _columns(k, reduced, spectrum)
    delta = np.unwrap(delta, period=np.pi)
    return Sweep(k, F, delta, S, f, sigma)


def sigma_explicit(k, reduced: ReducedParameters, spectrum: InnerSpectrum):
    """4 pi a0^2 / (1 + a0^2 k^2 + 2 alpha Pi + alpha^2 Pi^2), Pi = prod_s (a0^2 k_s^2 - a0^2 k^2)."""
    a0 = reduced.a0
    k = np.asarray(k, dtype=float)
    ks2 = np.asarray(spectrum.ks, dtype=float) ** 2
    prod = np.prod(a0**2 * ks2 - a0**2 * k[..., None] ** 2, axis=-1)
    alpha = reduced.alpha
    out = 4 * np.pi * a0**2 / (1 + a0**2 * k**2 + 2 * alpha * prod + alpha**2 * prod**2)
    return out if np.ndim(out) else out[()]


def resonance_cross_section(s: int, reduced: ReducedParameters, spectrum: InnerSpectrum) -> float:
    """Wigner value 4 pi a0^2 / (1 + a0^2 k_s^2) at the s-th resonance (1-based)."""
    if not 1 <= s <= spectrum.n:
        raise IndexError(f"resonance index {s} outside 1..{spectrum.n}")
    a0 = reduced.a0
    ks = spectrum.ks[s - 1]
    return 4 * math.pi * a0**2 / (1 + a0**2 * ks**2)


def _hp_amplitudes(k: float, ext: ExtensionParameters, spectrum: InnerSpectrum):
    # closed forms at 128 bits; returns (T, T_E, Q, sqrt_lambda) as mpc values
    spec = spectrum.with_k0(ext.k0)
    k0 = _hp.real(ext.k0)
    root = _hp.real(k) / k0
    lam = root**2
    four_pi = 4 * _hp.pi()
    g00 = _hp.real(ext.gamma00)
    if ext.n == 0:
        T = 1 / (g00 - 1j * root / four_pi)
        return T, _hp.cplx(0), None, root
    lams = spec._hp_lambdas()
    if any(lam == ls for ls in lams):
        # Q has a pole: the inner channel decouples and T_E -> 0
        T = 1 / (g00 - 1j * root / four_pi)
        return T, _hp.cplx(0), None, root
    q = _hp_q(_hp.cplx(lam), lams, ext.P)
    d = _hp.real(ext.gamma11) - q
    if d == 0:
        raise InconsistentParameters(f"gamma11 - Q vanishes at k = {k}")
    T = 1 / (g00 - _hp.real(ext.gamma01_abs2) / d - 1j * root / four_pi)
    T_E = ext.gamma10 / (q - _hp.real(ext.gamma11)) * T
    return T, T_E, q, root


def amplitudes(k: float, ext: ExtensionParameters, spectrum: InnerSpectrum) -> AmplitudePair:
    """Outer amplitude T and inner amplitude T_E at real k >= 0.

    The closed forms are evaluated at 128 bits and cross-checked against a
    direct double-precision solve of the 2x2 boundary system
    [[gamma00 - i sqrt(lam)/4pi, gamma01], [gamma10, gamma11 - Q]] (T, T_E) = (1, 0).
    """
    if k < 0:
        raise ValueError("amplitudes are defined for real k >= 0")
    with _hp.context():
        T, T_E, q, root = _hp_amplitudes(k, ext, spectrum)
        T_c, T_E_c = complex(T), complex(T_E)
        if q is None:
            return AmplitudePair(T_c, T_E_c, 0.0)
        g10 = float(ext.gamma10)
        system = np.array(
            [
                [float(ext.gamma00) - 1j * float(root) / (4 * math.pi), g10],
                [g10, complex(_hp.real(ext.gamma11) - q)],
            ]
        )
    if abs(np.linalg.det(system)) == 0:
        raise InconsistentParameters(f"boundary system is singular at k = {k}")
    solved = np.linalg.solve(system, np.array([1.0, 0.0], dtype=complex))
    scale = max(abs(T_c), abs(T_E_c))
    mismatch = max(abs(solved[0] - T_c), abs(solved[1] - T_E_c)) / scale
    return AmplitudePair(T_c, T_E_c, float(mismatch))


def boundary_identity_residual(
    k: float, ext: ExtensionParameters, reduced: ReducedParameters, spectrum: InnerSpectrum, relative: bool = True
) -> float:
    """|4 pi / T + i sqrt(lam) - F(k)/k0|, with A = T and B = 1 + i sqrt(lam) T / 4 pi.

    With ``relative`` the residual is divided by f_scale(k)/k0, the size of the
    two terms that make up F; dividing by |F| itself is meaningless near its zeros.
    """
    with _hp.context():
        T, _, _, root = _hp_amplitudes(k, ext, spectrum)
        lhs = 4 * _hp.pi() / T + 1j * root
        rhs = _hp.cplx(complex(f_polynomial(k, reduced, spectrum))) / _hp.real(ext.k0)
        res = float(abs(lhs - rhs))
    if relative:
        res /= float(f_scale(k, reduced, spectrum)) / ext.k0
    return res

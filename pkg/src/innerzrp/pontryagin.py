"""Finite-dimensional indefinite-metric algebra for the inner space.

The inner space E is C^N with the g-dot product

    [x, y] = sum_s g_ss * conj(x_s) * y_s ,

anti-linear in the first slot. The inner Hamiltonian B is diagonal, so every
inverse below is an elementwise division.
"""

from __future__ import annotations

import warnings
from functools import reduce
from operator import mul
from dataclasses import dataclass, field

import numpy as np

from .errors import ExtensionSingularity, InvalidSpectrum, SpectralSingularity

_SINGULAR_RTOL = 1e-14
NORM_TOL = 1e-12


@dataclass(frozen=True)
class MetricSignature:
    """Diagonal of the metric tensor g, entries +1 or -1."""

    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if any(s not in (1, -1) for s in signs):
            raise ValueError(f"metric entries must be +1 or -1, got {self.signs}")
        object.__setattr__(self, "signs", signs)

    def __len__(self) -> int:
        return len(self.signs)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.signs, dtype=float)


@dataclass(frozen=True)
class SymplecticCoordinates:
    xi_plus: complex
    xi_minus: complex


@dataclass(frozen=True)
class DefectBasis:
    w_plus: np.ndarray
    w_minus: np.ndarray
    e_prime: np.ndarray


@dataclass(frozen=True)
class GOperatorRealization:
    """Diagonal g-Hermitian operator B with generating vector e and boundary parameter Gamma.

    Parameters
    ----------
    eigenvalues : array_like
        Diagonal of B (dimensionless), strictly increasing and positive.
    g : MetricSignature
    e : array_like
        Deficiency (generating) vector; no component may vanish.
    gamma : complex or (2, 2) array
        Boundary parameter. Only the scalar (rank-one) form is usable by
        :func:`krein_resolvent`.
    """

    eigenvalues: np.ndarray
    g: MetricSignature
    e: np.ndarray
    gamma: complex | np.ndarray = 0.0
    B: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        lam = np.asarray(self.eigenvalues, dtype=float).copy()
        e = np.asarray(self.e, dtype=complex).copy()
        if lam.ndim != 1 or e.shape != lam.shape or len(self.g) != lam.size:
            raise ValueError("eigenvalues, e and g must share one dimension N")
        if np.any(lam <= 0) or np.any(np.diff(lam) <= 0):
            raise InvalidSpectrum(f"eigenvalues must be positive and strictly increasing: {lam}")
        if np.any(e == 0):
            raise ValueError("generating vector e must have no zero component")
        gamma = self.gamma
        if np.ndim(gamma) == 2:
            gamma = np.asarray(gamma, dtype=complex).copy()
            if gamma.shape != (2, 2) or not np.allclose(gamma, gamma.conj().T):
                raise ValueError("matrix Gamma must be a Hermitian 2x2 block")
            gamma.flags.writeable = False
        elif np.ndim(gamma) == 0:
            gamma = complex(gamma)
        else:
            raise ValueError("Gamma must be a scalar or a 2x2 block")
        lam.flags.writeable = False
        e.flags.writeable = False
        B = np.diag(lam)
        B.flags.writeable = False
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "B", B)

    @property
    def n(self) -> int:
        return self.eigenvalues.size


def g_dot(x, y, g: MetricSignature) -> complex:
    """Indefinite dot product [x, y], anti-linear in ``x``."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.shape != y.shape or x.shape != (len(g),):
        raise ValueError(f"dimension mismatch: {x.shape}, {y.shape}, metric of length {len(g)}")
    return complex(np.sum(g.as_array() * np.conj(x) * y))


def defect_basis(realization: GOperatorRealization) -> DefectBasis:
    """Symplectic basis w+ = B(B-i)^-1 e, w- = -(B-i)^-1 e and Cayley image e'."""
    lam = realization.eigenvalues
    e = realization.e
    shifted = e / (lam - 1j)
    return DefectBasis(
        w_plus=lam * shifted,
        w_minus=-shifted,
        e_prime=(lam + 1j) * shifted,
    )


def _adjoint_on_defect(c: SymplecticCoordinates, basis: DefectBasis) -> np.ndarray:
    # B0^+ w+ = w-, B0^+ w- = -w+
    return c.xi_plus * basis.w_minus - c.xi_minus * basis.w_plus


def _defect_vector(c: SymplecticCoordinates, basis: DefectBasis) -> np.ndarray:
    return c.xi_plus * basis.w_plus + c.xi_minus * basis.w_minus


def symplectic_form(x_coords: SymplecticCoordinates, y_coords: SymplecticCoordinates) -> complex:
    """Closed form xi+^x conj(xi-^y) - xi-^x conj(xi+^y)."""
    return complex(
        x_coords.xi_plus * np.conj(y_coords.xi_minus)
        - x_coords.xi_minus * np.conj(y_coords.xi_plus)
    )


def boundary_form(
    x_coords: SymplecticCoordinates,
    y_coords: SymplecticCoordinates,
    basis: DefectBasis,
    realization: GOperatorRealization,
) -> complex:
    """Boundary form of the adjoint operator evaluated on defect vectors.

    The form is taken linear in ``x`` and anti-linear in ``y``,
    K(x, y) = [y, B0^+ x] - [B0^+ y, x], which is the convention under which
    it reduces to ``[e, e] * symplectic_form(x, y)``. A warning is issued when
    ``e`` is not normalized to [e, e] = +-1.
    """
    g = realization.g
    ee = g_dot(realization.e, realization.e, g).real
    if abs(abs(ee) - 1.0) > NORM_TOL:
        warnings.warn(
            f"generating vector not normalized: [e,e] = {ee:.17g}; the form carries this factor",
            RuntimeWarning,
            stacklevel=2,
        )
    x = _defect_vector(x_coords, basis)
    y = _defect_vector(y_coords, basis)
    bx = _adjoint_on_defect(x_coords, basis)
    by = _adjoint_on_defect(y_coords, basis)
    return g_dot(y, bx, g) - g_dot(by, x, g)


def _check_regular(lam: complex, eigenvalues: np.ndarray) -> None:
    gaps = np.abs(eigenvalues - lam)
    if np.any(gaps <= _SINGULAR_RTOL * np.maximum(1.0, eigenvalues)):
        raise SpectralSingularity(f"lambda = {lam} coincides with an eigenvalue of B")


def q_matrix(lam: complex, realization: GOperatorRealization) -> complex:
    """Krein Q-function [e, (I + lam B)(B - lam)^-1 e]."""
    lam = complex(lam)
    ev = realization.eigenvalues
    _check_regular(lam, ev)
    e = realization.e
    return g_dot(e, (1.0 + lam * ev) / (ev - lam) * e, realization.g)


def krein_resolvent(lam: complex, f, realization: GOperatorRealization) -> np.ndarray:
    """Resolvent of the rank-one extension B_Gamma applied to ``f``.

    u = (B - lam)^-1 f + (B + i)(B - lam)^-1 e * [e, (B - i)(B - lam)^-1 f] / ([e,e] Gamma - Q(lam))

    The g-projection onto span{e} is x -> [e, x] e / [e, e], so an
    anti-normalized e ([e, e] = -1) is handled without sign errors.
    """
    if np.ndim(realization.gamma) != 0:
        raise ValueError("Krein resolvent is implemented for scalar (rank-one) Gamma only")
    lam = complex(lam)
    f = np.asarray(f, dtype=complex)
    ev = realization.eigenvalues
    if f.shape != ev.shape:
        raise ValueError(f"f has shape {f.shape}, expected {ev.shape}")
    g = realization.g
    e = realization.e
    q = q_matrix(lam, realization)
    ee = g_dot(e, e, g).real
    denom = ee * realization.gamma - q
    if abs(denom) <= 1e-14 * max(1.0, abs(q)):
        raise ExtensionSingularity(f"Gamma - Q(lambda) vanishes at lambda = {lam}")
    r0f = f / (ev - lam)
    coupling = g_dot(e, (ev - 1j) * r0f, g) / denom
    return r0f + (ev + 1j) / (ev - lam) * e * coupling


def extension_eigenvalues(realization: GOperatorRealization) -> np.ndarray:
    """Real and complex solutions of [e,e] Gamma = Q(lambda), the poles of the Krein resolvent.

    Multiplies through by prod_t (lambda_t - lambda) and solves the resulting
    degree-N polynomial.
    """
    if np.ndim(realization.gamma) != 0:
        raise ValueError("scalar Gamma required")
    P = np.polynomial.Polynomial
    ev = realization.eigenvalues
    weights = realization.g.as_array() * np.abs(realization.e) ** 2
    ee = float(np.sum(weights))
    factors = [P([t, -1.0]) for t in ev]
    total = ee * realization.gamma * reduce(mul, factors, P([1.0]))
    for s, (lam_s, w) in enumerate(zip(ev, weights)):
        rest = reduce(mul, (fac for t, fac in enumerate(factors) if t != s), P([1.0]))
        total = total - w * P([1.0, lam_s]) * rest
    return np.sort_complex(total.roots())


def resolvent_identity_residual(lam: complex, mu: complex, f, realization: GOperatorRealization) -> float:
    """Relative residual of R(lam) f - R(mu) f = (lam - mu) R(lam) R(mu) f."""
    r_lam = krein_resolvent(lam, f, realization)
    r_mu = krein_resolvent(mu, f, realization)
    rr = (lam - mu) * krein_resolvent(lam, r_mu, realization)
    scale = np.linalg.norm(r_lam) + np.linalg.norm(r_mu) + np.linalg.norm(rr)
    if scale == 0:
        return 0.0
    return float(np.linalg.norm(r_lam - r_mu - rr) / scale)

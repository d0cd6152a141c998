"""Poles and zeros of S(k) = (F + ik)/(F - ik) in the complex k plane.

With k = i kappa the pole condition F(k) - ik = 0 becomes the real polynomial

    alpha prod_s (a0^2 k_s^2 + a0^2 kappa^2) - a0 kappa + 1 = 0

of degree 2N; zeros of S flip the sign of the linear term. Roots come from
companion-matrix eigenvalues and are polished with Newton's method at 128
bits. Near-coincident eigenvalues are merged into one cluster and polished on
the (m-1)-th derivative, which has a simple root at an m-fold root of the
polynomial.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import _hp
from .model import ExtensionParameters, InnerSpectrum, ReducedParameters, denominator, f_scale

CLUSTER_RTOL = 1e-6
MAX_NEWTON = 50
RESIDUAL_RTOL = 1e-10


class PoleKind(str, enum.Enum):
    BOUND = "Bound"
    VIRTUAL = "Virtual"
    METASTABLE = "Metastable"
    TRAPPING = "Trapping"
    UNPHYSICAL = "UnphysicalUpperPole"


class UnphysicalPoleWarning(UserWarning):
    """A pole off the imaginary axis in the upper half plane."""


@dataclass(frozen=True)
class Root:
    """One distinct root in kappa with its multiplicity and polish diagnostics."""

    kappa: complex
    multiplicity: int
    converged: bool
    residual: float  # |P(kappa)| / sum_i |c_i| |kappa|^i

    @property
    def k(self) -> complex:
        return 1j * self.kappa


@dataclass(frozen=True)
class PoleRecord:
    k: complex
    kappa: complex
    kind: PoleKind
    E: complex
    E_prime: float
    Gamma_n: float  # -(hbar^2/2mu) p q
    Gamma_k2: float  # from E = E' - i Gamma/2, i.e. -4 (hbar^2/2mu) p q
    multiplicity: int = 1
    partner: complex | None = None  # mirror pole -conj(k) for Metastable/Trapping
    converged: bool = True


@dataclass(frozen=True)
class PoleZeroReport:
    poles: list[PoleRecord]
    zeros: list[complex]
    symmetry_residuals: np.ndarray = field(repr=False)

    @property
    def max_symmetry_residual(self) -> float:
        return float(np.max(self.symmetry_residuals)) if self.symmetry_residuals.size else 0.0


def _hp_coefficients(reduced: ReducedParameters, spectrum: InnerSpectrum, sign: int) -> list:
    # ascending coefficients in kappa of alpha prod(a0^2 k_s^2 + a0^2 kappa^2) + sign a0 kappa + 1
    a0 = _hp.real(reduced.a0)
    a02 = a0 * a0
    prod = [_hp.real(1)]  # in powers of kappa^2
    for k in spectrum.ks:
        c = a02 * _hp.real(k) ** 2
        nxt = [_hp.real(0)] * (len(prod) + 1)
        for i, v in enumerate(prod):
            nxt[i] += c * v
            nxt[i + 1] += a02 * v
        prod = nxt
    alpha = _hp.real(reduced.alpha)
    coeffs = [_hp.real(0)] * max(2, 2 * len(prod) - 1)
    for i, v in enumerate(prod):
        coeffs[2 * i] += alpha * v
    coeffs[0] += 1
    coeffs[1] += sign * a0
    while len(coeffs) > 2 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def pole_polynomial(reduced: ReducedParameters, spectrum: InnerSpectrum) -> np.ndarray:
    """Ascending real coefficients in kappa of alpha prod_s(a0^2 k_s^2 + a0^2 kappa^2) - a0 kappa + 1."""
    with _hp.context():
        return np.array([float(c) for c in _hp_coefficients(reduced, spectrum, -1)])


def zero_polynomial(reduced: ReducedParameters, spectrum: InnerSpectrum) -> np.ndarray:
    """Same as :func:`pole_polynomial` with +a0 kappa: the roots of F(k) + ik."""
    with _hp.context():
        return np.array([float(c) for c in _hp_coefficients(reduced, spectrum, +1)])


def _derivative(coeffs: list, order: int) -> list:
    for _ in range(order):
        coeffs = [i * c for i, c in enumerate(coeffs)][1:]
    return coeffs


def _horner(coeffs: list, z):
    acc = _hp.cplx(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _scale(coeffs: list, z) -> object:
    r = abs(z)
    return _hp.fsum(abs(c) * r**i for i, c in enumerate(coeffs))


def _newton(coeffs: list, z0: complex):
    d = _derivative(coeffs, 1)
    z = _hp.cplx(z0)
    for _ in range(MAX_NEWTON):
        p = _horner(coeffs, z)
        dp = _horner(d, z)
        if dp == 0:
            break
        step = p / dp
        z = z - step
        if abs(step) <= 1e-30 * max(1, abs(z)):
            break
    return z


def _cluster(roots: np.ndarray) -> list[list[int]]:
    # single-linkage grouping of companion eigenvalues closer than CLUSTER_RTOL * scale
    n = len(roots)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            scale = max(1.0, abs(roots[i]), abs(roots[j]))
            if abs(roots[i] - roots[j]) < CLUSTER_RTOL * scale:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _symmetrize(roots: list[Root]) -> list[Root]:
    # real polynomial: snap near-real roots onto the axis, average conjugate pairs exactly
    out, upper, lower = [], [], []
    for r in roots:
        z = r.kappa
        if abs(z.imag) <= 1e-9 * max(1.0, abs(z)):
            out.append(Root(complex(z.real, 0.0), r.multiplicity, r.converged, r.residual))
        elif z.imag > 0:
            upper.append(r)
        else:
            lower.append(r)
    if len(upper) != len(lower):
        return out + upper + lower
    if upper:
        cost = np.abs(np.array([u.kappa for u in upper])[:, None] - np.conj([l.kappa for l in lower])[None, :])
        rows, cols = linear_sum_assignment(cost)
        for i, j in zip(rows, cols):
            u, l = upper[i], lower[j]
            z = 0.5 * (u.kappa + np.conj(l.kappa))
            mult = max(u.multiplicity, l.multiplicity)
            conv = u.converged and l.converged
            res = max(u.residual, l.residual)
            out.append(Root(complex(z), mult, conv, res))
            out.append(Root(complex(np.conj(z)), mult, conv, res))
    return out


def _polish(coeffs_hp: list, start: complex, m: int) -> Root:
    z = _newton(_derivative(coeffs_hp, m - 1), start)
    res = float(abs(_horner(coeffs_hp, z)) / _scale(coeffs_hp, z))
    return Root(complex(z), m, res < RESIDUAL_RTOL, res)


def solve_roots(coeffs_hp: list) -> list[Root]:
    """Distinct roots of a real polynomial (ascending 128-bit coefficients), sorted by (Re, Im) of k = i kappa.

    An m-fold root spreads the companion eigenvalues by about eps^(1/m), which
    exceeds the cluster tolerance for m >= 3; a first polish pass pulls such
    copies together, so clustering is repeated on the polished values.
    """
    coeffs_f = np.array([float(c) for c in coeffs_hp])
    raw = np.polynomial.polynomial.polyroots(coeffs_f)
    first = [_polish(coeffs_hp, complex(np.mean(raw[g])), len(g)) for g in _cluster(raw)]
    centers = np.array([r.kappa for r in first])
    found = []
    for group in _cluster(centers):
        if len(group) == 1:
            found.append(first[group[0]])
            continue
        m = sum(first[i].multiplicity for i in group)
        found.append(_polish(coeffs_hp, complex(np.mean(centers[group])), m))
    roots = _symmetrize(found)
    return sorted(roots, key=lambda r: (r.k.real, r.k.imag))


def _expand(roots: list[Root]) -> list[complex]:
    return [r.k for r in roots for _ in range(r.multiplicity)]


def pole_roots(reduced: ReducedParameters, spectrum: InnerSpectrum) -> list[Root]:
    with _hp.context():
        return solve_roots(_hp_coefficients(reduced, spectrum, -1))


def zero_roots(reduced: ReducedParameters, spectrum: InnerSpectrum) -> list[Root]:
    with _hp.context():
        return solve_roots(_hp_coefficients(reduced, spectrum, +1))


def find_poles(reduced: ReducedParameters, spectrum: InnerSpectrum) -> list[complex]:
    """All 2N poles (1 for N = 0) of S as wave numbers k = i kappa, repeated by multiplicity.

    A root whose polish did not converge is still returned; see
    :func:`pole_roots` for the per-root flags.
    """
    return _expand(pole_roots(reduced, spectrum))


def find_zeros(reduced: ReducedParameters, spectrum: InnerSpectrum) -> list[complex]:
    """Roots of F(k) + ik, repeated by multiplicity."""
    return _expand(zero_roots(reduced, spectrum))


def _axis_tol(k: complex) -> float:
    return 1e-9 * abs(k) + 1e-12


def _kind(k: complex) -> PoleKind:
    p, q = k.real, k.imag
    if abs(p) <= _axis_tol(k):
        if q > 0:
            return PoleKind.BOUND
        if q < 0:
            return PoleKind.VIRTUAL
        return PoleKind.UNPHYSICAL
    if q < 0:
        return PoleKind.METASTABLE if p > 0 else PoleKind.TRAPPING
    return PoleKind.UNPHYSICAL


def classify(poles, energy_scale: float = 1.0) -> list[PoleRecord]:
    """Classify poles k = p + iq by quadrant; ``energy_scale`` is hbar^2/2mu.

    ``poles`` may be plain complex numbers (repeats count as multiplicity) or
    :class:`Root` objects. Upper-half-plane poles off the axis are kept with
    kind ``UnphysicalUpperPole`` and an :class:`UnphysicalPoleWarning`.
    """
    if energy_scale <= 0:
        raise ValueError("energy_scale must be positive")
    items = []
    for p in poles:
        if isinstance(p, Root):
            items.append((p.k, p.multiplicity, p.converged))
            continue
        z = complex(p)
        for i, (k, m, c) in enumerate(items):
            if abs(k - z) < CLUSTER_RTOL * max(1.0, abs(z)):
                items[i] = (k, m + 1, c)
                break
        else:
            items.append((z, 1, True))
    records = []
    for k, mult, conv in items:
        kind = _kind(k)
        p, q = k.real, k.imag
        if kind in (PoleKind.BOUND, PoleKind.VIRTUAL):
            k = complex(0.0, q)
            p = 0.0
        E = energy_scale * k * k
        partner = None
        if kind in (PoleKind.METASTABLE, PoleKind.TRAPPING):
            partner = complex(-p, q)
        elif kind is PoleKind.UNPHYSICAL:
            warnings.warn(f"pole at k = {k} lies in the upper half plane off the axis", UnphysicalPoleWarning, stacklevel=2)
        records.append(
            PoleRecord(
                k=k,
                kappa=-1j * k,
                kind=kind,
                E=E,
                E_prime=energy_scale * (p * p - q * q),
                Gamma_n=-energy_scale * p * q + 0.0,
                Gamma_k2=-4 * energy_scale * p * q + 0.0,
                multiplicity=mult,
                partner=partner,
                converged=conv,
            )
        )
    return sorted(records, key=lambda r: (r.k.real, r.k.imag))


def match_residuals(a: list[complex], b: list[complex]) -> np.ndarray:
    """Optimal multiset matching of ``a`` against ``b``; residuals |a_i - b_j| / max(1, |a_i|)."""
    if len(a) != len(b):
        return np.array([np.inf])
    if not a:
        return np.zeros(0)
    A = np.asarray(a, dtype=complex)
    B = np.asarray(b, dtype=complex)
    cost = np.abs(A[:, None] - B[None, :])
    rows, cols = linear_sum_assignment(cost)
    return cost[rows, cols] / np.maximum(1.0, np.abs(A[rows]))


def pole_zero_report(reduced: ReducedParameters, spectrum: InnerSpectrum, energy_scale: float = 1.0) -> PoleZeroReport:
    roots = pole_roots(reduced, spectrum)
    with warnings.catch_warnings():
        # the records carry the kind; no need to warn twice
        warnings.simplefilter("ignore", UnphysicalPoleWarning)
        poles = classify(roots, energy_scale)
    zeros = find_zeros(reduced, spectrum)
    residuals = match_residuals(zeros, [np.conj(k) for k in _expand(roots)])
    return PoleZeroReport(poles, zeros, residuals)


def dispersion_residual(
    k: complex, ext: ExtensionParameters, reduced: ReducedParameters, spectrum: InnerSpectrum
) -> float:
    """Relative residual of i sqrt(lam)/4pi = gamma00 - |gamma01|^2 / (gamma11 - Q(lam)), lam = (k/k0)^2.

    For a pole k = i kappa on the positive imaginary axis, sqrt(lam) = i kappa/k0
    (Im sqrt >= 0). The residual is scaled by f_scale(k) / (4 pi k0).
    """
    k = complex(k)
    with _hp.context():
        k0 = _hp.real(ext.k0)
        four_pi = 4 * _hp.pi()
        root = _hp.cplx(k) / k0
        if root.imag < 0:
            root = -root
        lhs = 1j * root / four_pi
        rhs = _hp.real(ext.gamma00)
        if ext.n:
            d = denominator(complex(root**2), ext, spectrum.with_k0(ext.k0))
            rhs = rhs - _hp.real(ext.gamma01_abs2) / d
        res = float(abs(lhs - rhs))
    scale = float(f_scale(k, reduced, spectrum)) / (4 * math.pi * ext.k0)
    return res / scale

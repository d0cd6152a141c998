"""Scalar building blocks of the model: weights, metric, Q-function and F(k) = k cot(delta).

Two representations of F are provided. ``f_polynomial`` is the entire form
eps - gamma * prod_s (k_s^2 - k^2) used on every hot path. ``f_fraction`` is the
boundary-parameter form 4 pi k0 [gamma00 - |gamma01|^2 / (gamma11 - Q)] and is
evaluated at 128 bits (see ``_hp``); it serves as the independent check of the
analyticity construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np
from gmpy2 import mpfr

from . import _hp
from .errors import InconsistentParameters, InvalidSpectrum, NonGenericSpectrum, SpectralSingularity
from .pontryagin import MetricSignature

GAP_RTOL = 1e-9
NONDEG_RTOL = 1e-12


@dataclass(frozen=True)
class InnerSpectrum:
    """Resonance wave numbers k_1 < ... < k_N and the reference wave number k0.

    ``k0`` may be left unset until a model is built (the fitting module then
    defaults it to 1/|a0|); anything that needs lambda_s = (k_s/k0)^2 calls
    :meth:`require_k0`.
    """

    ks: tuple[float, ...]
    k0: float | None = None

    def __post_init__(self):
        ks = tuple(float(k) for k in self.ks)
        if any(not math.isfinite(k) or k <= 0 for k in ks):
            raise InvalidSpectrum(f"resonance wave numbers must be positive and finite: {ks}")
        for lo, hi in zip(ks, ks[1:]):
            if hi - lo <= GAP_RTOL * hi:
                raise InvalidSpectrum(f"resonance wave numbers must be strictly increasing and separated: {ks}")
        if self.k0 is not None and not (math.isfinite(self.k0) and self.k0 > 0):
            raise InvalidSpectrum(f"k0 must be positive, got {self.k0}")
        object.__setattr__(self, "ks", ks)
        if self.k0 is not None:
            object.__setattr__(self, "k0", float(self.k0))

    @classmethod
    def from_lambdas(cls, lambdas, k0: float = 1.0) -> InnerSpectrum:
        return cls(tuple(k0 * math.sqrt(lam) for lam in lambdas), k0)

    @property
    def n(self) -> int:
        return len(self.ks)

    def require_k0(self) -> float:
        if self.k0 is None:
            raise ValueError("this operation needs the reference wave number k0")
        return self.k0

    def with_k0(self, k0: float) -> InnerSpectrum:
        return InnerSpectrum(self.ks, k0)

    @property
    def lambdas(self) -> np.ndarray:
        return (np.asarray(self.ks) / self.require_k0()) ** 2

    def _hp_lambdas(self) -> list:
        k0 = _hp.real(self.require_k0())
        return [(_hp.real(k) / k0) ** 2 for k in self.ks]


@dataclass(frozen=True)
class ReducedParameters:
    """Bare scattering length a0, coupling alpha and the derived eps = -1/a0, gamma = alpha a0^(2N-1)."""

    a0: float
    alpha: float
    epsilon: float
    gamma_coef: float

    def __post_init__(self):
        if self.a0 == 0 or not math.isfinite(self.a0):
            raise ValueError(f"a0 must be finite and nonzero, got {self.a0}")

    @classmethod
    def from_bare(cls, a0: float, alpha: float, n: int) -> ReducedParameters:
        a0 = float(a0)
        if a0 == 0:
            raise ValueError("a0 must be finite and nonzero")
        return cls(a0, float(alpha), -1.0 / a0, float(alpha) * a0 ** (2 * n - 1))


@dataclass(frozen=True)
class ExtensionParameters:
    """Operator-extension parameters of an analytic model.

    Numeric fields are 128-bit ``mpfr`` values: the fraction form of F loses
    roughly log10 of the spectrum's Lebesgue constant in digits, so double
    weights are not accurate enough to reproduce the polynomial form.
    ``to_dict`` gives plain floats. For N = 0 only ``gamma00`` and ``k0``
    carry information.
    """

    Lambda: mpfr | None
    P: tuple
    g: MetricSignature
    e_abs2: tuple
    gamma00: mpfr
    gamma01_abs2: mpfr
    gamma11: mpfr | None
    e_norm: mpfr | None
    k0: float

    def __post_init__(self):
        n = len(self.P)
        if len(self.g) != n or len(self.e_abs2) != n:
            raise ValueError("P, g and e_abs2 must have equal length")

    @property
    def n(self) -> int:
        return len(self.P)

    @property
    def gamma10(self) -> mpfr:
        # only |gamma01| is fixed by the model; the phase is chosen real positive
        with _hp.context():
            return gmpy2.sqrt(_hp.real(self.gamma01_abs2))

    def to_dict(self) -> dict:
        def num(x):
            return None if x is None else float(x)

        return {
            "Lambda": num(self.Lambda),
            "P": [float(p) for p in self.P],
            "g": list(self.g.signs),
            "e_abs2": [float(v) for v in self.e_abs2],
            "gamma00": float(self.gamma00),
            "gamma01_abs2": float(self.gamma01_abs2),
            "gamma11": num(self.gamma11),
            "e_norm": num(self.e_norm),
            "k0": self.k0,
        }


def _gap_products(lams: list) -> list:
    return [math.prod((abs(ls - lt) for t, lt in enumerate(lams) if t != s), start=mpfr(1)) for s, ls in enumerate(lams)]


def normalization_constant(spectrum: InnerSpectrum) -> mpfr | None:
    """Lambda = 1 / sum_s (-1)^s / [(1 + lambda_s^2) prod_{t!=s} |lambda_t - lambda_s|].

    Returns ``None`` for the empty spectrum. Raises :class:`NonGenericSpectrum`
    when the alternating sum cancels to within 1e-12 of its term magnitudes.
    """
    if spectrum.n == 0:
        return None
    with _hp.context():
        lams = spectrum._hp_lambdas()
        gaps = _gap_products(lams)
        terms = [(-1) ** s / ((1 + lam**2) * gap) for s, (lam, gap) in enumerate(zip(lams, gaps), start=1)]
        total = _hp.fsum(terms)
        if abs(total) <= NONDEG_RTOL * _hp.fsum(abs(t) for t in terms):
            raise NonGenericSpectrum(f"normalization sum vanishes for lambda = {[float(x) for x in lams]}")
        return 1 / total


def weights(spectrum: InnerSpectrum, Lambda) -> tuple:
    """P_s = (-1)^s Lambda / [(1 + lambda_s^2) prod_{t!=s} |lambda_s - lambda_t|]."""
    if Lambda == 0:
        raise ValueError("Lambda must be nonzero")
    with _hp.context():
        lams = spectrum._hp_lambdas()
        lam_c = _hp.real(Lambda)
        gaps = _gap_products(lams)
        return tuple((-1) ** s * lam_c / ((1 + lam**2) * gap) for s, (lam, gap) in enumerate(zip(lams, gaps), start=1))


def metric_signature(Lambda, n: int) -> MetricSignature:
    """g_ss = (-1)^s sign(Lambda), s = 1..n."""
    if Lambda == 0:
        raise ValueError("Lambda must be nonzero")
    sign = 1 if Lambda > 0 else -1
    return MetricSignature(tuple((-1) ** s * sign for s in range(1, n + 1)))


def gamma11(spectrum: InnerSpectrum, P) -> mpfr:
    """gamma11 = -sum_s lambda_s P_s, the condition S(k) -> 1 at high energy."""
    if len(P) != spectrum.n:
        raise ValueError("weights and spectrum differ in length")
    if not P:
        return mpfr(0)
    with _hp.context():
        return -_hp.fsum(lam * _hp.real(p) for lam, p in zip(spectrum._hp_lambdas(), P))


def _hp_q(lam, lams: list, P) -> object:
    return _hp.fsum((1 + lam * ls) / (ls - lam) * _hp.real(p) for ls, p in zip(lams, P))


def _check_off_spectrum(lam, lams: list) -> None:
    for ls in lams:
        if abs(ls - lam) <= 1e-14 * max(1, abs(ls)):
            raise SpectralSingularity(f"lambda = {complex(lam)} coincides with an inner eigenvalue")


def q_spectral(lam: complex, spectrum: InnerSpectrum, P) -> complex:
    """Q(lambda) = sum_s (1 + lambda lambda_s) / (lambda_s - lambda) P_s."""
    with _hp.context():
        lams = spectrum._hp_lambdas()
        z = _hp.cplx(lam)
        _check_off_spectrum(z, lams)
        return complex(_hp_q(z, lams, P))


def denominator(lam: complex, ext: ExtensionParameters, spectrum: InnerSpectrum):
    """D(lambda) = gamma11 - Q(lambda) as a 128-bit complex."""
    with _hp.context():
        lams = spectrum._hp_lambdas()
        z = _hp.cplx(lam)
        _check_off_spectrum(z, lams)
        return _hp.real(ext.gamma11) - _hp_q(z, lams, ext.P)


def _prod_factor(k, spectrum: InnerSpectrum):
    k = np.asarray(k)
    ks2 = np.asarray(spectrum.ks, dtype=float) ** 2
    return np.prod(ks2 - k[..., None] ** 2, axis=-1)


def f_polynomial(k, reduced: ReducedParameters, spectrum: InnerSpectrum):
    """F(k) = eps - gamma * prod_s (k_s^2 - k^2); vectorized over ``k``."""
    out = reduced.epsilon - reduced.gamma_coef * _prod_factor(k, spectrum)
    return out if np.ndim(out) else out[()]


def f_scale(k, reduced: ReducedParameters, spectrum: InnerSpectrum):
    """|eps| + |gamma prod_s (k_s^2 - k^2)|, the size of the two terms making up F(k)."""
    out = abs(reduced.epsilon) + np.abs(reduced.gamma_coef * _prod_factor(k, spectrum))
    return out if np.ndim(out) else out[()]


def _f_fraction_scalar(k: complex, ext: ExtensionParameters, lams: list, k0) -> complex:
    four_pi_k0 = 4 * _hp.pi() * k0
    g00 = _hp.real(ext.gamma00)
    if not lams:
        return complex(four_pi_k0 * g00)
    lam = (_hp.cplx(k) / k0) ** 2
    if any(lam == ls for ls in lams):
        # Q has a pole; the coupling term vanishes in the limit
        return complex(four_pi_k0 * g00)
    d = _hp.real(ext.gamma11) - _hp_q(lam, lams, ext.P)
    if d == 0:
        raise InconsistentParameters(f"gamma11 - Q(lambda) vanishes at k = {k}")
    return complex(four_pi_k0 * (g00 - _hp.real(ext.gamma01_abs2) / d))


def f_fraction(k, ext: ExtensionParameters, spectrum: InnerSpectrum):
    """F(k) = 4 pi k0 [gamma00 - |gamma01|^2 / (gamma11 - Q((k/k0)^2))].

    ``spectrum`` supplies the resonance wave numbers; k0 is taken from ``ext``.
    Accepts a scalar or an array of (complex) wave numbers.
    """
    spec = spectrum.with_k0(ext.k0)
    if spec.n != ext.n:
        raise ValueError("spectrum and extension parameters differ in N")
    with _hp.context():
        lams = spec._hp_lambdas()
        k0 = _hp.real(ext.k0)
        if np.ndim(k) == 0:
            return _f_fraction_scalar(complex(k), ext, lams, k0)
        flat = np.asarray(k, dtype=complex).ravel()
        vals = [_f_fraction_scalar(z, ext, lams, k0) for z in flat]
    return np.asarray(vals, dtype=complex).reshape(np.shape(k))


def _frac(x) -> Fraction:
    return Fraction(float(x))


def _product_coefficients(spectrum: InnerSpectrum) -> list[Fraction]:
    # prod_s (k_s^2 - x) in powers of x, exact rational convolution
    coeffs = [Fraction(1)]
    for k in spectrum.ks:
        k2 = _frac(k) ** 2
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] += k2 * c
            nxt[i + 1] -= c
        coeffs = nxt
    return coeffs


def taylor_coefficients(reduced: ReducedParameters, spectrum: InnerSpectrum, order: int | None = None) -> list[float]:
    """Coefficients g_0..g_order of F(k) = sum_n g_n k^(2n); g_0 = -1/a, g_1 = r0/2.

    ``order`` defaults to N, the degree of F in k^2.
    """
    order = spectrum.n if order is None else order
    if order < 0 or order > spectrum.n:
        raise ValueError(f"order must lie in [0, {spectrum.n}]")
    gam = _frac(reduced.gamma_coef)
    coeffs = [-gam * c for c in _product_coefficients(spectrum)]
    coeffs[0] += _frac(reduced.epsilon)
    return [float(c) for c in coeffs[: order + 1]]


def laurent_residuals(spectrum: InnerSpectrum, P, gamma11_value, Lambda) -> np.ndarray:
    """Relative size of each Laurent coefficient of D(lambda) that must vanish.

    Entry 0 is gamma11 + sum lambda_s P_s, entries l = 1..N-1 are
    sum (1 + lambda_s^2) lambda_s^(l-1) P_s, each divided by the sum of its
    term magnitudes. The final entry compares the lambda^-N coefficient with
    (-1)^N Lambda.
    """
    n = spectrum.n
    if n == 0:
        return np.zeros(0)
    with _hp.context():
        lams = spectrum._hp_lambdas()
        Ps = [_hp.real(p) for p in P]
        out = []
        head = [_hp.real(gamma11_value)] + [lam * p for lam, p in zip(lams, Ps)]
        out.append(abs(_hp.fsum(head)) / _hp.fsum(abs(t) for t in head))
        for order in range(1, n):
            terms = [(1 + lam**2) * lam ** (order - 1) * p for lam, p in zip(lams, Ps)]
            out.append(abs(_hp.fsum(terms)) / _hp.fsum(abs(t) for t in terms))
        lead = _hp.fsum((1 + lam**2) * lam ** (n - 1) * p for lam, p in zip(lams, Ps))
        target = (-1) ** n * _hp.real(Lambda)
        out.append(abs(lead - target) / abs(target))
        return np.array([float(v) for v in out])

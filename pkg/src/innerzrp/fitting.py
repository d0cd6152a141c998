"""Conversions between observables (a, r0, spectrum), reduced (a0, alpha) and extension parameters."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _hp
from .errors import InvalidObservables
from .model import (
    ExtensionParameters,
    InnerSpectrum,
    ReducedParameters,
    gamma11,
    metric_signature,
    normalization_constant,
    weights,
)
from .pontryagin import MetricSignature

INVALID_EPS_TOL = 1e-12


@dataclass(frozen=True)
class PhysicalObservables:
    a: float
    r0: float
    spectrum: InnerSpectrum

    def __post_init__(self):
        if self.a == 0 or not math.isfinite(self.a):
            raise InvalidObservables(f"scattering length must be finite and nonzero, got {self.a}")
        if self.spectrum.n == 0 and self.r0 != 0:
            raise InvalidObservables("a model without inner structure has r0 = 0")


@dataclass(frozen=True)
class Model:
    """Everything that describes one fitted model; ``spectrum.k0`` is always set."""

    observables: PhysicalObservables
    reduced: ReducedParameters
    spectrum: InnerSpectrum
    extension: ExtensionParameters

    @property
    def n(self) -> int:
        return self.spectrum.n


def _hp_sums(spectrum: InnerSpectrum):
    # prod_s k_s^2 and sum_n prod_{t != n} k_t^2
    k2 = [_hp.real(k) ** 2 for k in spectrum.ks]
    full = math.prod(k2, start=_hp.real(1))
    partial = _hp.fsum(math.prod((v for t, v in enumerate(k2) if t != n), start=_hp.real(1)) for n in range(len(k2)))
    return full, partial


def reduce_observables(obs: PhysicalObservables) -> ReducedParameters:
    """Invert the renormalization and effective-radius relations for (a0, alpha).

    gamma = r0 / (2 sum_n prod_{t!=n} k_t^2), eps = gamma prod k_s^2 - 1/a,
    a0 = -1/eps, alpha = gamma / a0^(2N-1).
    """
    n = obs.spectrum.n
    if n == 0:
        return ReducedParameters(float(obs.a), 0.0, -1.0 / obs.a, 0.0)
    with _hp.context():
        full, partial = _hp_sums(obs.spectrum)
        gam = _hp.real(obs.r0) / (2 * partial)
        inv_a = 1 / _hp.real(obs.a)
        eps = gam * full - inv_a
        if abs(eps) * abs(obs.a) < INVALID_EPS_TOL:
            raise InvalidObservables(
                f"eps = gamma prod k_s^2 - 1/a vanishes (eps = {float(eps):.3g}): "
                f"a = {obs.a}, r0 = {obs.r0}, k = {obs.spectrum.ks} admit no finite bare length a0"
            )
        a0 = -1 / eps
        alpha = gam / a0 ** (2 * n - 1)
        return ReducedParameters(float(a0), float(alpha), float(eps), float(gam))


def observables_from_reduced(reduced: ReducedParameters, spectrum: InnerSpectrum) -> PhysicalObservables:
    """a = a0 / (1 + alpha prod a0^2 k_s^2), r0 = 2 alpha a0 sum_n prod_{s!=n} a0^2 k_s^2."""
    with _hp.context():
        a0 = _hp.real(reduced.a0)
        alpha = _hp.real(reduced.alpha)
        full, partial = _hp_sums(spectrum)
        n = spectrum.n
        denom = 1 + alpha * a0 ** (2 * n) * full
        if denom == 0:
            raise InvalidObservables("1 + alpha prod a0^2 k_s^2 vanishes; the scattering length is infinite")
        a = a0 / denom
        r0 = 2 * alpha * a0 * a0 ** (2 * (n - 1)) * partial if n else _hp.real(0)
        return PhysicalObservables(float(a), float(r0), spectrum)


def extension_from_reduced(
    reduced: ReducedParameters, spectrum: InnerSpectrum, k0: float | None = None
) -> ExtensionParameters:
    """Boundary parameters, weights and metric of the analytic model.

    |Lambda| comes from the [e,e] = 1 normalization, its sign from sign(gamma)
    so that |gamma01|^2 is positive; ``e_norm`` = sum P_s then comes out as +1
    or -1. k0 resolves as: argument, then ``spectrum.k0``, then 1/|a0|.
    """
    if k0 is None:
        k0 = spectrum.k0 if spectrum.k0 is not None else 1.0 / abs(reduced.a0)
    spectrum = spectrum.with_k0(k0)
    n = spectrum.n
    with _hp.context():
        k0_hp = _hp.real(k0)
        four_pi = 4 * _hp.pi()
        gamma00 = _hp.real(reduced.epsilon) / (four_pi * k0_hp)
        if n == 0:
            if reduced.gamma_coef != 0:
                raise InvalidObservables("a model without inner structure needs alpha = 0")
            return ExtensionParameters(
                Lambda=None,
                P=(),
                g=MetricSignature(()),
                e_abs2=(),
                gamma00=gamma00,
                gamma01_abs2=_hp.real(0),
                gamma11=None,
                e_norm=None,
                k0=float(k0),
            )
        gam = _hp.real(reduced.gamma_coef)
        if gam == 0:
            raise InvalidObservables("gamma = 0: the inner structure decouples (r0 = 0)")
        lam_abs = abs(normalization_constant(spectrum))
        Lambda = lam_abs if gam > 0 else -lam_abs
        P = weights(spectrum, Lambda)
        return ExtensionParameters(
            Lambda=Lambda,
            P=P,
            g=metric_signature(Lambda, n),
            e_abs2=tuple(abs(p) for p in P),
            gamma00=gamma00,
            gamma01_abs2=gam * k0_hp ** (2 * n - 1) * Lambda / four_pi,
            gamma11=gamma11(spectrum, P),
            e_norm=_hp.fsum(P),
            k0=float(k0),
        )


def build_model(
    source: PhysicalObservables | ReducedParameters,
    spectrum: InnerSpectrum | None = None,
    k0: float | None = None,
) -> Model:
    """Complete a model from either observables or reduced parameters (the latter needs ``spectrum``)."""
    if isinstance(source, PhysicalObservables):
        obs = source
        reduced = reduce_observables(obs)
        spectrum = obs.spectrum
    else:
        if spectrum is None:
            raise ValueError("reduced parameters need an explicit spectrum")
        reduced = source
        obs = observables_from_reduced(reduced, spectrum)
    ext = extension_from_reduced(reduced, spectrum, k0)
    spectrum = spectrum.with_k0(ext.k0)
    obs = PhysicalObservables(obs.a, obs.r0, spectrum)
    return Model(obs, reduced, spectrum, ext)

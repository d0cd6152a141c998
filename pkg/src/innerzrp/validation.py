"""Named consistency checks run against one model, as used by ``innerzrp validate``."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from . import _hp
from .fitting import Model
from .model import f_fraction, f_polynomial, f_scale, laurent_residuals, q_spectral
from .pontryagin import GOperatorRealization, q_matrix, resolvent_identity_residual
from .scattering import boundary_identity_residual, sweep
from .spectral import PoleKind, dispersion_residual, pole_roots, pole_zero_report

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass(frozen=True)
class Check:
    name: str
    residual: float | None
    threshold: float
    status: str
    detail: str = ""

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class ValidationReport:
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _judge(name: str, residual: float, threshold: float, detail: str = "") -> Check:
    ok = np.isfinite(residual) and residual < threshold
    return Check(name, float(residual), threshold, PASS if ok else FAIL, detail)


def _skip(name: str, threshold: float, detail: str) -> Check:
    return Check(name, None, threshold, SKIPPED, detail)


def check_grid(model: Model, kmax: float | None = None, num_real: int = 180, num_complex: int = 20) -> np.ndarray:
    """Real k in (0, kmax] plus a fixed ring of complex samples; kmax defaults to max(10, 1.5 k_N)."""
    if kmax is None:
        kmax = max(10.0, 1.5 * max(model.spectrum.ks, default=0.0))
    real = np.linspace(kmax / num_real, kmax, num_real)
    angles = np.linspace(0.1, 2 * np.pi - 0.1, num_complex)
    radii = np.linspace(0.2, 1.0, num_complex) * kmax
    return np.concatenate([real.astype(complex), radii * np.exp(1j * angles)])


def corrupt_weights(model: Model, scale: float = 0.1) -> Model:
    """Model with every weight P_s scaled by 1 + scale (-1)^s, for demonstrating failing checks."""
    ext = model.extension
    with _hp.context():
        P = tuple(p * (1 + scale * (-1) ** s) for s, p in enumerate(ext.P, start=1))
    return dataclasses.replace(model, extension=dataclasses.replace(ext, P=P, e_abs2=tuple(abs(p) for p in P)))


def _realization(model: Model) -> GOperatorRealization:
    # Gamma = gamma11 would make gamma11 - Q = Lambda / prod(lambda_s - lambda), and for
    # N = 1 the Krein correction then cancels R0 exactly; shift to a generic value
    ext = model.extension
    e = np.sqrt(np.array([float(v) for v in ext.e_abs2]))
    return GOperatorRealization(model.spectrum.lambdas, ext.g, e.astype(complex), float(ext.gamma11) + 1.0)


def validate(model: Model, kmax: float | None = None) -> ValidationReport:
    red, spec, ext = model.reduced, model.spectrum, model.extension
    n = model.n
    grid = check_grid(model, kmax)
    real_k = grid[grid.imag == 0].real
    checks = []

    F_poly = f_polynomial(grid, red, spec)
    F_frac = f_fraction(grid, ext, spec)
    checks.append(_judge("analyticity", np.max(np.abs(F_frac - F_poly) / f_scale(grid, red, spec)), 1e-9,
                         "|F_fraction - F_polynomial| / f_scale"))

    sw = sweep(real_k, red, spec)
    checks.append(_judge("unitarity", np.max(np.abs(np.abs(sw.S) - 1)), 1e-13, "max ||S| - 1|"))
    optical = np.abs(sw.f.imag - real_k * np.abs(sw.f) ** 2) / np.maximum(1.0, np.abs(sw.f) ** 2)
    checks.append(_judge("optical", np.max(optical), 1e-12, "|Im f - k|f|^2| / max(1, |f|^2)"))

    report = pole_zero_report(red, spec)
    roots = pole_roots(red, spec)
    detail = "zeros vs conj(poles)"
    if not all(r.converged for r in roots):
        detail += "; some roots did not converge"
    res = report.max_symmetry_residual if all(r.converged for r in roots) else math.inf
    checks.append(_judge("pole_zero_conjugation", res, 1e-9, detail))

    bi = max(boundary_identity_residual(k, ext, red, spec) for k in real_k)
    checks.append(_judge("boundary_identity", bi, 1e-10, "|4pi/T + i sqrt(lam) - F/k0| / (f_scale/k0)"))

    bound = [p.k for p in report.poles if p.kind is PoleKind.BOUND]
    if bound:
        disp = max(dispersion_residual(k, ext, red, spec) for k in bound)
        checks.append(_judge("dispersion", disp, 1e-9, f"{len(bound)} bound pole(s)"))
    else:
        checks.append(_skip("dispersion", 1e-9, "no bound-state poles"))

    if n == 0:
        for name, thr in (("laurent", 1e-10), ("krein_resolvent", 1e-10), ("q_agreement", 1e-12)):
            checks.append(_skip(name, thr, "no inner structure (N = 0)"))
        return ValidationReport(checks)

    checks.append(_judge("laurent", np.max(laurent_residuals(spec, ext.P, ext.gamma11, ext.Lambda)), 1e-10,
                         "vanishing Laurent coefficients of gamma11 - Q"))

    realization = _realization(model)
    rng = np.random.default_rng(0)
    f = rng.normal(size=n) + 1j * rng.normal(size=n)
    lam_max = float(np.max(spec.lambdas))
    kr = resolvent_identity_residual((0.1 + 0.2j) * lam_max, -0.3 * lam_max, f, realization)
    checks.append(_judge("krein_resolvent", kr, 1e-10, "R(l) - R(m) = (l - m) R(l) R(m)"))

    q_err = 0.0
    for lam in (0.0, -1.0, 0.5 + 0.5j, 0.3j * lam_max):
        qm = q_matrix(lam, realization)
        qs = q_spectral(lam, spec, ext.P)
        ev = realization.eigenvalues
        terms = np.sum(np.abs((1 + lam * ev) / (ev - lam)) * np.abs(realization.e) ** 2)
        q_err = max(q_err, abs(qm - qs) / terms if terms else abs(qm - qs))
    checks.append(_judge("q_agreement", q_err, 1e-12, "|q_matrix - q_spectral| / sum of term magnitudes"))
    return ValidationReport(checks)

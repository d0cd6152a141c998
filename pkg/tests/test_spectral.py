import math
import warnings

import numpy as np
import pytest
from hypothesis import given

from innerzrp import _hp
from innerzrp.fitting import PhysicalObservables, build_model, reduce_observables
from innerzrp.model import InnerSpectrum, ReducedParameters
from innerzrp.spectral import (
    PoleKind,
    UnphysicalPoleWarning,
    classify,
    dispersion_residual,
    find_poles,
    find_zeros,
    match_residuals,
    pole_polynomial,
    pole_roots,
    pole_zero_report,
    solve_roots,
)

from .conftest import observables


def reduced(a, r0, ks=()):
    return reduce_observables(PhysicalObservables(a, r0, InnerSpectrum(ks))), InnerSpectrum(ks)


def close(got, expected, tol=1e-10):
    return match_residuals(list(got), list(expected)).max() < tol


def test_pole_polynomial_examples():
    red, spec = reduced(1.0, 0.0)
    assert np.array_equal(pole_polynomial(red, spec), [1.0, -1.0])
    # double root: a = 2, r0 = 1 with k1 = 2 (k1 = 1 makes eps vanish)
    red, spec = reduced(2.0, 1.0, (2.0,))
    c = pole_polynomial(red, spec)
    assert np.allclose(c / c[-1], [1.0, -2.0, 1.0], rtol=1e-15)


def test_pole_polynomial_n2_form():
    a, r0, ks = 2.0, 1.0, (1.0, 2.0)
    red, spec = reduced(a, r0, ks)
    c = pole_polynomial(red, spec)
    ref = np.array([1 / a, -1.0, r0 / 2, 0.0, r0 / (2 * (ks[0] ** 2 + ks[1] ** 2))])
    assert np.allclose(c / red.a0, ref, rtol=1e-14, atol=1e-15)


def test_fermi_pole():
    red, spec = reduced(1.0, 0.0)
    assert find_poles(red, spec) == [1j]
    assert close(find_zeros(red, spec), [-1j])
    rec = classify(find_poles(red, spec))
    assert len(rec) == 1 and rec[0].kind is PoleKind.BOUND and rec[0].E == -1


def test_two_bound_states():
    red, spec = reduced(4.0, 1.0, (1.0,))
    assert close(find_poles(red, spec), [1j * (1 - 1 / math.sqrt(2)), 1j * (1 + 1 / math.sqrt(2))], 1e-12)


def test_metastable_and_trapping():
    red, spec = reduced(-1.0, -1.0, (1.0,))
    poles = find_poles(red, spec)
    assert close(poles, [1 - 1j, -1 - 1j], 1e-12)
    assert close(find_zeros(red, spec), [1 + 1j, -1 + 1j], 1e-12)
    recs = classify(poles)
    assert [r.kind for r in recs] == [PoleKind.TRAPPING, PoleKind.METASTABLE]
    meta = recs[1]
    assert meta.E_prime == pytest.approx(0.0, abs=1e-12)
    assert meta.Gamma_n == pytest.approx(1.0, rel=1e-12)
    assert meta.Gamma_k2 == pytest.approx(4.0, rel=1e-12)
    assert recs[0].partner == pytest.approx(meta.k)


def test_virtual_state():
    red, spec = reduced(-1.0, 1.0, (1.0,))
    recs = classify(find_poles(red, spec))
    virtual = [r for r in recs if r.kind is PoleKind.VIRTUAL]
    assert len(virtual) == 1
    assert virtual[0].k.imag == pytest.approx(1 - math.sqrt(3), rel=1e-12)


def test_double_root():
    red, spec = reduced(2.0, 1.0, (2.0,))
    roots = pole_roots(red, spec)
    assert len(roots) == 1 and roots[0].multiplicity == 2 and roots[0].converged
    assert abs(roots[0].k - 1j) < 1e-12
    assert find_poles(red, spec) == [roots[0].k, roots[0].k]
    recs = classify(find_poles(red, spec))
    assert len(recs) == 1 and recs[0].multiplicity == 2 and recs[0].kind is PoleKind.BOUND


def test_upper_half_plane_poles_are_flagged(flagship):
    poles = find_poles(flagship.reduced, flagship.spectrum)
    assert close(poles, [1 + 1j, -1 + 1j], 1e-12)
    with pytest.warns(UnphysicalPoleWarning):
        recs = classify(poles)
    assert all(r.kind is PoleKind.UNPHYSICAL for r in recs)


def test_classify_examples_and_units():
    assert classify([1j])[0].E == -1
    assert classify([1j], energy_scale=2.5)[0].E_prime == -2.5
    rec = classify([1 - 1j])[0]
    assert (rec.kind, rec.E_prime, rec.Gamma_n) == (PoleKind.METASTABLE, 0.0, 1.0)
    assert classify([1j * (1 - math.sqrt(3))])[0].kind is PoleKind.VIRTUAL
    # within the axis tolerance p counts as zero
    assert classify([complex(1e-13, 2.0)])[0].kind is PoleKind.BOUND
    with pytest.raises(ValueError):
        classify([1j], energy_scale=0)


def test_classify_sorted():
    recs = classify([2 - 1j, -1 - 3j, -0.5j, 1j])
    keys = [(r.k.real, r.k.imag) for r in recs]
    assert keys == sorted(keys)


def test_solve_roots_clusters_triple_root():
    with _hp.context():
        # (x - 2)^3 (x + 1)
        coeffs = [_hp.real(c) for c in np.polynomial.polynomial.polyfromroots([2, 2, 2, -1])]
        roots = solve_roots(coeffs)
    mults = sorted(r.multiplicity for r in roots)
    assert mults == [1, 3]
    triple = next(r for r in roots if r.multiplicity == 3)
    assert abs(triple.kappa - 2) < 1e-12


@given(observables())
def test_root_residuals_and_conjugate_closure(obs):
    red = reduce_observables(obs)
    roots = pole_roots(red, obs.spectrum)
    assert sum(r.multiplicity for r in roots) == 2 * obs.spectrum.n
    assert all(r.converged and r.residual < 1e-10 for r in roots)
    kappas = [r.kappa for r in roots for _ in range(r.multiplicity)]
    assert match_residuals(kappas, list(np.conj(kappas))).max() < 1e-9
    # poles are symmetric under k -> -conj(k)
    poles = find_poles(red, obs.spectrum)
    assert match_residuals(poles, [-np.conj(k) for k in poles]).max() < 1e-9


@given(observables())
def test_pole_zero_conjugation(obs):
    red = reduce_observables(obs)
    report = pole_zero_report(red, obs.spectrum)
    assert report.max_symmetry_residual < 1e-9
    assert len(report.zeros) == 2 * obs.spectrum.n


@given(observables(1, 2))
def test_closed_form_low_order(obs):
    red = reduce_observables(obs)
    c = pole_polynomial(red, obs.spectrum)
    expected = np.polynomial.polynomial.polyroots(c)
    assert close([1j * z for z in expected], find_poles(red, obs.spectrum), 1e-7)
    if obs.spectrum.n == 1:
        # F - ik = 0 with F = -1/a + r0 k^2 / 2 reduces to a quadratic in k
        disc = np.sqrt(complex(-1 + 2 * obs.r0 / obs.a))
        ref = [(1j + disc) / obs.r0, (1j - disc) / obs.r0]
        assert close(find_poles(red, obs.spectrum), ref, 1e-12)


@given(observables())
def test_bound_poles_solve_dispersion(obs):
    m = build_model(obs)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UnphysicalPoleWarning)
        recs = classify(pole_roots(m.reduced, m.spectrum))
    for r in recs:
        if r.kind is PoleKind.BOUND:
            assert dispersion_residual(r.k, m.extension, m.reduced, m.spectrum) < 1e-9


def test_dispersion_fermi():
    m = build_model(PhysicalObservables(0.5, 0.0, InnerSpectrum(())))
    assert dispersion_residual(2j, m.extension, m.reduced, m.spectrum) < 1e-15

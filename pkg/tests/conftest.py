import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from innerzrp.fitting import PhysicalObservables, build_model
from innerzrp.model import InnerSpectrum

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("stress", max_examples=600, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def flagship():
    # a = r0 = k1 = k0 = 1
    return build_model(PhysicalObservables(1.0, 1.0, InnerSpectrum((1.0,))), k0=1.0)


@st.composite
def spectra(draw, n_min=1, n_max=6, k_max=10.0):
    n = draw(st.integers(n_min, n_max))
    ks = draw(
        st.lists(st.floats(0.05, k_max, allow_nan=False), min_size=n, max_size=n, unique=True).map(sorted)
    )
    if n > 1 and np.min(np.diff(ks)) < 1e-3:
        ks = list(np.cumsum(np.full(n, k_max / (n + 1))))
    return InnerSpectrum(tuple(ks))


@st.composite
def observables(draw, n_min=1, n_max=6):
    spec = draw(spectra(n_min, n_max))
    a = draw(st.floats(0.2, 5.0)) * draw(st.sampled_from([-1.0, 1.0]))
    r0 = draw(st.floats(0.05, 2.0)) * draw(st.sampled_from([-1.0, 1.0]))
    return PhysicalObservables(a, r0, spec)


# acceptance results, keyed by criterion number: list of (part, ok, detail)
ACCEPTANCE: dict[int, list] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[number]
        ok = all(p[1] for p in parts)
        detail = "; ".join(f"{name}: {'ok' if good else 'FAILED'} ({info})" for name, good, info in parts)
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")

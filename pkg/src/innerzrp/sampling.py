"""Random valid models for property tests and the acceptance suite.

Sampling ranges: N uniform in {n_min..n_max}; k_s sorted uniform on [0.05, 10];
|a| log-uniform on [0.2, 5]; |r0| uniform on [0.05, 2]; both signs equally
likely. Draws that hit InvalidObservables or NonGenericSpectrum are redrawn.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .errors import InvalidObservables, NonGenericSpectrum
from .fitting import Model, PhysicalObservables, build_model
from .model import InnerSpectrum


@dataclass(frozen=True)
class SamplingRanges:
    n_min: int = 1
    n_max: int = 6
    k_min: float = 0.05
    k_max: float = 10.0
    a_min: float = 0.2
    a_max: float = 5.0
    r0_min: float = 0.05
    r0_max: float = 2.0


def random_observables(rng: np.random.Generator, ranges: SamplingRanges = SamplingRanges()) -> PhysicalObservables:
    n = int(rng.integers(ranges.n_min, ranges.n_max + 1))
    while True:
        ks = np.sort(rng.uniform(ranges.k_min, ranges.k_max, n))
        if n < 2 or np.min(np.diff(ks)) > 1e-6 * ranges.k_max:
            break
    a = float(np.exp(rng.uniform(np.log(ranges.a_min), np.log(ranges.a_max))) * rng.choice([-1.0, 1.0]))
    r0 = float(rng.uniform(ranges.r0_min, ranges.r0_max) * rng.choice([-1.0, 1.0])) if n else 0.0
    return PhysicalObservables(a, r0, InnerSpectrum(tuple(ks)))


def random_model(rng: np.random.Generator, ranges: SamplingRanges = SamplingRanges()) -> Model:
    while True:
        try:
            return build_model(random_observables(rng, ranges))
        except (InvalidObservables, NonGenericSpectrum):
            continue


def random_models(count: int, seed: int = 0, ranges: SamplingRanges = SamplingRanges()) -> Iterator[Model]:
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield random_model(rng, ranges)

"""Zero-range potential with inner structure: fitting, scattering and pole analysis."""

from .errors import (
    ConfigError,
    DeltaSequenceDivergence,
    ExtensionSingularity,
    InconsistentParameters,
    InvalidObservables,
    InvalidSpectrum,
    ModelError,
    NonGenericSpectrum,
    SpectralSingularity,
)
from .fitting import (
    Model,
    PhysicalObservables,
    build_model,
    extension_from_reduced,
    observables_from_reduced,
    reduce_observables,
)
from .model import (
    ExtensionParameters,
    InnerSpectrum,
    ReducedParameters,
    f_fraction,
    f_polynomial,
    gamma11,
    metric_signature,
    normalization_constant,
    q_spectral,
    taylor_coefficients,
    weights,
)
from .scattering import (
    AmplitudePair,
    ScatteringPoint,
    amplitudes,
    boundary_identity_residual,
    evaluate,
    resonance_cross_section,
    sweep,
)
from .spectral import PoleKind, PoleRecord, classify, find_poles, find_zeros, pole_polynomial, pole_zero_report

__version__ = "0.1.0"

"""Exception hierarchy shared by all modules."""


class ModelError(ValueError):
    """Base class for failures while constructing or evaluating a model."""


class InvalidSpectrum(ModelError):
    """Inner spectrum is not strictly increasing, positive and non-degenerate."""


class NonGenericSpectrum(ModelError):
    """The alternating normalization sum vanishes, so no finite normalization constant exists."""


class InvalidObservables(ModelError):
    """(a, r0, spectrum) admits no finite bare scattering length."""


class SpectralSingularity(ModelError, ZeroDivisionError):
    """Spectral parameter sits on an eigenvalue of the inner Hamiltonian."""


class ExtensionSingularity(ModelError, ZeroDivisionError):
    """Spectral parameter is an eigenvalue of the extension (Gamma - Q vanishes)."""


class InconsistentParameters(ModelError):
    """Extension parameters that cannot come from an analytic model."""


class DeltaSequenceDivergence(ModelError, ArithmeticError):
    """The attractive delta-sequence cross-section sits on a tan() pole."""


class ConfigError(ValueError):
    """Malformed or incomplete model configuration."""

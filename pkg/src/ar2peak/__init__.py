"""AR(2)-based estimation of the dominant periodicity of a stationary series."""

__version__ = "0.1.0"

from .ar2fit import (
    AR2Fit,
    FrequencyEstimate,
    estimate_from_series,
    fit_ar2,
    fit_series,
    peak_frequency_max,
    peak_frequency_root,
    pgram_argmax,
)
from .errors import (
    ConfigurationError,
    DomainError,
    NoInteriorPeakError,
    NumericError,
    ParseError,
    PeakAtBoundaryError,
)
from .periodogram import (
    circular_identity_residual,
    compute_periodogram,
    gamma_hat,
    gamma_tilde,
)
from .simulate import SimConfig, TimeSeries, simulate_driver, simulate_process
from .spectral_model import (
    DriverSpec,
    ProcessSpec,
    ma_coefficients,
    population_ar2,
    population_peak,
    spectral_density,
    theoretical_acf,
)

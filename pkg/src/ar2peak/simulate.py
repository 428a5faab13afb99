"""Sample paths of the near-pole family through its causal AR(2) filter."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import signal

from .errors import ConfigurationError, DomainError
from .spectral_model import DriverSpec, ProcessSpec

__all__ = [
    "TimeSeries",
    "SimConfig",
    "auto_burn_in",
    "simulate_driver",
    "apply_filter",
    "simulate_process",
]

MAX_BURN_IN = 10_000_000
BURN_IN_TOL = 1e-6


@dataclass(frozen=True)
class TimeSeries:
    """A finite real sample path.

    ``label`` describes the origin (file name, ``"simulated"``, ...) and
    ``seed`` records the generator seed for simulated paths.
    """

    values: np.ndarray
    label: str = ""
    seed: int | None = None
    time_labels: tuple = field(default=(), repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 1:
            raise DomainError("a time series must be one-dimensional")
        if not np.all(np.isfinite(v)):
            raise DomainError("time series values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    @property
    def n(self):
        return len(self.values)


@dataclass(frozen=True)
class SimConfig:
    n: int
    seed: int = 0
    burn_in: int | str = "auto"

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 8:
            raise ConfigurationError("n must be an integer >= 8")
        if self.burn_in != "auto" and (int(self.burn_in) != self.burn_in or self.burn_in < 0):
            raise ConfigurationError("burn_in must be a non-negative integer or 'auto'")


def auto_burn_in(delta, tol=BURN_IN_TOL):
    """Burn-in length ``ceil(log(tol) / log(1 - delta))``.

    Transients of the filter decay like ``(1 - delta)**t``.
    """
    b = math.ceil(math.log(tol) / math.log1p(-delta))
    if b > MAX_BURN_IN:
        raise ConfigurationError(
            f"automatic burn-in {b} exceeds {MAX_BURN_IN}; delta={delta} is too small"
        )
    return b


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def simulate_driver(driver: DriverSpec, m: int, seed=None) -> TimeSeries:
    """Draw ``m`` consecutive values of a stationary Gaussian driver.

    AR(1) paths start from the stationary law, MA(1) paths from a pre-sample
    innovation, so every draw is stationary from the first value on.
    ``seed`` may be an int, a ``SeedSequence`` or a ``numpy.random.Generator``.
    """
    if m < 1:
        raise DomainError("m must be >= 1")
    rng = _rng(seed)
    sd = math.sqrt(driver.sigma2)
    if driver.kind == "white":
        u = sd * rng.standard_normal(m)
    elif driver.kind == "ar1":
        phi = driver.coef
        eps = sd * rng.standard_normal(m)
        u0 = sd / math.sqrt(1 - phi * phi) * rng.standard_normal()
        eps[0] = u0
        u = signal.lfilter([1.0], [1.0, -phi], eps)
    else:
        eps = sd * rng.standard_normal(m + 1)
        u = eps[1:] + driver.coef * eps[:-1]
    return TimeSeries(u, label=f"driver:{driver.kind}", seed=seed if isinstance(seed, int) else None)


def apply_filter(spec: ProcessSpec, u):
    """Run ``X_t = a1 X_{t-1} + a2 X_{t-2} + u_t`` from ``X_0 = X_{-1} = 0``."""
    a1, a2 = spec.ar_coefficients
    return signal.lfilter([1.0], [1.0, -a1, -a2], np.asarray(u, dtype=float))


def simulate_process(spec: ProcessSpec, cfg: SimConfig) -> TimeSeries:
    """Simulate ``cfg.n`` values of ``spec`` after discarding a burn-in.

    Examples
    --------
    >>> spec = ProcessSpec(0.1, 1.0, DriverSpec.white())
    >>> x = simulate_process(spec, SimConfig(n=512, seed=3))
    >>> x.n
    512
    """
    burn = auto_burn_in(spec.delta) if cfg.burn_in == "auto" else int(cfg.burn_in)
    u = simulate_driver(spec.driver, cfg.n + burn, cfg.seed).values
    x = apply_filter(spec, u)[burn:]
    return TimeSeries(x, label="simulated", seed=cfg.seed if isinstance(cfg.seed, int) else None)

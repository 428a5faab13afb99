"""
Yule-Walker AR(2) fits and three estimators of the dominant frequency.

``ar2_max``
    arg-max of the fitted AR(2) spectral density,
    ``arccos(a1 (1 - a2) / (-4 a2))``.
``ar2_root``
    angle of the complex root projected on the unit circle,
    ``arccos(a1 / (2 sqrt(-a2)))``.
``pgram_argmax``
    the positive Fourier frequency with the largest periodogram ordinate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AR2PeakError, DomainError, NoInteriorPeakError, PeakAtBoundaryError
from .periodogram import MIN_LENGTH, Periodogram, compute_periodogram, gamma_hat, gamma_tilde
from .spectral_model import ar2_density, ar2_peak_frequency, yule_walker_ar2

__all__ = [
    "METHODS",
    "AR2Fit",
    "FrequencyEstimate",
    "FrequencyReport",
    "fit_ar2",
    "fit_series",
    "peak_frequency_max",
    "peak_frequency_root",
    "pgram_argmax",
    "fitted_density",
    "estimate_from_series",
]

METHODS = ("ar2_max", "ar2_root", "pgram_argmax")


@dataclass(frozen=True)
class AR2Fit:
    """Yule-Walker AR(2) coefficients and the autocorrelations they came from.

    ``gamma0`` is the lag-0 autocovariance used for the innovation variance;
    it is ``None`` when the fit was built from autocorrelations alone.
    """

    a1: float
    a2: float
    rho1: float
    rho2: float
    source: str = "rho"
    gamma0: float | None = None

    @property
    def discriminant(self):
        return self.a1 * self.a1 + 4.0 * self.a2

    @property
    def complex_roots(self):
        return self.discriminant < 0

    @property
    def sigma2(self):
        """Innovation variance ``gamma(0) (1 - a1 rho1 - a2 rho2)``."""
        if self.gamma0 is None:
            return None
        return self.gamma0 * (1.0 - self.a1 * self.rho1 - self.a2 * self.rho2)


@dataclass(frozen=True)
class FrequencyEstimate:
    lam: float
    method: str

    @property
    def period(self):
        return 2 * math.pi / self.lam


def fit_ar2(rho1, rho2, gamma0=None, source="rho") -> AR2Fit:
    """Solve the AR(2) Yule-Walker equations.

    Raises
    ------
    DomainError
        If ``|rho1| >= 1``.
    """
    a1, a2 = yule_walker_ar2(float(rho1), float(rho2))
    return AR2Fit(a1, a2, float(rho1), float(rho2), source, gamma0)


def fit_series(x, center=True, acf="hat") -> AR2Fit:
    """Fit an AR(2) to a series from ``gamma_hat`` (default) or ``gamma_tilde``."""
    if acf == "hat":
        g = gamma_hat(compute_periodogram(x, center=center), 2)
    elif acf == "tilde":
        g = gamma_tilde(x, 2, center=center)
    else:
        raise DomainError(f"acf must be 'hat' or 'tilde', got {acf!r}")
    if not g[0] > 0:
        raise DomainError("degenerate series: zero variance")
    return fit_ar2(g[1] / g[0], g[2] / g[0], gamma0=float(g[0]), source=acf)


def peak_frequency_max(fit: AR2Fit) -> FrequencyEstimate:
    """Frequency where the fitted AR(2) density attains its maximum."""
    return FrequencyEstimate(ar2_peak_frequency(fit.a1, fit.a2), "ar2_max")


def peak_frequency_root(fit: AR2Fit) -> FrequencyEstimate:
    """Argument of the complex root of ``1 - a1 z - a2 z^2``."""
    if not fit.complex_roots:
        raise NoInteriorPeakError(
            f"no complex root pair (discriminant {fit.discriminant:.6g} >= 0)"
        )
    u = fit.a1 / (2.0 * math.sqrt(-fit.a2))
    return FrequencyEstimate(math.acos(min(1.0, max(-1.0, u))), "ar2_root")


def pgram_argmax(pg: Periodogram) -> FrequencyEstimate:
    """Positive Fourier frequency maximising the periodogram (lowest index on ties)."""
    if pg.n < MIN_LENGTH:
        raise DomainError(f"n < {MIN_LENGTH}")
    j = 1 + int(np.argmax(pg.ordinates[1 : pg.N + 1]))
    return FrequencyEstimate(2 * math.pi * j / pg.n, "pgram_argmax")


def fitted_density(fit: AR2Fit, lam):
    """Spectral density of the fitted AR(2), with ``sigma2`` from the Yule-Walker residual."""
    if fit.sigma2 is None:
        raise DomainError("fit carries no variance; build it with gamma0")
    return ar2_density(fit.a1, fit.a2, fit.sigma2, lam)


@dataclass
class FrequencyReport:
    """Outcome of :func:`estimate_from_series`.

    ``estimates`` holds the methods that produced a value; ``notes`` holds the
    error message of each method that did not.
    """

    n: int
    centered: bool
    acf: str
    fit: AR2Fit | None
    periodogram: Periodogram
    estimates: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)


def estimate_from_series(x, center: bool = True, acf: str = "hat") -> FrequencyReport:
    """Fit the AR(2) and compute every frequency estimate that is defined.

    Failures of individual estimators are recorded in ``notes`` rather than
    raised.  A constant series is rejected outright.

    Examples
    --------
    >>> t = np.arange(1, 65)
    >>> rep = estimate_from_series(np.cos(2 * np.pi * 5 * t / 64), center=False)
    >>> round(rep.estimates["pgram_argmax"].lam, 6) == round(2 * np.pi * 5 / 64, 6)
    True
    """
    if acf not in ("hat", "tilde"):
        raise DomainError(f"acf must be 'hat' or 'tilde', got {acf!r}")
    v = np.asarray(getattr(x, "values", x), dtype=float)
    if len(v) < MIN_LENGTH:
        raise DomainError(f"n < {MIN_LENGTH}")
    if np.all(v == v[0]):
        raise DomainError("degenerate series: zero variance")
    pg = compute_periodogram(v, center=center)
    report = FrequencyReport(n=len(v), centered=center, acf=acf, fit=None, periodogram=pg)
    try:
        if acf == "hat":
            g = gamma_hat(pg, 2)
        else:
            g = gamma_tilde(v, 2, center=center)
        if not g[0] > 0:
            raise DomainError("degenerate series: zero variance")
        report.fit = fit_ar2(g[1] / g[0], g[2] / g[0], gamma0=float(g[0]), source=acf)
    except AR2PeakError as exc:
        report.notes["ar2_max"] = report.notes["ar2_root"] = str(exc)
    if report.fit is not None:
        for method, func in (("ar2_max", peak_frequency_max), ("ar2_root", peak_frequency_root)):
            try:
                report.estimates[method] = func(report.fit)
            except (NoInteriorPeakError, PeakAtBoundaryError) as exc:
                report.notes[method] = str(exc)
    report.estimates["pgram_argmax"] = pgram_argmax(pg)
    return report

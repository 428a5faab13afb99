"""
Near-pole spectral family and its exact second-order quantities.

A member of the family is fixed by a damping ``delta`` in (0, 1), a peak
location ``lambda0`` in (0, pi) and a driver process ``U`` with spectral
density ``f_U``.  The process is the causal AR(2) filter

    X_t = 2 (1 - delta) cos(lambda0) X_{t-1} - (1 - delta)^2 X_{t-2} + U_t

and its spectral density is

    f(lam) = f_U(lam) / (|1 - (1-delta) e^{-i(lam-lambda0)}|^2
                         |1 - (1-delta) e^{-i(lam+lambda0)}|^2).

As ``delta -> 0`` the peak at ``lambda0`` sharpens like ``delta**-2`` and the
variance grows like ``delta**-1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DomainError, NoInteriorPeakError, NumericError, PeakAtBoundaryError

__all__ = [
    "DriverSpec",
    "ProcessSpec",
    "TheoreticalACF",
    "spectral_density",
    "peak_density_closed_form",
    "ma_coefficients",
    "truncation_length",
    "theoretical_acf",
    "yule_walker_ar2",
    "ar2_peak_frequency",
    "ar2_density",
    "population_ar2",
    "population_peak",
    "variance_bracket",
]

CLAMP_TOL = 1e-12
QUAD_RTOL = 1e-8
_DRIVER_KINDS = ("white", "ar1", "ma1")


@dataclass(frozen=True)
class DriverSpec:
    """Second-order description of the driving process ``U``.

    Use the constructors :meth:`white`, :meth:`ar1` and :meth:`ma1` rather
    than the raw fields.  ``coef`` is ``phi`` for ``ar1``, ``theta`` for
    ``ma1`` and unused (0) for white noise; ``sigma2`` is the innovation
    variance.
    """

    kind: str = "white"
    sigma2: float = 1.0
    coef: float = 0.0

    def __post_init__(self):
        if self.kind not in _DRIVER_KINDS:
            raise DomainError(f"unknown driver kind {self.kind!r}")
        if not (np.isfinite(self.sigma2) and self.sigma2 > 0):
            raise DomainError("driver innovation variance must be positive")
        if self.kind == "white" and self.coef != 0.0:
            raise DomainError("white driver takes no coefficient")
        if not abs(self.coef) < 1:
            raise DomainError(f"{self.kind} coefficient must satisfy |c| < 1")

    @classmethod
    def white(cls, sigma2=1.0):
        return cls("white", float(sigma2))

    @classmethod
    def ar1(cls, phi, sigma2=1.0):
        return cls("ar1", float(sigma2), float(phi))

    @classmethod
    def ma1(cls, theta, sigma2=1.0):
        return cls("ma1", float(sigma2), float(theta))

    def density(self, lam):
        """Spectral density ``f_U`` (power per radian)."""
        lam = np.asarray(lam, dtype=float)
        base = self.sigma2 / (2 * np.pi)
        if self.kind == "white":
            return np.full_like(lam, base)
        c = self.coef
        mod2 = 1 + c * c - 2 * c * np.cos(lam)
        if self.kind == "ar1":
            return base / mod2
        # ma1: |1 + theta e^{-i lam}|^2
        return base * (1 + c * c + 2 * c * np.cos(lam))

    def autocovariance(self, h):
        """Closed-form ``gamma_U(h)``."""
        h = np.abs(np.asarray(h))
        s2, c = self.sigma2, self.coef
        if self.kind == "white":
            return np.where(h == 0, s2, 0.0)
        if self.kind == "ar1":
            return s2 * c ** h / (1 - c * c)
        return np.where(h == 0, s2 * (1 + c * c), np.where(h == 1, s2 * c, 0.0))

    def density_bounds(self):
        """``(inf, sup)`` of ``f_U`` over [0, pi].

        All three driver densities are monotone in ``cos(lam)``, so the
        extremes sit at the endpoints.
        """
        ends = self.density(np.array([0.0, np.pi]))
        return float(ends.min()), float(ends.max())


@dataclass(frozen=True)
class ProcessSpec:
    """One member ``(delta, lambda0, driver)`` of the near-pole family."""

    delta: float
    lambda0: float
    driver: DriverSpec = DriverSpec()

    def __post_init__(self):
        if not (0 < self.delta < 1):
            raise DomainError(f"delta must lie in (0, 1), got {self.delta}")
        if not (0 < self.lambda0 < np.pi):
            raise DomainError(f"lambda0 must lie in (0, pi), got {self.lambda0}")
        if not isinstance(self.driver, DriverSpec):
            raise DomainError("driver must be a DriverSpec")

    @property
    def radius(self):
        return 1.0 - self.delta

    @property
    def ar_coefficients(self):
        """Filter coefficients ``(a1, a2)`` of the AR(2) operator."""
        r = self.radius
        return 2 * r * math.cos(self.lambda0), -r * r


@dataclass(frozen=True)
class TheoreticalACF:
    """Autocovariances ``gamma[0..H]`` of a :class:`ProcessSpec`.

    ``abserr`` is the quadrature error estimate (max over lags).
    """

    gamma: np.ndarray
    abserr: float = 0.0

    @property
    def rho(self):
        return self.gamma / self.gamma[0]

    @property
    def max_lag(self):
        return len(self.gamma) - 1


def spectral_density(spec: ProcessSpec, lam):
    """Evaluate ``f_delta`` at frequencies ``lam`` in [-pi, pi].

    Parameters
    ----------
    spec : ProcessSpec
    lam : float or array_like
        Frequencies in radians per step.

    Returns
    -------
    float or ndarray
        Strictly positive density values, symmetric in ``lam``.
    """
    scalar = np.ndim(lam) == 0
    lam = np.asarray(lam, dtype=float)
    if np.any(np.abs(lam) > np.pi + 1e-12) or not np.all(np.isfinite(lam)):
        raise DomainError("frequencies must lie in [-pi, pi]")
    r = spec.radius
    # |1 - r e^{-ix}|^2 = 1 - 2 r cos x + r^2
    g_minus = 1 - 2 * r * np.cos(lam - spec.lambda0) + r * r
    g_plus = 1 - 2 * r * np.cos(lam + spec.lambda0) + r * r
    out = spec.driver.density(lam) / (g_minus * g_plus)
    return float(out) if scalar else out


def peak_density_closed_form(spec: ProcessSpec):
    """``f_delta(lambda0)`` written as ``delta**-2 / (4(1-delta) sin^2 + delta**2) * f_U``."""
    d, lam0 = spec.delta, spec.lambda0
    s2 = 1 - math.cos(lam0) ** 2
    return float(spec.driver.density(lam0)) / (d * d * (4 * (1 - d) * s2 + d * d))


def truncation_length(delta, tol=1e-10):
    """Smallest ``J`` with ``(1 - delta)**J < tol``."""
    return int(math.floor(math.log(tol) / math.log1p(-delta))) + 1


def ma_coefficients(spec: ProcessSpec, J: int):
    """MA(inf) weights ``b_0..b_J`` of ``X`` with respect to ``U``.

    ``b_0 = 1``, ``b_1 = a1`` and ``b_j = a1 b_{j-1} + a2 b_{j-2}`` with the
    filter coefficients of ``spec``.
    """
    if J < 0:
        raise DomainError("J must be non-negative")
    a1, a2 = spec.ar_coefficients
    b = np.empty(J + 1)
    b[0] = 1.0
    if J >= 1:
        b[1] = a1
    for j in range(2, J + 1):
        b[j] = a1 * b[j - 1] + a2 * b[j - 2]
    return b


def _quadrature_breakpoints(spec):
    # panels of width <= delta/10 across |lam - lambda0| <= 10 delta
    d, lam0 = spec.delta, spec.lambda0
    lo, hi = max(0.0, lam0 - 10 * d), min(np.pi, lam0 + 10 * d)
    npanel = max(1, math.ceil((hi - lo) / (d / 10)))
    pts = np.linspace(lo, hi, npanel + 1)
    return [p for p in pts if 0.0 < p < np.pi]


def theoretical_acf(spec: ProcessSpec, H: int, rtol: float = QUAD_RTOL) -> TheoreticalACF:
    """Autocovariances ``gamma(h) = int_{-pi}^{pi} cos(h lam) f(lam) dlam``.

    The integrand is even, so the integral is taken over [0, pi] and
    doubled.  Integration is adaptive (``scipy.integrate.quad_vec``) with the
    neighbourhood of the peak pre-split into panels of width at most
    ``delta / 10``.

    Raises
    ------
    NumericError
        If the estimated error exceeds ``rtol * gamma(0)``.
    """
    if H < 2:
        raise DomainError("H must be at least 2")
    lags = np.arange(H + 1, dtype=float)

    def integrand(lam):
        return np.cos(lags * lam) * spectral_density(spec, lam)

    res, err, info = integrate.quad_vec(
        integrand,
        0.0,
        np.pi,
        epsabs=0.0,
        epsrel=rtol * 1e-2,
        norm="max",
        points=_quadrature_breakpoints(spec),
        limit=20000,
        full_output=True,
    )
    gamma = 2.0 * res
    abserr = 2.0 * err
    if info.status != 0 or not abserr <= rtol * gamma[0]:
        raise NumericError(
            f"quadrature did not converge (status {info.status}, "
            f"relative error {abserr / gamma[0]:.2e})",
            achieved=abserr / gamma[0],
        )
    return TheoreticalACF(gamma=gamma, abserr=float(abserr))


def yule_walker_ar2(rho1, rho2):
    """Solve the AR(2) Yule-Walker system for ``(a1, a2)``.

    ``(a1, a2) = (rho1 (1 - rho2), rho2 - rho1**2) / (1 - rho1**2)``
    """
    denom = 1.0 - rho1 * rho1
    if not denom > 0:
        raise DomainError("degenerate autocorrelations: |rho(1)| must be < 1")
    return rho1 * (1.0 - rho2) / denom, (rho2 - rho1 * rho1) / denom


def ar2_peak_frequency(a1, a2, tol=CLAMP_TOL):
    """Location of the maximum of the AR(2) spectral density.

    ``arccos(a1 (1 - a2) / (-4 a2))`` for ``a2 < 0``.  Arguments within
    ``tol`` outside [-1, 1] are clamped.
    """
    if not a2 < 0:
        raise NoInteriorPeakError(f"no complex roots: no interior peak (a2 = {a2:.6g} >= 0)")
    u = a1 * (1.0 - a2) / (-4.0 * a2)
    if abs(u) > 1.0 + tol:
        raise PeakAtBoundaryError(
            f"peak at boundary {{0, pi}}: arccos argument {u:.6g} outside [-1, 1]", u
        )
    return math.acos(min(1.0, max(-1.0, u)))


def ar2_density(a1, a2, sigma2, lam):
    """AR(2) spectral density ``sigma2 / (2 pi) |1 - a1 e^{-i lam} - a2 e^{-2 i lam}|^-2``."""
    lam = np.asarray(lam, dtype=float)
    z = np.exp(-1j * lam)
    return sigma2 / (2 * np.pi) / np.abs(1 - a1 * z - a2 * z * z) ** 2


def population_ar2(spec: ProcessSpec, acf: TheoreticalACF | None = None):
    """Best mean-square AR(2) approximation ``(a1_delta, a2_delta)`` of ``spec``."""
    if acf is None:
        acf = theoretical_acf(spec, 2)
    rho = acf.rho
    return yule_walker_ar2(float(rho[1]), float(rho[2]))


def population_peak(spec: ProcessSpec, acf: TheoreticalACF | None = None):
    """Peak frequency ``lambda_{0,delta}`` of the best AR(2) approximation."""
    a1, a2 = population_ar2(spec, acf)
    return ar2_peak_frequency(a1, a2)


def variance_bracket(spec: ProcessSpec, sharp: bool = False):
    """Bounds ``(lo, hi)`` with ``lo <= delta * gamma(0) <= hi``.

    With ``F_min, F_max`` the extremes over [0, pi] of ``2 pi f_U`` (the
    driver density normalised so that white noise gives ``sigma2``) and
    ``c_max = max(cos(lambda0), cos(pi + lambda0))``, the default bracket is
    ``[F_min / 4, F_max / (1 - c_max**2)]``.

    ``sharp=True`` keeps the arctan factor of the exact integral of the
    near-peak kernel,
    ``D = arctan((2-delta) tan((pi-lambda0)/2) / delta) + arctan((2-delta) tan(lambda0/2) / delta)``,
    and returns
    ``[F_min D / (2 pi (2-delta)), 2 F_max D / (pi (1-c_max**2) (2-delta))]``.
    """
    fmin, fmax = spec.driver.density_bounds()
    c_max = max(math.cos(spec.lambda0), math.cos(math.pi + spec.lambda0))
    Fmin, Fmax = 2 * math.pi * fmin, 2 * math.pi * fmax
    if not sharp:
        return Fmin / 4.0, Fmax / (1.0 - c_max * c_max)
    d, lam0 = spec.delta, spec.lambda0
    D = math.atan((2 - d) * math.tan((math.pi - lam0) / 2) / d) + math.atan(
        (2 - d) * math.tan(lam0 / 2) / d
    )
    return (
        Fmin * D / (2 * math.pi * (2 - d)),
        2 * Fmax * D / (math.pi * (1 - c_max * c_max) * (2 - d)),
    )

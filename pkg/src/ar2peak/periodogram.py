"""
Raw periodogram on the Fourier grid and two autocovariance estimators.

``gamma_hat`` is the frequency-domain estimator

    gamma_hat(h) = (2 pi / n) sum_{j in G(n)} I_n(lam_j) cos(lam_j h),
    G(n) = {-N, ..., -1, 1, ..., N},  N = floor(n / 2),

and ``gamma_tilde`` the usual biased sample autocovariance.  Both are tied
together by an exact identity, checked by :func:`circular_identity_residual`::

    gamma_hat(h) = gamma_tilde(h) + gamma_tilde(n - h) [h >= 1]
                   - (2 pi / n) (I_n(0) - [n even] I_n(pi) cos(pi h))

The index set ``G(n)`` is summed literally: for even ``n`` the frequency
``pi`` (``j = N`` and ``j = -N``) enters twice and ``j = 0`` not at all.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "Periodogram",
    "AcfEstimates",
    "compute_periodogram",
    "dft_direct",
    "gamma_hat",
    "gamma_tilde",
    "acf_estimates",
    "circular_identity_residual",
]

MIN_LENGTH = 8
_DIRECT_CHUNK = 2048


@dataclass(frozen=True)
class Periodogram:
    """Ordinates ``I_n(2 pi j / n)`` for ``j = 0..floor(n/2)``.

    ``centered`` records whether the sample mean was removed first.
    """

    n: int
    ordinates: np.ndarray
    centered: bool = False

    @property
    def frequencies(self):
        return 2 * np.pi * np.arange(len(self.ordinates)) / self.n

    @property
    def N(self):
        return self.n // 2


@dataclass(frozen=True)
class AcfEstimates:
    gamma_hat: np.ndarray
    gamma_tilde: np.ndarray

    @property
    def rho_hat(self):
        return self.gamma_hat / self.gamma_hat[0]

    @property
    def rho_tilde(self):
        return self.gamma_tilde / self.gamma_tilde[0]


def _values(x):
    v = np.asarray(getattr(x, "values", x), dtype=float)
    if v.ndim != 1:
        raise DomainError("expected a one-dimensional series")
    return v


def _is_composite(n):
    if n < 4:
        return False
    if n % 2 == 0:
        return True
    f = 3
    while f * f <= n:
        if n % f == 0:
            return True
        f += 2
    return False


def dft_direct(x, jmax=None):
    """``sum_{t=1}^n x_t exp(-i 2 pi j t / n)`` for ``j = 0..jmax`` by direct summation.

    Phases are reduced modulo ``n`` in integer arithmetic before taking
    cosines.  Cost is ``O(n * jmax)``.
    """
    x = _values(x)
    n = len(x)
    jmax = n // 2 if jmax is None else jmax
    t = np.arange(1, n + 1)
    out = np.empty(jmax + 1, dtype=complex)
    for start in range(0, jmax + 1, _DIRECT_CHUNK):
        j = np.arange(start, min(jmax + 1, start + _DIRECT_CHUNK))
        phase = 2 * np.pi * ((j[:, None] * t[None, :]) % n) / n
        out[j] = np.exp(-1j * phase) @ x
    return out


def compute_periodogram(
    x, center: bool = False, method: str = "auto", min_length: int = MIN_LENGTH
) -> Periodogram:
    """Periodogram ``(2 pi n)^-1 |sum_t x_t e^{-i lam_j t}|^2`` on ``j = 0..floor(n/2)``.

    Parameters
    ----------
    x : array_like or TimeSeries
    center : bool
        Subtract the sample mean first.
    method : {"auto", "fft", "direct"}
        ``"auto"`` uses the FFT for composite ``n`` and direct summation
        for prime ``n``.
    min_length : int
        Shorter input raises :class:`DomainError`.  Estimation needs the
        default 8; the exact identities hold for any ``n >= 1``.
    """
    v = _values(x)
    n = len(v)
    if n < max(min_length, 1):
        raise DomainError(f"n < {min_length}: periodogram needs at least {min_length} points")
    if center:
        v = v - v.mean()
    if method == "auto":
        method = "fft" if _is_composite(n) else "direct"
    if method == "fft":
        # the t = 1..n convention only changes the phase of the transform
        d = np.fft.rfft(v)
    elif method == "direct":
        d = dft_direct(v)
    else:
        raise DomainError(f"unknown method {method!r}")
    ordinates = (d.real ** 2 + d.imag ** 2) / (2 * np.pi * n)
    return Periodogram(n=n, ordinates=ordinates, centered=bool(center))


def gamma_hat(pg: Periodogram, H: int):
    """Frequency-domain autocovariance estimates for lags ``0..H``.

    By symmetry of ``I_n`` the sum over ``G(n)`` equals twice the sum over
    ``j = 1..N``.
    """
    if not 0 <= H < pg.n:
        raise DomainError(f"lags must satisfy 0 <= H < n (H={H}, n={pg.n})")
    lam = pg.frequencies[1:]
    w = pg.ordinates[1:]
    h = np.arange(H + 1)
    return (4 * np.pi / pg.n) * (np.cos(np.outer(h, lam)) @ w)


def _acov(v, h):
    n = len(v)
    return float(v[: n - h] @ v[h:]) / n if h < n else 0.0


def gamma_tilde(x, H: int, center: bool = False):
    """Biased sample autocovariances ``n^-1 sum_{t} x_t x_{t+h}``, ``h = 0..H``."""
    v = _values(x)
    n = len(v)
    if not 0 <= H < n:
        raise DomainError(f"lags must satisfy 0 <= H < n (H={H}, n={n})")
    if center:
        v = v - v.mean()
    return np.array([_acov(v, h) for h in range(H + 1)])


def acf_estimates(x, H: int, center: bool = False) -> AcfEstimates:
    pg = compute_periodogram(x, center=center)
    return AcfEstimates(gamma_hat(pg, H), gamma_tilde(x, H, center=center))


def circular_identity_residual(x, h: int, center: bool = False, method: str = "auto"):
    """Left minus right side of the exact ``gamma_hat``/``gamma_tilde`` identity at lag ``h``.

    The result is zero up to roundoff, of order ``1e-15 * gamma_tilde(0)``.
    """
    v = _values(x)
    n = len(v)
    if not 0 <= h < n:
        raise DomainError("lag must satisfy 0 <= h < n")
    if center:
        v = v - v.mean()
    pg = compute_periodogram(v, method=method, min_length=1)
    lhs = gamma_hat(pg, h)[h]
    rhs = _acov(v, h) + (_acov(v, n - h) if h >= 1 else 0.0)
    correction = pg.ordinates[0]
    if n % 2 == 0:
        correction -= pg.ordinates[n // 2] * np.cos(np.pi * h)
    rhs -= 2 * np.pi / n * correction
    return float(lhs - rhs)

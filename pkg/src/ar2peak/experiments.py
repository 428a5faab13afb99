"""
Monte Carlo harness for the near-pole convergence rates.

A rate study lets the damping shrink with the sample size,
``delta_n = c_delta * n**(-alpha)``, simulates independent paths at every
``n`` on a grid, and measures the RMSE of the AR(2) estimators against the
population targets of the same ``delta_n``.  A least-squares line through
``(log n, log RMSE)`` gives the empirical rate; the theory predicts a slope
of ``-(1 + alpha) / 2``.

Every replica owns a child ``SeedSequence`` derived from the study seed, so
results do not depend on whether replicas run sequentially or in parallel.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import stats

from .errors import AR2PeakError, ConfigurationError
from .periodogram import compute_periodogram, gamma_hat
from .simulate import SimConfig, simulate_process
from .spectral_model import (
    DriverSpec,
    ProcessSpec,
    ar2_peak_frequency,
    peak_density_closed_form,
    population_ar2,
    spectral_density,
    theoretical_acf,
    variance_bracket,
    yule_walker_ar2,
)

__all__ = [
    "RateStudyConfig",
    "RateRow",
    "RateStudyResult",
    "LemmaCheck",
    "run_rate_study",
    "run_param_rate_study",
    "run_lemma_checks",
    "DEFAULT_N_GRID",
]

DEFAULT_N_GRID = (512, 1024, 2048, 4096, 8192)
FAILURE_FLAG_FRACTION = 0.2
ALPHA_MAX = 1.0 / 3.0


@dataclass(frozen=True)
class RateStudyConfig:
    """Parameters of a rate study.

    ``alpha = 0`` keeps ``delta_n = c_delta`` fixed, which is the classical
    ``n**-0.5`` regime.
    """

    alpha: float = 0.25
    lambda0: float = 1.0
    driver: DriverSpec = DriverSpec()
    n_grid: tuple = DEFAULT_N_GRID
    replicas: int = 500
    seed: int = 0
    c_delta: float = 1.0
    burn_in: int | str = "auto"

    def __post_init__(self):
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        if not (0 <= self.alpha < ALPHA_MAX):
            raise ConfigurationError("alpha must lie in [0, 1/3)")
        if int(self.replicas) != self.replicas or self.replicas < 1:
            raise ConfigurationError("replicas must be a positive integer")
        if not (0 < self.lambda0 < math.pi):
            raise ConfigurationError("lambda0 must lie in (0, pi)")
        if not isinstance(self.driver, DriverSpec):
            raise ConfigurationError("driver must be a DriverSpec")
        if not self.n_grid:
            raise ConfigurationError("n_grid must not be empty")
        if any(b <= a for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise ConfigurationError("n_grid must be strictly increasing")
        if self.n_grid[0] < 8:
            raise ConfigurationError("every n must be >= 8")
        if not self.c_delta > 0:
            raise ConfigurationError("c_delta must be positive")
        d = self.deltas()
        if not np.all((d > 0) & (d < 1)):
            raise ConfigurationError("every delta_n must lie in (0, 1)")
        if d[0] > 0.5:
            raise ConfigurationError(
                f"delta at the smallest n is {d[0]:.3g}; it must not exceed 0.5"
            )

    def deltas(self):
        return self.c_delta * np.asarray(self.n_grid, dtype=float) ** (-self.alpha)

    def spec(self, delta):
        return ProcessSpec(float(delta), self.lambda0, self.driver)

    def to_dict(self):
        d = asdict(self)
        d["n_grid"] = list(self.n_grid)
        return d


@dataclass(frozen=True)
class RateRow:
    n: int
    delta_n: float
    target: float
    rmse: float
    bias: float
    failures: int
    successes: int


@dataclass
class RateStudyResult:
    """Per-``n`` RMSE table and the fitted log-log slope.

    ``parameter`` names the estimated quantity: ``"lambda"``, ``"a1"`` or
    ``"a2"``.
    """

    parameter: str
    config: RateStudyConfig
    rows: list
    slope: float
    slope_stderr: float
    intercept: float
    flagged: bool = False
    warnings: list = field(default_factory=list)

    @property
    def expected_slope(self):
        return -(1.0 + self.config.alpha) / 2.0

    def to_dict(self):
        return {
            "parameter": self.parameter,
            "config": self.config.to_dict(),
            "expected_slope": self.expected_slope,
            "slope": self.slope,
            "slope_stderr": self.slope_stderr,
            "intercept": self.intercept,
            "flagged": self.flagged,
            "warnings": list(self.warnings),
            "rows": [asdict(r) for r in self.rows],
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "delta_n", "target", "rmse", "bias", "failures"])
        for r in self.rows:
            w.writerow([r.n, repr(r.delta_n), repr(r.target), repr(r.rmse), repr(r.bias), r.failures])
        return buf.getvalue()


def _replicate_fits(spec, n, seeds, burn_in):
    """Estimates ``(lambda_hat, a1_hat, a2_hat)`` for each seed; NaN where undefined."""
    out = np.full((len(seeds), 3), np.nan)
    for i, ss in enumerate(seeds):
        x = simulate_process(spec, SimConfig(n=n, seed=np.random.default_rng(ss), burn_in=burn_in))
        # simulated paths have mean zero; no centering
        g = gamma_hat(compute_periodogram(x), 2)
        try:
            a1, a2 = yule_walker_ar2(g[1] / g[0], g[2] / g[0])
        except AR2PeakError:
            continue
        out[i, 1:] = a1, a2
        try:
            out[i, 0] = ar2_peak_frequency(a1, a2)
        except AR2PeakError:
            pass
    return out


def _grid_job(args):
    spec, n, seeds, burn_in = args
    return _replicate_fits(spec, n, seeds, burn_in)


def _simulate_grid(cfg: RateStudyConfig, workers: int = 1):
    root = np.random.SeedSequence(cfg.seed)
    jobs = []
    for n, d, child in zip(cfg.n_grid, cfg.deltas(), root.spawn(len(cfg.n_grid))):
        jobs.append((cfg.spec(d), n, child.spawn(cfg.replicas), cfg.burn_in))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_grid_job, jobs))
    return [_grid_job(j) for j in jobs]


def _targets(cfg):
    out = []
    for d in cfg.deltas():
        spec = cfg.spec(d)
        a1, a2 = population_ar2(spec, theoretical_acf(spec, 2))
        try:
            lam = ar2_peak_frequency(a1, a2)
        except AR2PeakError as exc:
            raise ConfigurationError(f"population target undefined at delta={d:.4g}: {exc}") from None
        out.append((lam, a1, a2))
    return np.array(out)


def _summarise(parameter, cfg, targets, estimates):
    rows, warnings = [], []
    flagged = False
    for n, d, target, est in zip(cfg.n_grid, cfg.deltas(), targets, estimates):
        ok = est[~np.isnan(est)]
        failures = int(len(est) - len(ok))
        if len(ok):
            err = ok - target
            rmse, bias = float(np.sqrt(np.mean(err * err))), float(np.mean(err))
        else:
            rmse = bias = float("nan")
        if failures > FAILURE_FLAG_FRACTION * len(est):
            flagged = True
            warnings.append(f"n={n}: {failures}/{len(est)} fits undefined")
        rows.append(RateRow(int(n), float(d), float(target), rmse, bias, failures, len(ok)))
    logn = np.log([r.n for r in rows])
    logr = np.log([r.rmse for r in rows])
    good = np.isfinite(logr)
    if good.sum() >= 2:
        reg = stats.linregress(logn[good], logr[good])
        slope, stderr, icpt = float(reg.slope), float(reg.stderr), float(reg.intercept)
    else:
        slope = stderr = icpt = float("nan")
        warnings.append("fewer than two finite RMSE values; no slope")
    if len(cfg.n_grid) < 4:
        warnings.append("n_grid has fewer than 4 points; slope is indicative only")
    if cfg.replicas < 100:
        warnings.append("fewer than 100 replicas per n")
    return RateStudyResult(parameter, cfg, rows, slope, stderr, icpt, flagged, warnings)


def run_rate_study(cfg: RateStudyConfig, workers: int = 1) -> RateStudyResult:
    """RMSE of the AR(2) peak-frequency estimator along ``delta_n = c n^-alpha``.

    Replicas whose fit has no interior peak are excluded from the RMSE and
    counted in ``failures``.  More than 20% failures at any ``n`` flags the
    study but still reports a slope.
    """
    targets = _targets(cfg)
    sims = _simulate_grid(cfg, workers)
    return _summarise("lambda", cfg, targets[:, 0], [s[:, 0] for s in sims])


def run_param_rate_study(cfg: RateStudyConfig, workers: int = 1) -> dict:
    """Rate studies for ``a1_hat`` and ``a2_hat``; returns ``{"a1": ..., "a2": ...}``."""
    targets = _targets(cfg)
    sims = _simulate_grid(cfg, workers)
    return {
        name: _summarise(name, cfg, targets[:, k], [s[:, k] for s in sims])
        for k, name in ((1, "a1"), (2, "a2"))
    }


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    passed: bool
    measured: dict
    detail: str = ""

    def to_dict(self):
        return asdict(self)


def _non_increasing(seq, rtol=1e-9):
    return all(b <= a * (1 + rtol) + 1e-15 for a, b in zip(seq, seq[1:]))


def run_lemma_checks(
    lambda0: float = 1.0,
    driver: DriverSpec | None = None,
    deltas=(0.2, 0.1, 0.05, 0.025),
    H: int = 4,
    rho_slack: float = 2.0,
) -> list:
    """Evaluate the small-``delta`` properties of the family on a grid.

    ``deltas`` must descend.  Each check returns its measured values; none
    raises.  The checks are

    * ``closed_form``: ``f(lambda0)`` against its closed form (rel. 1e-10);
    * ``peak_scaling``: ``delta**2 f(lambda0)`` within relative ``2 delta`` of
      ``f_U(lambda0) / (4 sin^2 lambda0)``;
    * ``variance_bracket``: ``delta * gamma(0)`` inside
      :func:`~ar2peak.spectral_model.variance_bracket`;
    * ``rho_cos_gap``: ``max_h |rho(h) - cos(h lambda0)|`` non-increasing and
      below ``C delta`` with ``C = rho_slack * gap(delta_max) / delta_max``;
    * ``peak_approach``: ``|lambda_{0,delta} - lambda0|`` non-increasing.
    """
    driver = DriverSpec.white() if driver is None else driver
    deltas = [float(d) for d in deltas]
    specs = [ProcessSpec(d, lambda0, driver) for d in deltas]
    f_u = float(driver.density(lambda0))
    limit = f_u / (4 * math.sin(lambda0) ** 2)

    closed, scaling, dgam, gaps, peaks, brackets = [], [], [], [], [], []
    for s in specs:
        pk = spectral_density(s, lambda0)
        closed.append(abs(pk - peak_density_closed_form(s)) / pk)
        scaling.append(abs(s.delta ** 2 * pk - limit) / limit)
        acf = theoretical_acf(s, H)
        dgam.append(s.delta * float(acf.gamma[0]))
        brackets.append(variance_bracket(s))
        h = np.arange(1, H + 1)
        gaps.append(float(np.max(np.abs(acf.rho[1:] - np.cos(h * lambda0)))))
        try:
            a1, a2 = population_ar2(s, acf)
            peaks.append(ar2_peak_frequency(a1, a2))
        except AR2PeakError:
            peaks.append(float("nan"))

    checks = [
        LemmaCheck("closed_form", max(closed) <= 1e-10, {"relative_error": closed}),
        LemmaCheck(
            "peak_scaling",
            all(e <= 2 * d for e, d in zip(scaling, deltas)),
            {"relative_error": scaling, "limit": limit},
        ),
        LemmaCheck(
            "variance_bracket",
            all(lo <= v <= hi for v, (lo, hi) in zip(dgam, brackets)),
            {"delta_gamma0": dgam, "bracket": [list(b) for b in brackets]},
        ),
    ]
    C = rho_slack * gaps[0] / deltas[0]
    checks.append(
        LemmaCheck(
            "rho_cos_gap",
            _non_increasing(gaps) and all(g <= C * d for g, d in zip(gaps, deltas)),
            {"gap": gaps, "C": C},
        )
    )
    dist = [abs(p - lambda0) for p in peaks]
    if any(math.isnan(p) for p in peaks):
        checks.append(
            LemmaCheck(
                "peak_approach",
                False,
                {"peak": peaks},
                "best AR(2) fit has no interior peak for some delta",
            )
        )
    else:
        checks.append(
            LemmaCheck("peak_approach", _non_increasing(dist), {"peak": peaks, "distance": dist})
        )
    return checks

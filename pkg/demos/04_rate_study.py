"""Empirical convergence rate of the AR(2) peak-frequency estimator.

With delta fixed the estimator converges at the classical n^-1/2 rate.
Letting delta_n = n^-alpha shrink with n makes the peak sharper as data
accumulate, and the rate improves to n^-(1+alpha)/2.  Pass --quick for a
smaller run.
"""
import sys

from ar2peak.experiments import RateStudyConfig, run_rate_study

replicas = 100 if "--quick" in sys.argv else 500

studies = {
    "fixed delta = 0.2": RateStudyConfig(alpha=0.0, c_delta=0.2, replicas=replicas),
    "delta_n = n^-0.25": RateStudyConfig(alpha=0.25, replicas=replicas),
}
for title, cfg in studies.items():
    res = run_rate_study(cfg)
    print(f"\n{title}: slope {res.slope:.3f} +/- {res.slope_stderr:.3f} (theory {res.expected_slope:.3f})")
    print(f"{'n':>6} {'delta_n':>8} {'target':>8} {'rmse':>9} {'bias':>10} {'fail':>5}")
    for r in res.rows:
        print(f"{r.n:6d} {r.delta_n:8.4f} {r.target:8.5f} {r.rmse:9.5f} {r.bias:10.6f} {r.failures:5d}")
    for w in res.warnings:
        print("warning:", w)

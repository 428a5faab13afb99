"""
Command-line interface.

    ar2peak fit PATH [--raw] [--acf {hat,tilde}]
    ar2peak periodogram PATH [--overlay-ar2] [--out FILE] [--svg FILE]
    ar2peak simulate --delta D --lambda0 L [--driver white:1] --n N --seed S [--out FILE]
    ar2peak rates [--alpha A] [--lambda0 L] [--n-grid 512,1024,...] [--replicas R] [--out PREFIX]
    ar2peak lemmas [--lambda0 L] [--driver KIND:PARAMS]

``PATH`` is a ``label,value`` CSV with one header line; the literal name
``sunspots`` selects the bundled sunspot record.

Exit codes: 0 success, 2 validation error, 3 parse error, 4 numeric error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .ar2fit import METHODS, estimate_from_series, fitted_density
from .datasets import load_sunspots, read_series_csv
from .errors import DomainError, NumericError, ParseError
from .experiments import DEFAULT_N_GRID, RateStudyConfig, run_lemma_checks, run_rate_study
from .simulate import SimConfig, simulate_process
from .spectral_model import DriverSpec, ProcessSpec

EXIT_OK, EXIT_VALIDATION, EXIT_PARSE, EXIT_NUMERIC = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def parse_driver(text: str) -> DriverSpec:
    """``white[:sigma2]``, ``ar1:phi[,sigma2]`` or ``ma1:theta[,sigma2]``."""
    kind, _, params = text.partition(":")
    try:
        vals = [float(p) for p in params.split(",")] if params else []
    except ValueError:
        raise DomainError(f"bad driver parameters in {text!r}") from None
    if kind == "white":
        if len(vals) > 1:
            raise DomainError("white driver takes at most sigma2")
        return DriverSpec.white(*vals)
    if kind in ("ar1", "ma1"):
        if not 1 <= len(vals) <= 2:
            raise DomainError(f"{kind} driver takes coef[,sigma2]")
        return getattr(DriverSpec, kind)(*vals)
    raise DomainError(f"unknown driver kind {kind!r}")


def _clean(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.generic):
        return _clean(obj.item())
    return obj


def _dump(obj):
    return json.dumps(_clean(obj), indent=2, sort_keys=False)


def load_input(path):
    if path == "sunspots" and not os.path.exists(path):
        return load_sunspots()
    return read_series_csv(path)


@dataclass
class FitReport:
    """JSON-serialisable summary of an AR(2) fit.

    ``estimates`` maps each method to ``{"status": "ok", "lambda", "period"}``
    or ``{"status": "error", "message"}``.
    """

    n: int
    centered: bool
    acf: str
    a1: float | None
    a2: float | None
    rho1: float | None
    rho2: float | None
    discriminant: float | None
    sigma2: float | None
    estimates: dict
    provenance: str = ""
    metadata: dict = field(default_factory=dict)

    def to_dict(self):
        return _clean(asdict(self))

    @classmethod
    def from_dict(cls, d):
        return cls(**d)

    def to_json(self):
        return _dump(self.to_dict())


def build_fit_report(ts, center=True, acf="hat") -> FitReport:
    rep = estimate_from_series(ts, center=center, acf=acf)
    est = {}
    for m in METHODS:
        if m in rep.estimates:
            e = rep.estimates[m]
            est[m] = {"status": "ok", "lambda": e.lam, "period": e.period}
        else:
            est[m] = {"status": "error", "message": rep.notes.get(m, "undefined")}
    f = rep.fit
    return FitReport(
        n=rep.n,
        centered=center,
        acf=acf,
        a1=f.a1 if f else None,
        a2=f.a2 if f else None,
        rho1=f.rho1 if f else None,
        rho2=f.rho2 if f else None,
        discriminant=f.discriminant if f else None,
        sigma2=f.sigma2 if f else None,
        estimates=est,
        provenance=getattr(ts, "label", ""),
        metadata={"tool": "ar2peak", "version": __version__},
    )


def cmd_fit(args):
    ts = load_input(args.path)
    print(build_fit_report(ts, center=args.centered, acf=args.acf).to_json())
    return EXIT_OK


def cmd_periodogram(args):
    ts = load_input(args.path)
    rep = estimate_from_series(ts, center=args.centered, acf=args.acf)
    pg = rep.periodogram
    lam = pg.frequencies[1 : pg.N + 1]
    cols = {"lambda": lam, "I_n": pg.ordinates[1 : pg.N + 1]}
    warnings = []
    summary = {"n": pg.n, "rows": len(lam)}
    if args.overlay_ar2:
        if rep.fit is None:
            raise DomainError(rep.notes.get("ar2_max", "AR(2) fit undefined"))
        cols["f_fit"] = fitted_density(rep.fit, lam)
        if not rep.fit.complex_roots:
            warnings.append("fitted AR(2) has real roots; its density peaks at 0 or pi")
        summary["f_fit_argmax_lambda"] = float(lam[np.argmax(cols["f_fit"])])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(cols))
    for row in zip(*cols.values()):
        w.writerow([repr(float(v)) for v in row])
    for msg in warnings:
        print(f"warning: {msg}", file=sys.stderr)
    if args.svg:
        _write_svg(args.svg, cols, ts)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
        summary.update(out=args.out, warnings=warnings)
        print(_dump(summary))
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def _write_svg(path, cols, ts):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 3.5))
    ax.plot(cols["lambda"], cols["I_n"], color="black", lw=1, label="periodogram")
    if "f_fit" in cols:
        ax.plot(cols["lambda"], cols["f_fit"], color="tab:blue", lw=1.5, label="fitted AR(2)")
    ax.set_xlabel("frequency (rad / step)")
    ax.set_title(getattr(ts, "label", ""))
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def cmd_simulate(args):
    spec = ProcessSpec(args.delta, args.lambda0, parse_driver(args.driver))
    burn = args.burn_in if args.burn_in == "auto" else int(args.burn_in)
    ts = simulate_process(spec, SimConfig(n=args.n, seed=args.seed, burn_in=burn))
    lines = ["t,value"] + [f"{t},{v!r}" for t, v in enumerate(ts.values.tolist(), start=1)]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _int_list(text):
    return tuple(int(s) for s in text.split(",") if s.strip())


def cmd_rates(args):
    cfg = RateStudyConfig(
        alpha=args.alpha,
        lambda0=args.lambda0,
        driver=parse_driver(args.driver),
        n_grid=args.n_grid,
        replicas=args.replicas,
        seed=args.seed,
        c_delta=args.c_delta,
    )
    res = run_rate_study(cfg, workers=args.workers)
    doc = res.to_dict()
    if args.out:
        with open(args.out + ".json", "w", encoding="utf-8") as fh:
            fh.write(_dump(doc) + "\n")
        with open(args.out + ".csv", "w", encoding="utf-8") as fh:
            fh.write(res.to_csv())
    print(_dump(doc))
    return EXIT_OK


def cmd_lemmas(args):
    checks = run_lemma_checks(lambda0=args.lambda0, driver=parse_driver(args.driver))
    print(_dump([c.to_dict() for c in checks]))
    return EXIT_OK


def build_parser():
    p = _Parser(prog="ar2peak", description="AR(2)-based estimation of a dominant periodicity.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_input(sp):
        sp.add_argument("path", help="label,value CSV, or 'sunspots' for the bundled record")
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--centered", dest="centered", action="store_true", default=True,
                       help="subtract the sample mean (default)")
        g.add_argument("--raw", dest="centered", action="store_false", help="do not center")
        sp.add_argument("--acf", choices=("hat", "tilde"), default="hat",
                        help="autocovariance estimator feeding the fit")

    sp = sub.add_parser("fit", help="fit an AR(2) and report frequency estimates as JSON")
    add_input(sp)
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("periodogram", help="periodogram table with optional AR(2) overlay")
    add_input(sp)
    sp.add_argument("--overlay-ar2", action="store_true")
    sp.add_argument("--out")
    sp.add_argument("--svg", help="also write an SVG line chart (needs matplotlib)")
    sp.set_defaults(func=cmd_periodogram)

    sp = sub.add_parser("simulate", help="simulate a near-pole series to CSV")
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--lambda0", type=float, required=True)
    sp.add_argument("--driver", default="white:1")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--burn-in", default="auto")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("rates", help="Monte Carlo convergence-rate study")
    sp.add_argument("--alpha", type=float, default=0.25)
    sp.add_argument("--lambda0", type=float, default=1.0)
    sp.add_argument("--driver", default="white:1")
    sp.add_argument("--n-grid", type=_int_list, default=DEFAULT_N_GRID)
    sp.add_argument("--replicas", type=int, default=500)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--c-delta", type=float, default=1.0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", help="write PREFIX.json and PREFIX.csv")
    sp.set_defaults(func=cmd_rates)

    sp = sub.add_parser("lemmas", help="check small-delta properties of the spectral family")
    sp.add_argument("--lambda0", type=float, default=1.0)
    sp.add_argument("--driver", default="white:1")
    sp.set_defaults(func=cmd_lemmas)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())

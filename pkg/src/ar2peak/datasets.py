"""Loading two-column series files and the bundled sunspot record."""
from __future__ import annotations

import csv
import io
import math
import os
from importlib import resources

import numpy as np

from .errors import DomainError, ParseError
from .simulate import TimeSeries

__all__ = [
    "read_series_csv",
    "read_silso_yearly",
    "silso_to_csv",
    "load_sunspots",
    "SILSO_ENV",
]

SILSO_ENV = "AR2PEAK_SILSO_YEARLY"
BUNDLED_SUNSPOTS = "sunspots_yearly_v1.csv"


def _check_order(labels):
    try:
        keys = [float(s) for s in labels]
    except ValueError:
        return
    if any(b <= a for a, b in zip(keys, keys[1:])):
        raise DomainError("records must be ordered by time label, ascending")


def read_series_csv(source, label=None) -> TimeSeries:
    """Read a ``label,value`` CSV with one header line.

    ``source`` is a path or an open text stream.  Numeric time labels must
    be strictly ascending.

    Raises
    ------
    ParseError
        On a malformed row; the message names the 1-based line number.
    """
    if hasattr(source, "read"):
        text = source.read()
        label = label or getattr(source, "name", "<stream>")
    else:
        with open(source, encoding="utf-8", newline="") as fh:
            text = fh.read()
        label = label or os.fspath(source)
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ParseError("empty file", line=1)
    times, values = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise ParseError(f"expected 2 columns, found {len(row)}", line=lineno)
        try:
            v = float(row[1])
        except ValueError:
            raise ParseError(f"value {row[1]!r} is not a number", line=lineno) from None
        if not math.isfinite(v):
            raise ParseError(f"value {row[1]!r} is not finite", line=lineno)
        times.append(row[0].strip())
        values.append(v)
    _check_order(times)
    return TimeSeries(np.array(values), label=label, time_labels=tuple(times))


def read_silso_yearly(path, first=1700, last=2020) -> TimeSeries:
    """Read SILSO's ``SN_y_tot_V2.0.csv`` (``;``-separated, no header).

    Columns are mid-year date, yearly mean, standard deviation, number of
    observations, provisional flag.  Years outside ``[first, last]`` are
    dropped.
    """
    times, values = [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            parts = [p.strip() for p in line.split(";")]
            try:
                year = int(math.floor(float(parts[0])))
                v = float(parts[1])
            except (IndexError, ValueError):
                raise ParseError("not a SILSO yearly record", line=lineno) from None
            if first <= year <= last:
                times.append(str(year))
                values.append(v)
    return TimeSeries(np.array(values), label=f"SILSO V2.0 {first}-{last}", time_labels=tuple(times))


def silso_to_csv(path, out, first=1700, last=2020):
    """Convert a SILSO yearly file to the ``year,sunspots`` CSV dialect."""
    ts = read_silso_yearly(path, first, last)
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write("year,sunspots\n")
        for t, v in zip(ts.time_labels, ts.values):
            fh.write(f"{t},{float(v)!r}\n")


def bundled_sunspots_path():
    return resources.files("ar2peak") / "data" / BUNDLED_SUNSPOTS


def load_sunspots(prefer_v2=True) -> TimeSeries:
    """Yearly sunspot numbers.

    If ``prefer_v2`` and the ``AR2PEAK_SILSO_YEARLY`` environment variable
    points to a SILSO V2.0 yearly file, its 1700-2020 stretch is returned.
    Otherwise the bundled version 1 record (1700-2008) is used; see
    ``ar2peak/data/README.md`` for its provenance.
    """
    path = os.environ.get(SILSO_ENV)
    if prefer_v2 and path:
        return read_silso_yearly(path)
    with resources.as_file(bundled_sunspots_path()) as p:
        ts = read_series_csv(p)
    return TimeSeries(ts.values, label="sunspots V1 1700-2008 (statsmodels)", time_labels=ts.time_labels)

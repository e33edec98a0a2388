"""Time-height measurement ingestion from delimited text files.

Rows with missing, unparseable, non-finite, or non-positive values are kept
but masked (with a per-row reason), so one bad sample never drops a day of
data. Parsing is deterministic: re-reading a file reproduces the series and
its mask exactly.
"""
from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field
from collections import Counter

import numpy as np

from .errors import NoValidRows, ParseError, SchemaError
from .scinum import decompose

DEFAULT_MISSING_TOKENS = ("", "NaN", "nan", "-999")


@dataclass(frozen=True)
class TimeHeightSeries:
    """Parallel time (hours), height (km), and measurement arrays plus mask.

    mask[i] is True when row i is unusable; mask_reasons[i] then names why.
    Unmasked values are guaranteed positive and finite.
    """

    time: np.ndarray
    height: np.ndarray
    value: np.ndarray
    mask: np.ndarray
    mask_reasons: tuple
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.time)
        if not (len(self.height) == len(self.value) == len(self.mask) == n
                == len(self.mask_reasons)):
            raise ValueError("series arrays must have equal length")

    def __len__(self) -> int:
        return len(self.time)

    @property
    def n_masked(self) -> int:
        return int(np.count_nonzero(self.mask))

    @property
    def n_valid(self) -> int:
        return len(self) - self.n_masked

    def mask_counts(self) -> dict[str, int]:
        return dict(Counter(r for r in self.mask_reasons if r is not None))

    def valid_values(self) -> np.ndarray:
        return self.value[~self.mask]

    def value_range(self) -> tuple[float, float]:
        vals = self.valid_values()
        if len(vals) == 0:
            raise NoValidRows("series has no unmasked rows")
        return float(np.min(vals)), float(np.max(vals))


def _column_index(header, wanted, fallback: int, path) -> int:
    if isinstance(wanted, int):
        return wanted
    if header is None:
        return fallback
    try:
        return header.index(wanted)
    except ValueError:
        raise SchemaError(f"{path}: required column {wanted!r} not found in header {header}")


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def parse_csv(path, *, delimiter: str = ",", time_col="time", height_col="height",
              value_col="value", missing_tokens=DEFAULT_MISSING_TOKENS,
              time_range=(0.0, 24.0), height_range=(0.0, 12.0),
              units: str = "") -> TimeHeightSeries:
    """Parse a delimited time/height/value file into a TimeHeightSeries.

    Columns are selected by header name, falling back to positions 0, 1, 2
    for headerless files; integer column arguments force positions. Rows
    whose fields are missing tokens, unparseable, non-finite, non-positive
    (value), or outside the configured time/height ranges are masked with a
    reason rather than dropped.
    """
    missing = set(missing_tokens)
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh, delimiter=delimiter))

    if not rows:
        raise NoValidRows(f"{path}: file is empty")

    header = None
    first = [tok.strip() for tok in rows[0]]
    if any(tok and not _is_number(tok) and tok not in missing for tok in first):
        header = first
        data_rows = rows[1:]
        first_line = 2
    else:
        data_rows = rows
        first_line = 1

    ti = _column_index(header, time_col, 0, path)
    hi = _column_index(header, height_col, 1, path)
    vi = _column_index(header, value_col, 2, path)
    needed = max(ti, hi, vi) + 1

    times, heights, values, mask, reasons = [], [], [], [], []

    def _field(raw, bounds, what, positive=False):
        """Returns (number, reason); reason is None when the field is usable."""
        tok = raw.strip()
        if tok in missing:
            return math.nan, f"missing-{what}"
        try:
            x = float(tok)
        except ValueError:
            return math.nan, f"unparseable-{what}"
        if math.isnan(x) or math.isinf(x):
            return math.nan, f"non-finite-{what}"
        if positive and x <= 0.0:
            return x, "non-positive"
        if bounds is not None and not (bounds[0] <= x <= bounds[1]):
            return x, f"out-of-range-{what}"
        return x, None

    for offset, row in enumerate(data_rows):
        lineno = first_line + offset
        if len(row) == 0 or all(not tok.strip() for tok in row):
            continue
        if len(row) < needed:
            raise ParseError(
                f"{path}:{lineno}: expected at least {needed} fields, got {len(row)}"
            )
        t, t_reason = _field(row[ti], time_range, "time")
        h, h_reason = _field(row[hi], height_range, "height")
        v, v_reason = _field(row[vi], None, "value", positive=True)
        reason = t_reason or h_reason or v_reason
        times.append(t)
        heights.append(h)
        values.append(v)
        mask.append(reason is not None)
        reasons.append(reason)

    if not times:
        raise NoValidRows(f"{path}: no data rows")
    if all(mask):
        raise NoValidRows(f"{path}: all {len(times)} rows are masked")

    variable = value_col if isinstance(value_col, str) else f"column {value_col}"
    return TimeHeightSeries(
        time=np.array(times, dtype=float),
        height=np.array(heights, dtype=float),
        value=np.array(values, dtype=float),
        mask=np.array(mask, dtype=bool),
        mask_reasons=tuple(reasons),
        metadata={
            "source": os.path.basename(str(path)),
            "variable": variable,
            "units": units,
        },
    )


def observed_exponent_span(series: TimeHeightSeries) -> tuple[int, int]:
    """(min, max) exponent over the unmasked values."""
    vals = series.valid_values()
    if len(vals) == 0:
        raise NoValidRows("series has no unmasked rows")
    exps = [decompose(float(v)).exponent for v in (np.min(vals), np.max(vals))]
    return exps[0], exps[1]

"""Quantitative colormap diagnostics.

Covers the decade-normalized range-size score for answered value ranges,
adjacent-step DeltaE profiles, HSV channel profiles, band-boundary color
distances, and per-band lightness monotonicity checks.

All functions are pure; unrestricted concurrency is safe.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .color import LabColor, delta_e_2000, delta_e_76, srgb_to_hsv, srgb_to_lab_array
from .colormap import ASCENDING, DESCENDING, ColormapTable, OmcColormap, lookup_array
from .errors import InvalidRange
from .scinum import ScientificValue, compose

DE76 = "de76"
DE2000 = "de2000"


@dataclass(frozen=True)
class RangeAnswer:
    """A value range given as two scientific-notation endpoints."""

    low: ScientificValue
    high: ScientificValue

    def __post_init__(self):
        if compose(self.low) > compose(self.high):
            raise InvalidRange(
                f"range low {compose(self.low):g} exceeds high {compose(self.high):g}"
            )


@dataclass(frozen=True)
class ProfileSeries:
    """Sampled curve over [0, 1]: positions paired with values."""

    positions: tuple[float, ...]
    values: tuple[float, ...]
    label: str = ""

    def __post_init__(self):
        if len(self.positions) != len(self.values):
            raise ValueError("positions and values must have equal length")
        for p0, p1 in zip(self.positions, self.positions[1:]):
            if p1 <= p0:
                raise ValueError("positions must be strictly increasing")

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("position,value\n")
            for p, v in zip(self.positions, self.values):
                fh.write(f"{p!r},{v!r}\n")


class BandMonotonicity(NamedTuple):
    exponent: int
    monotone: bool
    min_step: float
    direction: str


def range_size(ans: RangeAnswer) -> float:
    """Width of a value range in decade-normalized units.

    One full decade counts as 10 mantissa units, so the result is
    ((Exp_max - Exp_min) * 10 + (Mant_max - Mant_min)) / 10. The mantissa
    difference may be negative for valid ranges (e.g. 9e-5 to 2e-4); the
    total is non-negative whenever low <= high.
    """
    if compose(ans.low) > compose(ans.high):
        raise InvalidRange("range low exceeds high")
    d_exp = ans.high.exponent - ans.low.exponent
    d_man = ans.high.mantissa - ans.low.mantissa
    return (d_exp * 10.0 + d_man) / 10.0


def _metric_fn(metric: str):
    if metric == DE76:
        return delta_e_76
    if metric == DE2000:
        return delta_e_2000
    raise ValueError(f"unknown metric {metric!r}; expected {DE76!r} or {DE2000!r}")


def delta_e_profile(table: ColormapTable, metric: str = DE76) -> ProfileSeries:
    """Color difference between each pair of adjacent stops.

    Value i compares stop i with stop i+1; its position is the midpoint
    (i + 0.5) / (N - 1) of the two stops' positions on [0, 1].
    """
    fn = _metric_fn(metric)
    labs = srgb_to_lab_array(table.stops_array())
    n = len(table.stops)
    values = tuple(
        fn(LabColor(*labs[i]), LabColor(*labs[i + 1])) for i in range(n - 1)
    )
    positions = tuple((i + 0.5) / (n - 1) for i in range(n - 1))
    return ProfileSeries(positions, values, label=f"delta_e_{metric}")


def hsv_profile(table: ColormapTable) -> tuple[ProfileSeries, ProfileSeries, ProfileSeries]:
    """Per-stop H, S, V channel profiles over [0, 1].

    Hue is unwrapped so adjacent stops never jump by more than 180 degrees,
    which keeps within-band hue curves continuous.
    """
    n = len(table.stops)
    positions = tuple(i / (n - 1) for i in range(n))
    hsv = [srgb_to_hsv(c) for c in table.stops]
    hs = [hsv[0].h]
    for c in hsv[1:]:
        prev = hs[-1]
        h = c.h
        k = round((prev - h) / 360.0)
        hs.append(h + 360.0 * k)
    return (
        ProfileSeries(positions, tuple(hs), label="h"),
        ProfileSeries(positions, tuple(c.s for c in hsv), label="s"),
        ProfileSeries(positions, tuple(c.v for c in hsv), label="v"),
    )


def boundary_report(cmap: OmcColormap, metric: str = DE76) -> list[tuple[int, float]]:
    """DeltaE between each band's terminal color and the next band's initial
    color; one entry per interior boundary, indexed from 0."""
    fn = _metric_fn(metric)
    out = []
    for k in range(cmap.n_bands - 1):
        end = cmap.bands[k].ramp_end
        start = cmap.bands[k + 1].ramp_start
        out.append((k, fn(end, start)))
    return out


def boundary_ratio(report: list[tuple[int, float]]) -> float:
    """Max/min ratio of a boundary report's DeltaE values."""
    values = [v for _, v in report]
    lo = min(values)
    if lo <= 0.0:
        return math.inf
    return max(values) / lo


def band_sample_values(exponent: int, samples: int = 64,
                       mode: str = "mantissa-linear") -> np.ndarray:
    """Values sampling one exponent band from its lower edge to just below the
    next decade (staying clear of the power-of-ten snap shell)."""
    ts = np.linspace(0.0, 1.0, samples)
    m_top = 10.0 * (1.0 - 1e-12)
    if mode == "log-fraction":
        m = np.power(10.0, ts * math.log10(m_top))
    else:
        m = 1.0 + (m_top - 1.0) * ts
    return m * 10.0 ** exponent


def monotonicity_check(cmap: OmcColormap, samples: int = 64) -> list[BandMonotonicity]:
    """Strict L* monotonicity of each band, sampled through the sRGB projection."""
    reports = []
    for band in cmap.bands:
        # Evaluate through lookup_array so gamut clipping is part of the check.
        values = band_sample_values(band.exponent, samples, cmap.within_band_mode)
        rgb, _ = lookup_array(cmap, values)
        L = srgb_to_lab_array(rgb)[:, 0]
        steps = np.diff(L)
        if np.all(steps > 0.0):
            direction, monotone = ASCENDING, True
        elif np.all(steps < 0.0):
            direction, monotone = DESCENDING, True
        else:
            direction, monotone = band.direction, False
        reports.append(
            BandMonotonicity(band.exponent, monotone, float(np.min(np.abs(steps))), direction)
        )
    return reports

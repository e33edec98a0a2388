"""Matplotlib figures for colormap diagnostics.

These figures accompany the CSV profiles written by the CLI report path:
a colormap strip on top, the requested diagnostic curve(s) below. They are
presentation output only; the byte-stable raster path lives in `render`.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .colormap import ColormapTable, OmcColormap, sample_table
from .metrics import (
    BandMonotonicity,
    ProfileSeries,
    boundary_report,
    delta_e_profile,
    hsv_profile,
)


def _as_table(cmap, samples: int = 448) -> ColormapTable:
    if isinstance(cmap, OmcColormap):
        return sample_table(cmap, samples)
    return cmap


def _strip_axis(ax, table: ColormapTable) -> None:
    rgb = table.stops_array()[None, :, :]
    ax.imshow(rgb, aspect="auto", extent=(0.0, 1.0, 0.0, 1.0), interpolation="nearest")
    ax.set_yticks([])
    ax.set_xticks([])


def _curve_axis(ax, profile: ProfileSeries, ylabel: str) -> None:
    ax.plot(profile.positions, profile.values, lw=1.2, color="#333333")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)


def deltae_figure(cmap, metric: str = "de76", out_path=None):
    """Strip plus adjacent-step DeltaE curve."""
    table = _as_table(cmap)
    profile = delta_e_profile(table, metric)
    fig, (ax0, ax1) = plt.subplots(
        2, 1, figsize=(8, 3), height_ratios=[1, 3], constrained_layout=True
    )
    _strip_axis(ax0, table)
    _curve_axis(ax1, profile, f"adjacent {metric}")
    ax1.set_xlabel("colormap position")
    return _finish(fig, out_path)


def hsv_figure(cmap, out_path=None):
    """Strip plus H, S, V channel curves."""
    table = _as_table(cmap)
    h, s, v = hsv_profile(table)
    fig, axes = plt.subplots(
        4, 1, figsize=(8, 5), height_ratios=[1, 2, 2, 2], constrained_layout=True
    )
    _strip_axis(axes[0], table)
    _curve_axis(axes[1], h, "hue (deg)")
    _curve_axis(axes[2], s, "saturation")
    _curve_axis(axes[3], v, "value")
    axes[3].set_xlabel("colormap position")
    return _finish(fig, out_path)


def boundary_figure(cmap: OmcColormap, metric: str = "de76", out_path=None):
    """Bar chart of interior band-boundary color differences."""
    report = boundary_report(cmap, metric)
    fig, (ax0, ax1) = plt.subplots(
        2, 1, figsize=(8, 3), height_ratios=[1, 3], constrained_layout=True
    )
    _strip_axis(ax0, _as_table(cmap))
    ax1.bar([k for k, _ in report], [v for _, v in report], color="#555555")
    ax1.set_xlabel("boundary index")
    ax1.set_ylabel(f"boundary {metric}")
    ax1.grid(True, axis="y", alpha=0.3)
    return _finish(fig, out_path)


def monotonicity_figure(cmap: OmcColormap, reports: list[BandMonotonicity], out_path=None):
    """Per-band L* ramps over the band position."""
    from .color import srgb_to_lab_array
    from .colormap import lookup_array
    from .metrics import band_sample_values

    fig, ax = plt.subplots(figsize=(8, 3), constrained_layout=True)
    ts = np.linspace(0.0, 1.0, 64)
    for band, rep in zip(cmap.bands, reports):
        values = band_sample_values(band.exponent, 64, cmap.within_band_mode)
        rgb, _ = lookup_array(cmap, values)
        L = srgb_to_lab_array(rgb)[:, 0]
        style = "-" if rep.monotone else ":"
        ax.plot(ts, L, style, color=tuple(rgb[len(rgb) // 2]), lw=1.5,
                label=f"1e{band.exponent}")
    ax.set_xlabel("band position")
    ax.set_ylabel("L*")
    ax.grid(True, alpha=0.3)
    ax.legend(ncols=4, fontsize=8)
    return _finish(fig, out_path)


def _finish(fig, out_path):
    if out_path is not None:
        fig.savefig(str(out_path), dpi=100)
        plt.close(fig)
        return None
    return fig

"""Deterministic raster rendering of time-height scatterplots and colorbars.

No anti-aliasing, no alpha blending, no system fonts: points are filled
squares placed at integer pixel positions, ticks are 1-px rule marks, and the
optional labels come from a built-in 3x5 pixel glyph set. Rendering the same
inputs therefore produces byte-identical PNG files, which is what the golden
tests pin. Every drawn pixel carries an exact colormap output color.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from PIL import Image

from .color import RgbColor
from .colormap import ColormapTable, OmcColormap, sample_table
from .colormap import _band_fraction_array
from .errors import DomainMismatch, EmptyPlot, InvalidDomain, IoError
from .ingest import TimeHeightSeries
from .scinum import LOG_FRACTION, log_normalize

COLORBAR_NONE = "none"
COLORBAR_RIGHT = "right"
COLORBAR_BELOW = "below"

_BAR_THICKNESS = 40
_TICK_LEN = 6
_GAP = 8

# 3x5 pixel glyphs for colorbar labels like "1e-8"; rows top to bottom.
_GLYPHS = {
    "0": ("111", "101", "101", "101", "111"),
    "1": ("010", "110", "010", "010", "111"),
    "2": ("111", "001", "111", "100", "111"),
    "3": ("111", "001", "111", "001", "111"),
    "4": ("101", "101", "111", "001", "001"),
    "5": ("111", "100", "111", "001", "111"),
    "6": ("111", "100", "111", "101", "111"),
    "7": ("111", "001", "010", "010", "010"),
    "8": ("111", "101", "111", "101", "111"),
    "9": ("111", "101", "111", "001", "111"),
    "-": ("000", "000", "111", "000", "000"),
    "e": ("011", "101", "111", "100", "011"),
}


@dataclass(frozen=True)
class RenderSpec:
    """Raster geometry and decoration options for scatter rendering."""

    width_px: int = 1291
    height_px: int = 500
    x_range: tuple[float, float] = (0.0, 24.0)
    y_range: tuple[float, float] = (0.0, 12.0)
    point_size_px: int = 3
    background: RgbColor = field(default_factory=lambda: RgbColor(1.0, 1.0, 1.0))
    colorbar: str = COLORBAR_NONE
    tick_labels: bool = True

    def __post_init__(self):
        if self.width_px < 16 or self.height_px < 16:
            raise ValueError("image must be at least 16x16 px")
        if self.point_size_px < 1:
            raise ValueError("point size must be >= 1 px")
        if self.colorbar not in (COLORBAR_NONE, COLORBAR_RIGHT, COLORBAR_BELOW):
            raise ValueError(f"unknown colorbar placement {self.colorbar!r}")
        if self.x_range[0] >= self.x_range[1] or self.y_range[0] >= self.y_range[1]:
            raise ValueError("x_range and y_range must be non-empty intervals")


def _blank(width: int, height: int, background: RgbColor) -> np.ndarray:
    img = np.empty((height, width, 3), dtype=np.uint8)
    img[:, :] = background.to_8bit()
    return img


# Colors come from the colormap's own sampled table rather than per-value
# exact lookups: every drawn pixel is then one of a closed, enumerable set of
# sampled output colors. At the default resolution the within-band position
# quantization moves L* by under 0.01, far below one 8-bit step.
LUT_SAMPLES_PER_BAND = 4096


def _omc_lut_indices(cmap: OmcColormap, values: np.ndarray, k: int):
    """Indices into sample_table(cmap, n_bands*k + 1) plus out-of-range flags.

    The band index is exact (a value never borrows a neighboring exponent's
    hue); only the position inside the band is rounded to the table grid.
    """
    e, u = _band_fraction_array(values, LOG_FRACTION)
    below = e < cmap.e_min
    above = e > cmap.e_max
    band = np.clip(e - cmap.e_min, 0, cmap.n_bands - 1)
    j = np.minimum(np.round(u * k).astype(int), k - 1)
    idx = band * k + j
    idx = np.where(below, 0, idx)
    idx = np.where(above, cmap.n_bands * k, idx)
    return idx, below | above


def _colors_for_values(cmap, values: np.ndarray, vmin, vmax):
    """(n, 3) uint8 colors plus out-of-range flags for either colormap kind."""
    if isinstance(cmap, OmcColormap):
        table = sample_table(cmap, cmap.n_bands * LUT_SAMPLES_PER_BAND + 1)
        idx, out = _omc_lut_indices(cmap, values, LUT_SAMPLES_PER_BAND)
        stops = np.round(table.stops_array() * 255.0).astype(np.uint8)
        return stops[idx], out
    if isinstance(cmap, ColormapTable):
        if vmin is None or vmax is None:
            raise InvalidDomain("table rendering needs an explicit or inferred (vmin, vmax)")
        n = len(cmap.stops)
        pairs = [log_normalize(float(v), vmin, vmax) for v in values]
        idx = np.array([int(round(t * (n - 1))) for t, _ in pairs])
        out = np.array([flag for _, flag in pairs], dtype=bool)
        stops = np.round(cmap.stops_array() * 255.0).astype(np.uint8)
        return stops[idx], out
    raise TypeError(f"unsupported colormap type {type(cmap).__name__}")


def render_scatter(series: TimeHeightSeries, cmap, spec: RenderSpec | None = None,
                   *, vmin: float | None = None, vmax: float | None = None) -> np.ndarray:
    """Render unmasked points as filled squares; returns an (H, W, 3) uint8 array.

    Points are drawn in data order (later rows overdraw earlier ones) at
    floor-mapped pixel positions; y counts upward from the bottom edge.
    Values outside the colormap domain clamp to its end colors.
    """
    spec = spec or RenderSpec()
    keep = ~series.mask
    if not np.any(keep):
        raise EmptyPlot("nothing to render: every row is masked")
    times = series.time[keep]
    heights = series.height[keep]
    values = series.value[keep]

    if isinstance(cmap, ColormapTable) and (vmin is None or vmax is None):
        vmin = float(np.min(values)) if vmin is None else vmin
        vmax = float(np.max(values)) if vmax is None else vmax
        if vmin == vmax:
            vmax = vmin * 10.0
    colors, out_of_range = _colors_for_values(cmap, values, vmin, vmax)
    if np.all(out_of_range):
        raise DomainMismatch("colormap domain excludes every unmasked value")

    w, h = spec.width_px, spec.height_px
    x0, x1 = spec.x_range
    y0, y1 = spec.y_range
    px = np.floor((times - x0) / (x1 - x0) * w).astype(int)
    py = np.floor((heights - y0) / (y1 - y0) * h).astype(int)
    px = np.where((times == x1) & (px == w), w - 1, px)
    py = np.where((heights == y1) & (py == h), h - 1, py)

    img = _blank(w, h, spec.background)
    half_lo = (spec.point_size_px - 1) // 2
    half_hi = spec.point_size_px // 2
    for i in range(len(values)):
        cx, cy = px[i], py[i]
        if not (0 <= cx < w and 0 <= cy < h):
            continue
        r0 = max(h - 1 - cy - half_lo, 0)
        r1 = min(h - 1 - cy + half_hi + 1, h)
        c0 = max(cx - half_lo, 0)
        c1 = min(cx + half_hi + 1, w)
        img[r0:r1, c0:c1] = colors[i]

    if spec.colorbar == COLORBAR_BELOW:
        bar = render_colorbar(cmap, spec, orientation="horizontal", length=w,
                              vmin=vmin, vmax=vmax)
        img = _stack_vertical(img, bar, spec.background)
    elif spec.colorbar == COLORBAR_RIGHT:
        bar = render_colorbar(cmap, spec, orientation="vertical", length=h,
                              vmin=vmin, vmax=vmax)
        img = _stack_horizontal(img, bar, spec.background)
    return img


def _stack_vertical(top: np.ndarray, bottom: np.ndarray, background: RgbColor) -> np.ndarray:
    w = max(top.shape[1], bottom.shape[1])
    out = _blank(w, top.shape[0] + _GAP + bottom.shape[0], background)
    out[: top.shape[0], : top.shape[1]] = top
    out[top.shape[0] + _GAP :, : bottom.shape[1]] = bottom
    return out


def _stack_horizontal(left: np.ndarray, right: np.ndarray, background: RgbColor) -> np.ndarray:
    h = max(left.shape[0], right.shape[0])
    out = _blank(left.shape[1] + _GAP + right.shape[1], h, background)
    out[: left.shape[0], : left.shape[1]] = left
    out[: right.shape[0], left.shape[1] + _GAP :] = right
    return out


def _draw_text(img: np.ndarray, row: int, col: int, text: str, scale: int = 2) -> None:
    for ch in text:
        glyph = _GLYPHS.get(ch)
        if glyph is None:
            col += 4 * scale
            continue
        for gr, bits in enumerate(glyph):
            for gc, bit in enumerate(bits):
                if bit == "1":
                    r0 = row + gr * scale
                    c0 = col + gc * scale
                    if 0 <= r0 and r0 + scale <= img.shape[0] and 0 <= c0 and c0 + scale <= img.shape[1]:
                        img[r0 : r0 + scale, c0 : c0 + scale] = (0, 0, 0)
        col += 4 * scale


def _exponent_label(e: int) -> str:
    return f"1e{e}"


def _decade_ticks(cmap, vmin, vmax) -> tuple[list[float], float, float]:
    """Tick positions (log-fractions in [0, 1]) and the log domain they live on."""
    if isinstance(cmap, OmcColormap):
        lo, hi = cmap.domain_min, cmap.domain_sup
    else:
        lo, hi = vmin, vmax
    e_first = math.ceil(math.log10(lo) - 1e-9)
    e_last = math.floor(math.log10(hi) + 1e-9)
    span = math.log10(hi) - math.log10(lo)
    ticks = [(e, (e - math.log10(lo)) / span) for e in range(e_first, e_last + 1)]
    return ticks, lo, hi


def render_colorbar(cmap, spec: RenderSpec | None = None, *, orientation: str = "horizontal",
                    length: int | None = None, thickness: int = _BAR_THICKNESS,
                    vmin: float | None = None, vmax: float | None = None) -> np.ndarray:
    """Colormap strip over the log-scaled domain with decade tick rule marks.

    One sample per pixel along the strip (>= 256 at default sizes); tick
    marks sit at exact powers of ten, labeled "1e<exponent>" with the
    built-in glyphs when spec.tick_labels is on.
    """
    spec = spec or RenderSpec()
    if isinstance(cmap, ColormapTable) and (vmin is None or vmax is None):
        raise InvalidDomain("colorbar for a table needs explicit (vmin, vmax)")
    length = length or (spec.width_px if orientation == "horizontal" else spec.height_px)

    ticks, lo, hi = _decade_ticks(cmap, vmin, vmax)
    # One value per strip pixel, log-spaced, clamped inside the half-open domain.
    u = (np.arange(length) + 0.5) / length
    values = np.power(10.0, math.log10(lo) + u * (math.log10(hi) - math.log10(lo)))
    colors, _ = _colors_for_values(cmap, values, vmin, vmax)

    label_h = 12 if spec.tick_labels else 0
    if orientation == "horizontal":
        img = _blank(length, thickness + _TICK_LEN + label_h, spec.background)
        img[:thickness, :] = colors[None, :, :]
        for e, frac in ticks:
            col = min(int(round(frac * (length - 1))), length - 1)
            img[thickness : thickness + _TICK_LEN, col] = (0, 0, 0)
            if spec.tick_labels:
                text = _exponent_label(e)
                tw = 4 * 2 * len(text) - 2
                _draw_text(img, thickness + _TICK_LEN + 1, max(col - tw // 2, 0), text)
        return img

    if orientation == "vertical":
        label_w = 36 if spec.tick_labels else 0
        img = _blank(thickness + _TICK_LEN + label_w, length, spec.background)
        img[:, :thickness] = colors[::-1, None, :]
        for e, frac in ticks:
            row = length - 1 - min(int(round(frac * (length - 1))), length - 1)
            img[row, thickness : thickness + _TICK_LEN] = (0, 0, 0)
            if spec.tick_labels:
                _draw_text(img, max(row - 5, 0), thickness + _TICK_LEN + 2, _exponent_label(e))
        return img
    raise ValueError(f"unknown orientation {orientation!r}")


def write_image(img: np.ndarray, path) -> None:
    """Write an (H, W, 3) uint8 array as a reproducible 8-bit RGB PNG."""
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3 or img.size == 0:
        raise ValueError(f"expected a non-empty (H, W, 3) image, got shape {img.shape}")
    try:
        Image.fromarray(img.astype(np.uint8), mode="RGB").save(str(path), format="PNG")
    except OSError as exc:
        raise IoError(f"cannot write image to {path}: {exc}") from exc


def read_image(path) -> np.ndarray:
    try:
        with Image.open(str(path)) as im:
            return np.asarray(im.convert("RGB"))
    except OSError as exc:
        raise IoError(f"cannot read image from {path}: {exc}") from exc

"""Order-of-magnitude colormaps.

Each integer exponent of the data domain gets its own hue band; inside a band
the mantissa drives a perceptually linear lightness ramp (linear interpolation
in CIELAB between two fixed endpoints, so L* is affine in the band position).
Band hues are picked so adjacent-band color distances come out approximately
even; an automated equalizer (coordinate descent with a golden-section line
search over the interior hues) replaces manual tuning.

Ramp geometry: a band's two endpoints share one (a*, b*) chroma vector, i.e.
the ramp varies only in L*. The chroma is the largest value that keeps the
band's endpoints and midpoint inside the sRGB gamut, capped at CHROMA_CAP so
the hue stays stable along the ramp (uncapped green ramps drift past 15
degrees of HSV hue). Hue anchors are plain HSV hues; a precomputed monotone
table maps them to the CIELAB hue angle whose ramp midpoint projects back to
exactly that HSV hue.

Colormaps are immutable after construction; lookup and sampling are pure and
safe for unlimited concurrent readers.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional

import numpy as np

from . import scinum
from ._viridis_data import VIRIDIS_STOPS
from .color import LabColor, RgbColor, lab_to_srgb_array
from .errors import InvalidSpan, ParseError, TooManyBands, UnsupportedFormat

ASCENDING = "ascending"
DESCENDING = "descending"

VARIANT_OMC = "omc"
VARIANT_OMC_SL = "omc_sl"

MAX_BANDS = 12
CHROMA_CAP = 36.0

_NATIVE_FORMAT = "native"
_STRUCTURED_FORMAT = "structured"


@dataclass(frozen=True)
class RampTemplate:
    """Lightness range and chroma cap shared by all bands of a colormap."""

    l_lo: float = 30.0
    l_hi: float = 90.0
    chroma_cap: float = CHROMA_CAP

    def __post_init__(self):
        if not (0.0 <= self.l_lo < self.l_hi <= 100.0):
            raise ValueError(f"need 0 <= l_lo < l_hi <= 100, got {self.l_lo}, {self.l_hi}")
        if self.l_hi - self.l_lo < 20.0:
            raise ValueError("lightness range must span at least 20 L* units")


@dataclass(frozen=True)
class BuildConfig:
    """Options for build_omc / build_omc_sl."""

    template: RampTemplate = field(default_factory=RampTemplate)
    within_band_mode: str = scinum.MANTISSA_LINEAR
    equalize: bool = True
    initial_hues: Optional[tuple[float, ...]] = None
    ascending: bool = True


@dataclass(frozen=True)
class ExponentBand:
    """One exponent's hue band: a Lab lightness ramp from t=0 to t=1."""

    exponent: int
    hue_anchor: float
    ramp_start: LabColor
    ramp_end: LabColor
    direction: str


@dataclass(frozen=True)
class OmcColormap:
    e_min: int
    e_max: int
    bands: tuple[ExponentBand, ...]
    variant: str
    within_band_mode: str
    name: str = ""

    @property
    def n_bands(self) -> int:
        return len(self.bands)

    @property
    def domain_min(self) -> float:
        return 10.0 ** self.e_min

    @property
    def domain_sup(self) -> float:
        """Exclusive upper edge of the covered value range."""
        return 10.0 ** (self.e_max + 1)


@dataclass(frozen=True)
class ColormapTable:
    """A flat, ordered list of sampled RGB stops."""

    stops: tuple[RgbColor, ...]
    name: str = ""
    scale_hint: str = "log"

    def __post_init__(self):
        if len(self.stops) < 2:
            raise ValueError("a colormap table needs at least 2 stops")

    def stops_array(self) -> np.ndarray:
        return np.array([[c.r, c.g, c.b] for c in self.stops], dtype=float)


class LookupResult(NamedTuple):
    rgb: RgbColor
    out_of_range: bool


class HueSolution(NamedTuple):
    hues: tuple[float, ...]
    converged: bool
    sweeps: int
    objective: float


# --- hue geometry ------------------------------------------------------------
#
# For a fixed ramp template we tabulate, over a dense grid of CIELAB hue
# angles: the admissible chroma, and the HSV hue that the ramp midpoint
# projects to. The projection is a monotone circle map, so it can be inverted
# by interpolation to place a band at any requested HSV hue anchor.

_GRID_STEP = 0.25
_geometry_cache: dict[tuple[float, float, float], "_HueGeometry"] = {}


def _hsv_hue_array(rgb: np.ndarray) -> np.ndarray:
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    mx = np.max(rgb, axis=-1)
    mn = np.min(rgb, axis=-1)
    d = mx - mn
    safe = np.where(d > 0.0, d, 1.0)
    h_r = (60.0 * ((g - b) / safe)) % 360.0
    h_g = 60.0 * ((b - r) / safe + 2.0)
    h_b = 60.0 * ((r - g) / safe + 4.0)
    h = np.where(mx == r, h_r, np.where(mx == g, h_g, h_b))
    return np.where(d > 0.0, h, 0.0)


class _HueGeometry:
    def __init__(self, template: RampTemplate):
        self.template = template
        deg = np.arange(0.0, 360.0 + _GRID_STEP, _GRID_STEP)
        deg[-1] = 360.0
        self._deg = deg
        rad = np.radians(deg)
        self._unit = np.stack([np.cos(rad), np.sin(rad)], axis=-1)
        self._chroma = self._solve_chroma()
        self._proj = self._project_midpoint_hues()

    def _solve_chroma(self) -> np.ndarray:
        t = self.template
        l_values = (t.l_lo, 0.5 * (t.l_lo + t.l_hi), t.l_hi)
        lo = np.zeros(len(self._deg))
        hi = np.full(len(self._deg), 160.0)
        for _ in range(48):
            mid = 0.5 * (lo + hi)
            ok = np.ones(len(self._deg), dtype=bool)
            for L in l_values:
                lab = np.concatenate(
                    [np.full((len(self._deg), 1), L), mid[:, None] * self._unit], axis=1
                )
                _, clamped = lab_to_srgb_array(lab)
                ok &= ~clamped
            lo = np.where(ok, mid, lo)
            hi = np.where(ok, hi, mid)
        return np.minimum(lo, t.chroma_cap)

    def _project_midpoint_hues(self) -> np.ndarray:
        t = self.template
        L_mid = 0.5 * (t.l_lo + t.l_hi)
        lab = np.concatenate(
            [np.full((len(self._deg), 1), L_mid), self._chroma[:, None] * self._unit],
            axis=1,
        )
        rgb, _ = lab_to_srgb_array(lab)
        raw = _hsv_hue_array(rgb)
        # Unwrap across the single 360 -> 0 jump, then flatten sub-degree
        # jitter so the table is monotone for interpolation.
        un = raw.copy()
        jumps = np.cumsum(np.concatenate([[0.0], np.where(np.diff(raw) < -180.0, 360.0, 0.0)]))
        un = un + jumps
        un = np.maximum.accumulate(un)
        un[-1] = un[0] + 360.0
        return un

    def anchor_to_lab_hue(self, anchors) -> np.ndarray:
        """HSV hue anchor(s) -> CIELAB hue angle whose midpoint projects there."""
        anchors = np.atleast_1d(np.asarray(anchors, dtype=float))
        p0 = self._proj[0]
        target = p0 + ((anchors - p0) % 360.0)
        return np.interp(target, self._proj, self._deg) % 360.0

    def chroma_at(self, lab_hues) -> np.ndarray:
        lab_hues = np.atleast_1d(np.asarray(lab_hues, dtype=float)) % 360.0
        return np.interp(lab_hues, self._deg, self._chroma)

    def ab_vectors(self, anchors) -> np.ndarray:
        """(n, 2) array of (a*, b*) chroma vectors for HSV hue anchors."""
        lab_h = self.anchor_to_lab_hue(anchors)
        c = self.chroma_at(lab_h)
        rad = np.radians(lab_h)
        return np.stack([c * np.cos(rad), c * np.sin(rad)], axis=-1)


def _geometry(template: RampTemplate) -> _HueGeometry:
    key = (round(template.l_lo, 6), round(template.l_hi, 6), round(template.chroma_cap, 6))
    geom = _geometry_cache.get(key)
    if geom is None:
        geom = _HueGeometry(template)
        _geometry_cache[key] = geom
    return geom


# --- hue equalization --------------------------------------------------------

def default_hues(n_bands: int) -> tuple[float, ...]:
    """Evenly spaced starting anchors over the first 330 degrees of hue."""
    return tuple(330.0 * i / n_bands for i in range(n_bands))


def _boundary_deltas(ab: np.ndarray, delta_l: float) -> np.ndarray:
    d_ab = np.linalg.norm(np.diff(ab, axis=0), axis=1)
    return np.hypot(delta_l, d_ab)


def boundary_deltas_for_hues(hues, template: RampTemplate | None = None) -> np.ndarray:
    """Adjacent-band boundary DeltaE76 values for a hue-anchor sequence."""
    template = template or RampTemplate()
    geom = _geometry(template)
    ab = geom.ab_vectors(np.asarray(hues, dtype=float))
    return _boundary_deltas(ab, template.l_hi - template.l_lo)


def _golden_section(f, lo: float, hi: float, tol: float = 1e-3) -> tuple[float, float]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = c if fc < fd else d
    return x, min(fc, fd)


def equalize_hues(initial_hues, template: RampTemplate | None = None, *,
                  max_sweeps: int = 200, rel_tol: float = 1e-6) -> HueSolution:
    """Spread interior hue anchors so boundary DeltaE76 values even out.

    Minimizes the variance of the adjacent-band boundary color differences by
    coordinate descent over the interior hues (endpoints stay fixed), each
    coordinate refined with a coarse scan plus golden-section line search.
    Deterministic for fixed inputs; the cyclic order of the anchors and a
    minimum pairwise separation of 360/(2n) degrees are preserved. When the
    objective is still improving by more than `rel_tol` per sweep after
    `max_sweeps`, the best hues so far are returned with converged=False.
    """
    template = template or RampTemplate()
    hues = [float(h) for h in initial_hues]
    n = len(hues)
    if not 2 <= n <= MAX_BANDS:
        raise ValueError(f"need between 2 and {MAX_BANDS} hues, got {n}")
    for h0, h1 in zip(hues, hues[1:]):
        if h1 <= h0:
            raise ValueError("initial hues must be strictly increasing")
    if hues[-1] - hues[0] >= 360.0:
        raise ValueError("initial hues must lie within one 360-degree wrap")

    geom = _geometry(template)
    delta_l = template.l_hi - template.l_lo
    min_sep = 360.0 / (2.0 * n)

    def objective(hs) -> float:
        return float(np.var(_boundary_deltas(geom.ab_vectors(hs), delta_l)))

    obj = objective(hues)
    if n == 2:
        return HueSolution(tuple(hues), True, 0, obj)

    sweeps = 0
    converged = False
    for sweeps in range(1, max_sweeps + 1):
        prev_obj = obj
        for k in range(1, n - 1):
            lo = hues[k - 1] + min_sep
            hi = hues[k + 1] - min_sep
            if hi <= lo:
                continue

            def f(x, k=k):
                trial = hues.copy()
                trial[k] = x
                return objective(trial)

            xs = np.linspace(lo, hi, 33)
            vals = [f(x) for x in xs]
            i = int(np.argmin(vals))
            a = xs[max(i - 1, 0)]
            b = xs[min(i + 1, len(xs) - 1)]
            x_best, v_best = _golden_section(f, float(a), float(b))
            if v_best < obj:
                hues[k] = x_best
                obj = v_best
        improvement = prev_obj - obj
        if improvement <= rel_tol * max(prev_obj, 1e-30):
            converged = True
            break
    return HueSolution(tuple(hues), converged, sweeps, obj)


# --- construction ------------------------------------------------------------

def _validate_span(e_min: int, e_max: int) -> int:
    if int(e_min) != e_min or int(e_max) != e_max:
        raise InvalidSpan(f"exponents must be integers, got {e_min!r}, {e_max!r}")
    if e_min >= e_max:
        raise InvalidSpan(f"need e_min < e_max, got [{e_min}, {e_max}]")
    n = e_max - e_min + 1
    if n > MAX_BANDS:
        raise TooManyBands(
            f"span [{e_min}, {e_max}] needs {n} bands; at most {MAX_BANDS} stay nameable"
        )
    return n


def build_omc(e_min: int, e_max: int, config: BuildConfig | None = None) -> OmcColormap:
    """Colormap with one hue band per exponent, all ramps in one direction."""
    config = config or BuildConfig()
    n = _validate_span(e_min, e_max)
    if config.within_band_mode not in (scinum.MANTISSA_LINEAR, scinum.LOG_FRACTION):
        raise ValueError(f"unknown within_band_mode {config.within_band_mode!r}")

    hues = config.initial_hues or default_hues(n)
    if len(hues) != n:
        raise ValueError(f"expected {n} initial hues, got {len(hues)}")
    if config.equalize:
        hues = equalize_hues(hues, config.template).hues

    geom = _geometry(config.template)
    ab = geom.ab_vectors(np.asarray(hues, dtype=float))
    t = config.template
    bands = []
    for i, e in enumerate(range(int(e_min), int(e_max) + 1)):
        lo = LabColor(t.l_lo, float(ab[i, 0]), float(ab[i, 1]))
        hi = LabColor(t.l_hi, float(ab[i, 0]), float(ab[i, 1]))
        if config.ascending:
            bands.append(ExponentBand(e, float(hues[i]) % 360.0, lo, hi, ASCENDING))
        else:
            bands.append(ExponentBand(e, float(hues[i]) % 360.0, hi, lo, DESCENDING))
    return OmcColormap(
        e_min=int(e_min),
        e_max=int(e_max),
        bands=tuple(bands),
        variant=VARIANT_OMC,
        within_band_mode=config.within_band_mode,
        name=f"omc[{int(e_min)},{int(e_max)}]",
    )


def build_omc_sl(e_min: int, e_max: int, config: BuildConfig | None = None) -> OmcColormap:
    """OMC with every second band's lightness ramp reversed.

    Alternating ramp direction puts matching lightness on both sides of every
    band boundary, which shrinks the boundary color distances.
    """
    base = build_omc(e_min, e_max, config)
    bands = []
    for i, band in enumerate(base.bands):
        if i % 2 == 1:
            flipped = ExponentBand(
                band.exponent,
                band.hue_anchor,
                band.ramp_end,
                band.ramp_start,
                DESCENDING if band.direction == ASCENDING else ASCENDING,
            )
            bands.append(flipped)
        else:
            bands.append(band)
    return replace(
        base,
        bands=tuple(bands),
        variant=VARIANT_OMC_SL,
        name=f"omc_sl[{base.e_min},{base.e_max}]",
    )


# --- lookup and sampling -----------------------------------------------------

def _band_fraction_array(values: np.ndarray, mode: str) -> tuple[np.ndarray, np.ndarray]:
    from .errors import NonPositiveValue, NotFinite

    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise NotFinite("values must be finite")
    if np.any(values <= 0.0):
        raise NonPositiveValue("values must be positive")
    logs = np.log10(values)
    k = np.round(logs)
    p = np.power(10.0, k)
    snap = np.abs(values - p) <= 4.0 * np.spacing(np.maximum(values, p))
    e = np.floor(logs)
    m = values / np.power(10.0, e)
    too_hi = m >= 10.0
    e = np.where(too_hi, e + 1, e)
    too_lo = ~too_hi & (m < 1.0)
    e = np.where(too_lo, e - 1, e)
    m = values / np.power(10.0, e)
    e = np.where(snap, k, e)
    m = np.where(snap, 1.0, m)
    if mode == scinum.MANTISSA_LINEAR:
        t = (m - 1.0) / 9.0
    else:
        t = np.log10(m)
    return e.astype(int), np.clip(t, 0.0, 1.0)


def lookup_array(cmap: OmcColormap, values) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized lookup: (n, 3) float sRGB colors plus out-of-range flags."""
    e, t = _band_fraction_array(np.atleast_1d(np.asarray(values, dtype=float)),
                                cmap.within_band_mode)
    below = e < cmap.e_min
    above = e > cmap.e_max
    out = below | above
    idx = np.clip(e - cmap.e_min, 0, cmap.n_bands - 1)
    t = np.where(below, 0.0, np.where(above, 1.0, t))
    starts = np.array(
        [[b.ramp_start.L, b.ramp_start.a, b.ramp_start.b] for b in cmap.bands]
    )
    ends = np.array([[b.ramp_end.L, b.ramp_end.a, b.ramp_end.b] for b in cmap.bands])
    lab = starts[idx] + t[:, None] * (ends[idx] - starts[idx])
    rgb, _ = lab_to_srgb_array(lab)
    return rgb, out


def lookup(cmap: OmcColormap, v: float) -> LookupResult:
    """Color of one value; out-of-domain values clamp to the nearest end."""
    rgb, out = lookup_array(cmap, np.array([float(v)]))
    return LookupResult(RgbColor(*(float(c) for c in rgb[0])), bool(out[0]))


def table_lookup(table: ColormapTable, v: float, vmin: float, vmax: float) -> LookupResult:
    """Nearest-stop lookup of a flat table over a log-scaled [vmin, vmax]."""
    t, out = scinum.log_normalize(v, vmin, vmax)
    idx = int(round(t * (len(table.stops) - 1)))
    return LookupResult(table.stops[idx], out)


def sample_table(cmap: OmcColormap, n: int) -> ColormapTable:
    """n stops at log-equidistant values over the colormap's domain.

    Stops are quantized to the 8-bit grid so a table survives a round trip
    through the native text format bit-exactly.
    """
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    exps = np.linspace(cmap.e_min, cmap.e_max + 1, n)
    rgb, _ = lookup_array(cmap, np.power(10.0, exps))
    rgb = np.round(rgb * 255.0) / 255.0
    stops = tuple(RgbColor(*(float(c) for c in row)) for row in rgb)
    return ColormapTable(stops=stops, name=cmap.name or cmap.variant, scale_hint="log")


# --- reference colormaps -----------------------------------------------------

def viridis_table() -> ColormapTable:
    """The canonical 256-stop viridis table."""
    stops = tuple(RgbColor(r, g, b) for r, g, b in VIRIDIS_STOPS)
    return ColormapTable(stops=stops, name="viridis", scale_hint="log")


def rainbow_table(n: int = 256) -> ColormapTable:
    """HSV hue sweep from blue (240 degrees) to red (0) at full saturation."""
    if n < 2:
        raise ValueError(f"need at least 2 stops, got {n}")
    from .color import HsvColor, hsv_to_srgb

    hues = np.linspace(240.0, 0.0, n)
    stops = tuple(hsv_to_srgb(HsvColor(float(h), 1.0, 1.0)) for h in hues)
    return ColormapTable(stops=stops, name="rainbow", scale_hint="log")


# --- import / export ---------------------------------------------------------

def export_table(table: ColormapTable, path, format: str = _NATIVE_FORMAT) -> None:
    """Write a table as native "R,G,B" lines or as a structured JSON file."""
    if format == _NATIVE_FORMAT:
        lines = ["{},{},{}".format(*c.to_8bit()) for c in table.stops]
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    elif format == _STRUCTURED_FORMAT:
        doc = {
            "name": table.name,
            "variant": "table",
            "e_min": None,
            "e_max": None,
            "within_band_mode": None,
            "scale_hint": table.scale_hint,
            "stops": [list(c.to_8bit()) for c in table.stops],
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    else:
        raise UnsupportedFormat(f"unknown export format {format!r}")


def export_colormap(cmap: OmcColormap, path, n_stops: int = 256) -> None:
    """Write an OMC colormap as a structured JSON file, including band data."""
    table = sample_table(cmap, n_stops)
    doc = {
        "name": cmap.name,
        "variant": cmap.variant,
        "e_min": cmap.e_min,
        "e_max": cmap.e_max,
        "within_band_mode": cmap.within_band_mode,
        "scale_hint": "log",
        "stops": [list(c.to_8bit()) for c in table.stops],
        "bands": [
            {
                "exponent": b.exponent,
                "hue_anchor": b.hue_anchor,
                "ramp_start": [b.ramp_start.L, b.ramp_start.a, b.ramp_start.b],
                "ramp_end": [b.ramp_end.L, b.ramp_end.a, b.ramp_end.b],
                "direction": b.direction,
            }
            for b in cmap.bands
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def _parse_native(path) -> ColormapTable:
    stops = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise ParseError(f"{path}:{lineno}: expected 'R,G,B', got {line!r}")
            try:
                r, g, b = (int(p.strip()) for p in parts)
            except ValueError:
                raise ParseError(f"{path}:{lineno}: non-integer channel in {line!r}") from None
            if not all(0 <= c <= 255 for c in (r, g, b)):
                raise ParseError(f"{path}:{lineno}: channel outside 0..255 in {line!r}")
            stops.append(RgbColor.from_8bit(r, g, b))
    if len(stops) < 2:
        raise ParseError(f"{path}: a colormap table needs at least 2 stops, found {len(stops)}")
    import os

    return ColormapTable(stops=tuple(stops), name=os.path.splitext(os.path.basename(str(path)))[0])


def _parse_structured(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}: {exc.msg}") from None
    stops_raw = doc.get("stops")
    if not isinstance(stops_raw, list) or len(stops_raw) < 2:
        raise ParseError(f"{path}: 'stops' must list at least 2 colors")
    stops = tuple(RgbColor.from_8bit(*map(int, s)) for s in stops_raw)
    if doc.get("bands"):
        bands = tuple(
            ExponentBand(
                exponent=int(b["exponent"]),
                hue_anchor=float(b["hue_anchor"]),
                ramp_start=LabColor(*(float(x) for x in b["ramp_start"])),
                ramp_end=LabColor(*(float(x) for x in b["ramp_end"])),
                direction=str(b["direction"]),
            )
            for b in doc["bands"]
        )
        return OmcColormap(
            e_min=int(doc["e_min"]),
            e_max=int(doc["e_max"]),
            bands=bands,
            variant=str(doc.get("variant", VARIANT_OMC)),
            within_band_mode=str(doc.get("within_band_mode", scinum.MANTISSA_LINEAR)),
            name=str(doc.get("name", "")),
        )
    return ColormapTable(
        stops=stops,
        name=str(doc.get("name", "")),
        scale_hint=str(doc.get("scale_hint", "log")),
    )


def import_table(path) -> ColormapTable:
    """Read a colormap table; JSON files use the structured format, anything
    else is parsed as native "R,G,B" byte lines."""
    loaded = load_colormap(path)
    if isinstance(loaded, OmcColormap):
        return sample_table(loaded, 256)
    return loaded


def load_colormap(path):
    """Load either an OmcColormap (structured file with bands) or a table."""
    if str(path).lower().endswith(".json") or _looks_like_json(path):
        return _parse_structured(path)
    return _parse_native(path)


def _looks_like_json(path) -> bool:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            head = fh.read(64).lstrip()
    except OSError:
        return False
    return head.startswith("{")

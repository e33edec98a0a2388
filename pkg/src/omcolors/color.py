"""Color types, sRGB/HSV/CIELAB conversions, and color-difference metrics.

sRGB uses the standard IEC 61966-2-1 transfer function with the linear toe
segment; CIELAB uses the D65 white point derived from the sRGB matrix itself
(2 degree observer), so white round-trips to L*=100 exactly. Array variants
(`srgb_to_lab_array` etc.) operate on float arrays of shape (..., 3) and are
the code path the scalar functions wrap, which keeps scalar and vectorized
results bit-identical.

All functions are pure; unrestricted concurrent use is safe.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

# sRGB D65 linear-light -> XYZ matrix (IEC 61966-2-1 primaries, full precision).
_M_RGB2XYZ = np.array([
    [0.41239079926595934, 0.357584339383878, 0.1804807884018343],
    [0.21263900587151027, 0.715168678767756, 0.07219231536073371],
    [0.01933081871559182, 0.11919477979462598, 0.9505321522496607],
])
_M_XYZ2RGB = np.linalg.inv(_M_RGB2XYZ)
# Reference white from the matrix row sums keeps (1,1,1) -> L*=100 exact.
_WHITE = _M_RGB2XYZ @ np.ones(3)

_EPS = 216.0 / 24389.0
_KAPPA = 24389.0 / 27.0


@dataclass(frozen=True)
class RgbColor:
    """Gamma-encoded sRGB color with channels in [0, 1]."""

    r: float
    g: float
    b: float

    def to_8bit(self) -> tuple[int, int, int]:
        return (
            int(round(self.r * 255.0)),
            int(round(self.g * 255.0)),
            int(round(self.b * 255.0)),
        )

    def to_hex(self) -> str:
        return "#{:02x}{:02x}{:02x}".format(*self.to_8bit())

    @classmethod
    def from_8bit(cls, r: int, g: int, b: int) -> "RgbColor":
        return cls(r / 255.0, g / 255.0, b / 255.0)


@dataclass(frozen=True)
class HsvColor:
    """Hexcone HSV color: hue in degrees [0, 360), s and v in [0, 1]."""

    h: float
    s: float
    v: float

    def __post_init__(self):
        object.__setattr__(self, "h", self.h % 360.0)
        object.__setattr__(self, "s", min(max(self.s, 0.0), 1.0))
        object.__setattr__(self, "v", min(max(self.v, 0.0), 1.0))


@dataclass(frozen=True)
class LabColor:
    """CIELAB color under D65/2deg; L in [0, 100] for in-gamut sRGB."""

    L: float
    a: float
    b: float


class GamutMapped(NamedTuple):
    """Result of a Lab -> sRGB conversion; `clamped` flags out-of-gamut input."""

    rgb: RgbColor
    clamped: bool


# --- array code paths -------------------------------------------------------

def srgb_decode_array(rgb):
    """Gamma-encoded sRGB -> linear light."""
    rgb = np.asarray(rgb, dtype=float)
    return np.where(rgb <= 0.04045, rgb / 12.92, ((rgb + 0.055) / 1.055) ** 2.4)


def srgb_encode_array(lin):
    """Linear light -> gamma-encoded sRGB."""
    lin = np.asarray(lin, dtype=float)
    return np.where(
        lin <= 0.0031308,
        12.92 * lin,
        1.055 * np.power(np.clip(lin, 0.0, None), 1.0 / 2.4) - 0.055,
    )


def srgb_to_lab_array(rgb):
    """sRGB (..., 3) in [0, 1] -> CIELAB (..., 3)."""
    rgb = np.asarray(rgb, dtype=float)
    xyz = srgb_decode_array(rgb) @ _M_RGB2XYZ.T
    xyz = xyz / _WHITE
    f = np.where(xyz > _EPS, np.cbrt(xyz), (_KAPPA * xyz + 16.0) / 116.0)
    lab = np.empty_like(f)
    lab[..., 0] = 116.0 * f[..., 1] - 16.0
    lab[..., 1] = 500.0 * (f[..., 0] - f[..., 1])
    lab[..., 2] = 200.0 * (f[..., 1] - f[..., 2])
    return lab


def lab_to_srgb_array(lab):
    """CIELAB (..., 3) -> (srgb, clamped): sRGB clipped to [0, 1] plus a flag array."""
    lab = np.asarray(lab, dtype=float)
    L, a, b = lab[..., 0], lab[..., 1], lab[..., 2]
    fy = (L + 16.0) / 116.0
    fx = fy + a / 500.0
    fz = fy - b / 200.0

    def _finv(f):
        return np.where(f ** 3 > _EPS, f ** 3, (116.0 * f - 16.0) / _KAPPA)

    xyz = np.stack(
        [_finv(fx), np.where(L > _KAPPA * _EPS, fy ** 3, L / _KAPPA), _finv(fz)],
        axis=-1,
    )
    lin = (xyz * _WHITE) @ _M_XYZ2RGB.T
    rgb = srgb_encode_array(lin)
    clamped = np.any((rgb < -1e-9) | (rgb > 1.0 + 1e-9), axis=-1)
    return np.clip(rgb, 0.0, 1.0), clamped


def lab_in_gamut(lab, tol: float = 1e-9) -> bool:
    """True when a single Lab color maps inside the sRGB cube."""
    lab = np.asarray(lab, dtype=float)
    L, a, b = lab[0], lab[1], lab[2]
    fy = (L + 16.0) / 116.0
    fx = fy + a / 500.0
    fz = fy - b / 200.0

    def _finv(f):
        return f ** 3 if f ** 3 > _EPS else (116.0 * f - 16.0) / _KAPPA

    y = fy ** 3 if L > _KAPPA * _EPS else L / _KAPPA
    xyz = np.array([_finv(fx), y, _finv(fz)]) * _WHITE
    lin = _M_XYZ2RGB @ xyz
    return bool(np.all(lin >= -tol) and np.all(lin <= 1.0 + tol))


# --- scalar API --------------------------------------------------------------

def srgb_to_lab(c: RgbColor) -> LabColor:
    lab = srgb_to_lab_array(np.array([c.r, c.g, c.b]))
    return LabColor(float(lab[0]), float(lab[1]), float(lab[2]))


def lab_to_srgb(c: LabColor) -> GamutMapped:
    """Lab -> sRGB. Out-of-gamut input is clamped per channel and flagged."""
    rgb, clamped = lab_to_srgb_array(np.array([c.L, c.a, c.b]))
    return GamutMapped(RgbColor(float(rgb[0]), float(rgb[1]), float(rgb[2])), bool(clamped))


def srgb_to_hsv(c: RgbColor) -> HsvColor:
    """Hexcone HSV; the hue of a pure gray is 0 by convention."""
    mx = max(c.r, c.g, c.b)
    mn = min(c.r, c.g, c.b)
    d = mx - mn
    if d == 0.0:
        h = 0.0
    elif mx == c.r:
        h = 60.0 * (((c.g - c.b) / d) % 6.0)
    elif mx == c.g:
        h = 60.0 * ((c.b - c.r) / d + 2.0)
    else:
        h = 60.0 * ((c.r - c.g) / d + 4.0)
    s = 0.0 if mx == 0.0 else d / mx
    return HsvColor(h, s, mx)


def hsv_to_srgb(c: HsvColor) -> RgbColor:
    h = (c.h % 360.0) / 60.0
    i = int(math.floor(h)) % 6
    f = h - math.floor(h)
    p = c.v * (1.0 - c.s)
    q = c.v * (1.0 - c.s * f)
    t = c.v * (1.0 - c.s * (1.0 - f))
    r, g, b = (
        (c.v, t, p), (q, c.v, p), (p, c.v, t),
        (p, q, c.v), (t, p, c.v), (c.v, p, q),
    )[i]
    return RgbColor(r, g, b)


def delta_e_76(c1: LabColor, c2: LabColor) -> float:
    """CIE76 color difference: Euclidean distance in CIELAB."""
    return math.sqrt((c1.L - c2.L) ** 2 + (c1.a - c2.a) ** 2 + (c1.b - c2.b) ** 2)


def delta_e_2000(c1: LabColor, c2: LabColor, kL: float = 1.0, kC: float = 1.0,
                 kH: float = 1.0) -> float:
    """CIEDE2000 color difference with parametric factors kL, kC, kH."""
    L1, a1, b1 = c1.L, c1.a, c1.b
    L2, a2, b2 = c2.L, c2.a, c2.b

    C1 = math.hypot(a1, b1)
    C2 = math.hypot(a2, b2)
    C_mean = 0.5 * (C1 + C2)
    G = 0.5 * (1.0 - math.sqrt(C_mean ** 7 / (C_mean ** 7 + 25.0 ** 7)))
    a1p = (1.0 + G) * a1
    a2p = (1.0 + G) * a2
    C1p = math.hypot(a1p, b1)
    C2p = math.hypot(a2p, b2)

    h1p = math.degrees(math.atan2(b1, a1p)) % 360.0 if (a1p != 0.0 or b1 != 0.0) else 0.0
    h2p = math.degrees(math.atan2(b2, a2p)) % 360.0 if (a2p != 0.0 or b2 != 0.0) else 0.0

    dLp = L2 - L1
    dCp = C2p - C1p

    if C1p * C2p == 0.0:
        dhp = 0.0
    else:
        dhp = h2p - h1p
        if dhp > 180.0:
            dhp -= 360.0
        elif dhp < -180.0:
            dhp += 360.0
    dHp = 2.0 * math.sqrt(C1p * C2p) * math.sin(math.radians(dhp) / 2.0)

    Lp_mean = 0.5 * (L1 + L2)
    Cp_mean = 0.5 * (C1p + C2p)
    if C1p * C2p == 0.0:
        hp_mean = h1p + h2p
    else:
        hp_mean = 0.5 * (h1p + h2p)
        if abs(h1p - h2p) > 180.0:
            hp_mean += 180.0 if hp_mean < 180.0 else -180.0

    T = (1.0
         - 0.17 * math.cos(math.radians(hp_mean - 30.0))
         + 0.24 * math.cos(math.radians(2.0 * hp_mean))
         + 0.32 * math.cos(math.radians(3.0 * hp_mean + 6.0))
         - 0.20 * math.cos(math.radians(4.0 * hp_mean - 63.0)))
    d_theta = 30.0 * math.exp(-(((hp_mean - 275.0) / 25.0) ** 2))
    R_C = 2.0 * math.sqrt(Cp_mean ** 7 / (Cp_mean ** 7 + 25.0 ** 7))
    S_L = 1.0 + 0.015 * (Lp_mean - 50.0) ** 2 / math.sqrt(20.0 + (Lp_mean - 50.0) ** 2)
    S_C = 1.0 + 0.045 * Cp_mean
    S_H = 1.0 + 0.015 * Cp_mean * T
    R_T = -math.sin(math.radians(2.0 * d_theta)) * R_C

    tL = dLp / (kL * S_L)
    tC = dCp / (kC * S_C)
    tH = dHp / (kH * S_H)
    return math.sqrt(tL * tL + tC * tC + tH * tH + R_T * tC * tH)

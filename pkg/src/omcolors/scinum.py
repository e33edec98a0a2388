"""Scientific-notation decomposition of positive values.

A positive value v is written as v = m * 10**e with mantissa m in [1, 10)
and integer exponent e. The mantissa interval is half-open, so exact powers
of ten belong to the upper decade: decompose(0.01) == (1.0, -2). Values
within 4 ulp of an exact power of ten are snapped to that power first, which
keeps text-parsed inputs like 1e-4 from decomposing into 9.999...e-5.

All functions are pure and thread-safe.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import InvalidDomain, NonPositiveValue, NotFinite

MANTISSA_LINEAR = "mantissa-linear"
LOG_FRACTION = "log-fraction"

_MODES = (MANTISSA_LINEAR, LOG_FRACTION)


@dataclass(frozen=True)
class ScientificValue:
    """A positive value decomposed as mantissa * 10**exponent."""

    mantissa: float
    exponent: int

    def __post_init__(self):
        if not (1.0 <= self.mantissa < 10.0):
            raise ValueError(f"mantissa {self.mantissa!r} outside [1, 10)")


class NormalizedValue(NamedTuple):
    """A [0, 1] position plus a flag set when the input had to be clamped."""

    t: float
    out_of_range: bool


def _check_positive_finite(v: float) -> float:
    v = float(v)
    if math.isnan(v) or math.isinf(v):
        raise NotFinite(f"value {v!r} is not finite")
    if v <= 0.0:
        raise NonPositiveValue(f"value {v!r} is not positive")
    return v


def decompose(v: float) -> ScientificValue:
    """Split a positive finite value into (mantissa, exponent)."""
    v = _check_positive_finite(v)
    # Snap values within 4 ulp of an exact power of ten onto that power.
    k = round(math.log10(v))
    p = 10.0 ** k
    if abs(v - p) <= 4.0 * math.ulp(max(v, p)):
        return ScientificValue(1.0, int(k))
    e = math.floor(math.log10(v))
    m = v / 10.0 ** e
    # Guard against log10 round-off at decade edges.
    if m >= 10.0:
        e += 1
        m = v / 10.0 ** e
    elif m < 1.0:
        e -= 1
        m = v / 10.0 ** e
    return ScientificValue(m, int(e))


def compose(sv: ScientificValue) -> float:
    """Inverse of decompose: mantissa * 10**exponent."""
    return sv.mantissa * 10.0 ** sv.exponent


def band_fraction(v: float, mode: str = MANTISSA_LINEAR) -> tuple[int, float]:
    """Exponent band of v plus the position of v inside that band.

    The position t is 0 at the decade's lower edge in both modes and
    approaches 1 at the upper edge: (m - 1) / 9 for mantissa-linear,
    log10(m) for log-fraction.
    """
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {_MODES}")
    sv = decompose(v)
    if mode == MANTISSA_LINEAR:
        t = (sv.mantissa - 1.0) / 9.0
    else:
        t = math.log10(sv.mantissa)
    return sv.exponent, min(max(t, 0.0), 1.0)


def log_normalize(v: float, vmin: float, vmax: float) -> NormalizedValue:
    """Position of v on the log scale over [vmin, vmax], clamped to [0, 1]."""
    if vmin <= 0.0 or not vmin < vmax:
        raise InvalidDomain(f"need 0 < vmin < vmax, got vmin={vmin!r} vmax={vmax!r}")
    v = _check_positive_finite(v)
    if v <= vmin:
        return NormalizedValue(0.0, v < vmin)
    if v >= vmax:
        return NormalizedValue(1.0, v > vmax)
    t = (math.log10(v) - math.log10(vmin)) / (math.log10(vmax) - math.log10(vmin))
    return NormalizedValue(min(max(t, 0.0), 1.0), False)

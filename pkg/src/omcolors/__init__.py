"""Order-of-magnitude colormaps for data spanning many powers of ten.

Each integer exponent in the data gets its own hue; the mantissa runs along
a perceptually linear lightness ramp within that hue. The package builds the
plain and smoothed-lightness variants of the scheme, measures colormap
quality with CIELAB color-difference diagnostics, and renders log-scaled
time-height scatterplots deterministically.
"""

from .color import (
    GamutMapped,
    HsvColor,
    LabColor,
    RgbColor,
    delta_e_2000,
    delta_e_76,
    hsv_to_srgb,
    lab_to_srgb,
    srgb_to_hsv,
    srgb_to_lab,
)
from .colormap import (
    BuildConfig,
    ColormapTable,
    ExponentBand,
    HueSolution,
    LookupResult,
    OmcColormap,
    RampTemplate,
    build_omc,
    build_omc_sl,
    default_hues,
    equalize_hues,
    export_colormap,
    export_table,
    import_table,
    load_colormap,
    lookup,
    lookup_array,
    rainbow_table,
    sample_table,
    table_lookup,
    viridis_table,
)
from .ingest import TimeHeightSeries, observed_exponent_span, parse_csv
from .metrics import (
    BandMonotonicity,
    ProfileSeries,
    RangeAnswer,
    boundary_ratio,
    boundary_report,
    delta_e_profile,
    hsv_profile,
    monotonicity_check,
    range_size,
)
from .render import (
    RenderSpec,
    read_image,
    render_colorbar,
    render_scatter,
    write_image,
)
from .scinum import (
    LOG_FRACTION,
    MANTISSA_LINEAR,
    NormalizedValue,
    ScientificValue,
    band_fraction,
    compose,
    decompose,
    log_normalize,
)

__version__ = "0.1.0"

__all__ = [
    "BandMonotonicity",
    "BuildConfig",
    "ColormapTable",
    "ExponentBand",
    "GamutMapped",
    "HsvColor",
    "HueSolution",
    "LabColor",
    "LookupResult",
    "LOG_FRACTION",
    "MANTISSA_LINEAR",
    "NormalizedValue",
    "OmcColormap",
    "ProfileSeries",
    "RampTemplate",
    "RangeAnswer",
    "RenderSpec",
    "RgbColor",
    "ScientificValue",
    "TimeHeightSeries",
    "band_fraction",
    "boundary_ratio",
    "boundary_report",
    "build_omc",
    "build_omc_sl",
    "compose",
    "decompose",
    "default_hues",
    "delta_e_2000",
    "delta_e_76",
    "delta_e_profile",
    "equalize_hues",
    "export_colormap",
    "export_table",
    "hsv_profile",
    "hsv_to_srgb",
    "import_table",
    "lab_to_srgb",
    "load_colormap",
    "log_normalize",
    "lookup",
    "lookup_array",
    "monotonicity_check",
    "observed_exponent_span",
    "parse_csv",
    "rainbow_table",
    "range_size",
    "read_image",
    "render_colorbar",
    "render_scatter",
    "sample_table",
    "srgb_to_hsv",
    "srgb_to_lab",
    "table_lookup",
    "viridis_table",
    "write_image",
]

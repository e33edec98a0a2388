import json

import numpy as np
import pytest

from omcolors import (
    BuildConfig,
    ColormapTable,
    RgbColor,
    build_omc,
    build_omc_sl,
    boundary_ratio,
    boundary_report,
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
    srgb_to_hsv,
    viridis_table,
)
from omcolors.colormap import OmcColormap
from omcolors.errors import InvalidSpan, NonPositiveValue, ParseError, TooManyBands
from omcolors.metrics import band_sample_values


def circular_diff(h1: float, h2: float) -> float:
    d = abs(h1 - h2) % 360.0
    return min(d, 360.0 - d)


# --- construction -------------------------------------------------------------

def test_paper_span_has_seven_bands(omc_m8_m2):
    assert omc_m8_m2.n_bands == 7
    assert [b.exponent for b in omc_m8_m2.bands] == list(range(-8, -1))
    assert all(b.direction == "ascending" for b in omc_m8_m2.bands)


def test_minimal_span():
    cmap = build_omc(0, 1)
    assert cmap.n_bands == 2
    assert cmap.bands[0].hue_anchor != cmap.bands[1].hue_anchor
    assert all(b.direction == "ascending" for b in cmap.bands)


def test_boundary_ratio_paper_span(omc_m8_m2):
    assert boundary_ratio(boundary_report(omc_m8_m2)) <= 1.25


def test_span_validation():
    with pytest.raises(InvalidSpan):
        build_omc(0, 0)
    with pytest.raises(InvalidSpan):
        build_omc(3, -1)
    with pytest.raises(TooManyBands):
        build_omc(-8, 5)


def test_band_lightness_contrast(omc_m8_m2):
    for b in omc_m8_m2.bands:
        assert abs(b.ramp_end.L - b.ramp_start.L) >= 20.0


def test_anchor_separation_invariant():
    for n in (2, 5, 7, 12):
        cmap = build_omc(0, n - 1)
        anchors = [b.hue_anchor for b in cmap.bands]
        required = 360.0 / (2 * n)
        for i, a in enumerate(anchors):
            for b in anchors[i + 1:]:
                assert circular_diff(a, b) >= required - 1e-9


def test_band_hue_near_anchor_and_low_drift(omc_m8_m2):
    for band in omc_m8_m2.bands:
        rgb, _ = lookup_array(omc_m8_m2, band_sample_values(band.exponent, 64))
        hues = [srgb_to_hsv(RgbColor(*row)).h for row in rgb]
        drift = max(circular_diff(h1, h2) for h1 in hues for h2 in hues)
        assert drift < 15.0
        assert circular_diff(hues[0], band.hue_anchor) < 15.0
        assert circular_diff(hues[-1], band.hue_anchor) < 15.0


def test_strictly_monotone_lightness_per_band(omc_m8_m2):
    from omcolors.color import srgb_to_lab_array

    for band in omc_m8_m2.bands:
        rgb, _ = lookup_array(omc_m8_m2, band_sample_values(band.exponent, 64))
        L = srgb_to_lab_array(rgb)[:, 0]
        steps = np.diff(L)
        assert np.all(steps > 0.0)
        assert np.min(steps) >= 0.05


# --- smoothed lightness variant ------------------------------------------------

def test_sl_directions_alternate(omc_sl_m8_m2):
    dirs = [b.direction for b in omc_sl_m8_m2.bands]
    assert dirs == ["ascending", "descending"] * 3 + ["ascending"]


def test_sl_two_band_directions():
    sl = build_omc_sl(0, 1)
    assert [b.direction for b in sl.bands] == ["ascending", "descending"]


def test_sl_hues_match_omc(omc_m8_m2, omc_sl_m8_m2):
    assert [b.hue_anchor for b in omc_sl_m8_m2.bands] == \
        [b.hue_anchor for b in omc_m8_m2.bands]


def test_sl_boundaries_strictly_smaller(omc_m8_m2, omc_sl_m8_m2):
    omc_vals = [v for _, v in boundary_report(omc_m8_m2)]
    sl_vals = [v for _, v in boundary_report(omc_sl_m8_m2)]
    assert all(s < o for s, o in zip(sl_vals, omc_vals))


def test_sl_boundaries_strictly_smaller_all_spans():
    for n in (2, 4, 9, 12):
        omc_vals = [v for _, v in boundary_report(build_omc(0, n - 1))]
        sl_vals = [v for _, v in boundary_report(build_omc_sl(0, n - 1))]
        assert all(s < o for s, o in zip(sl_vals, omc_vals))


# --- hue equalization ----------------------------------------------------------

def test_equalize_two_bands_is_identity():
    sol = equalize_hues((0.0, 165.0))
    assert sol.hues == (0.0, 165.0)
    assert sol.converged
    report = boundary_report(build_omc(0, 1))
    assert boundary_ratio(report) == 1.0


def test_equalize_never_worsens_objective():
    from omcolors.colormap import boundary_deltas_for_hues

    seeds = default_hues(7)
    pre = float(np.var(boundary_deltas_for_hues(seeds)))
    sol = equalize_hues(seeds)
    assert sol.objective <= pre


def test_equalize_deterministic():
    assert equalize_hues(default_hues(7)) == equalize_hues(default_hues(7))


def test_equalize_preserves_order():
    sol = equalize_hues(default_hues(9))
    assert all(h0 < h1 for h0, h1 in zip(sol.hues, sol.hues[1:]))


def test_equalize_matches_brute_force_three_bands():
    seeds = (0.0, 100.0, 220.0)
    sol = equalize_hues(seeds)

    min_sep = 360.0 / 6.0
    grid = np.arange(seeds[0] + min_sep, seeds[2] - min_sep + 1e-9, 0.5)
    best_x, best_obj = None, np.inf
    for x in grid:
        cfg = BuildConfig(equalize=False, initial_hues=(seeds[0], float(x), seeds[2]))
        vals = [v for _, v in boundary_report(build_omc(0, 2, cfg))]
        obj = float(np.var(vals))
        if obj < best_obj:
            best_x, best_obj = float(x), obj
    assert abs(sol.hues[1] - best_x) <= 1.0


def test_equalize_validates_input():
    with pytest.raises(ValueError):
        equalize_hues((10.0,))
    with pytest.raises(ValueError):
        equalize_hues((10.0, 5.0, 20.0))
    with pytest.raises(ValueError):
        equalize_hues((0.0, 200.0, 400.0))


# --- lookup --------------------------------------------------------------------

def test_lookup_lower_edge_is_first_stop(omc_m8_m2):
    res = lookup(omc_m8_m2, 1e-8)
    first = omc_m8_m2.bands[0]
    from omcolors import lab_to_srgb

    expected = lab_to_srgb(first.ramp_start).rgb
    assert res.rgb == expected
    assert not res.out_of_range


def test_lookup_band_midpoint(omc_m8_m2):
    res = lookup(omc_m8_m2, 5.5e-4)
    band = next(b for b in omc_m8_m2.bands if b.exponent == -4)
    from omcolors import LabColor, lab_to_srgb

    mid = LabColor(
        0.5 * (band.ramp_start.L + band.ramp_end.L),
        0.5 * (band.ramp_start.a + band.ramp_end.a),
        0.5 * (band.ramp_start.b + band.ramp_end.b),
    )
    expected = lab_to_srgb(mid).rgb
    assert res.rgb.to_8bit() == expected.to_8bit()


def test_lookup_clamps_above_domain(omc_m8_m2):
    res = lookup(omc_m8_m2, 10.0 ** (omc_m8_m2.e_max + 2))
    assert res.out_of_range
    last = omc_m8_m2.bands[-1]
    from omcolors import lab_to_srgb

    assert res.rgb == lab_to_srgb(last.ramp_end).rgb


def test_lookup_clamps_below_domain(omc_m8_m2):
    res = lookup(omc_m8_m2, 1e-12)
    assert res.out_of_range
    assert res.rgb == lookup(omc_m8_m2, 1e-8).rgb


def test_lookup_rejects_nonpositive(omc_m8_m2):
    with pytest.raises(NonPositiveValue):
        lookup(omc_m8_m2, -3.0)


def test_lookup_arc_position_weakly_monotone(omc_m8_m2):
    # Values in increasing order map to non-decreasing (band, t) pairs.
    rng = np.random.default_rng(7)
    values = np.sort(10.0 ** rng.uniform(-8, -1, 500))
    from omcolors.colormap import _band_fraction_array

    e, t = _band_fraction_array(values, omc_m8_m2.within_band_mode)
    keys = list(zip(e.tolist(), t.tolist()))
    assert keys == sorted(keys)


# --- sampling ------------------------------------------------------------------

def test_sample_table_endpoints(omc_m8_m2):
    table = sample_table(omc_m8_m2, 2)
    first = lookup(omc_m8_m2, 1e-8).rgb
    last_band = omc_m8_m2.bands[-1]
    from omcolors import lab_to_srgb

    last = lab_to_srgb(last_band.ramp_end).rgb
    assert table.stops[0].to_8bit() == first.to_8bit()
    assert table.stops[-1].to_8bit() == last.to_8bit()


def test_sample_table_per_band_lightness_monotone(omc_m8_m2):
    from omcolors.color import srgb_to_lab_array

    n = 64 * omc_m8_m2.n_bands
    table = sample_table(omc_m8_m2, n)
    exps = np.linspace(omc_m8_m2.e_min, omc_m8_m2.e_max + 1, n)
    L = srgb_to_lab_array(table.stops_array())[:, 0]
    for b in range(omc_m8_m2.n_bands):
        sel = (exps >= omc_m8_m2.e_min + b) & (exps < omc_m8_m2.e_min + b + 1)
        # 8-bit quantization of stops allows ties, never real dips
        assert np.all(np.diff(L[sel]) > -0.25)
        assert L[sel][-1] - L[sel][0] > 40.0


def test_sample_table_has_seven_hue_clusters(omc_m8_m2):
    table = sample_table(omc_m8_m2, 448)
    hues = sorted(srgb_to_hsv(c).h for c in table.stops)
    gaps = [h2 - h1 for h1, h2 in zip(hues, hues[1:])]
    gaps.append(hues[0] + 360.0 - hues[-1])
    clusters = sum(1 for g in gaps if g > 15.0)
    assert clusters == 7


def test_sample_table_validation(omc_m8_m2):
    with pytest.raises(ValueError):
        sample_table(omc_m8_m2, 1)


# --- reference tables ----------------------------------------------------------

def test_viridis_endpoints():
    table = viridis_table()
    assert len(table.stops) == 256
    assert table.stops[0].to_8bit() == (68, 1, 84)
    assert table.stops[-1].to_8bit() == (253, 231, 37)


def test_viridis_spot_checks_against_matplotlib():
    import matplotlib

    table = viridis_table()
    reference = matplotlib.colormaps["viridis"].colors
    for idx in range(0, 256, 16):
        assert table.stops[idx].r == pytest.approx(reference[idx][0], abs=1e-12)
        assert table.stops[idx].g == pytest.approx(reference[idx][1], abs=1e-12)
        assert table.stops[idx].b == pytest.approx(reference[idx][2], abs=1e-12)


def test_rainbow_endpoints():
    table = rainbow_table(2)
    assert [s.to_8bit() for s in table.stops] == [(0, 0, 255), (255, 0, 0)]


def test_rainbow_hue_sweep():
    table = rainbow_table(64)
    hues = [srgb_to_hsv(c).h for c in table.stops]
    assert hues[0] == pytest.approx(240.0)
    assert hues[-1] == pytest.approx(0.0)
    assert all(h1 > h2 for h1, h2 in zip(hues, hues[1:]))
    assert all(srgb_to_hsv(c).s == 1.0 and srgb_to_hsv(c).v == 1.0 for c in table.stops)


# --- import / export -----------------------------------------------------------

def test_native_round_trip(tmp_path, omc_m8_m2):
    table = sample_table(omc_m8_m2, 448)
    path = tmp_path / "omc.txt"
    export_table(table, path, format="native")
    back = import_table(path)
    assert [s.to_8bit() for s in back.stops] == [s.to_8bit() for s in table.stops]
    assert all(
        a.r == pytest.approx(b.r, abs=1e-12) for a, b in zip(back.stops, table.stops)
    )


def test_structured_round_trip(tmp_path, omc_m8_m2):
    path = tmp_path / "omc.cmap"
    export_colormap(omc_m8_m2, path)
    back = load_colormap(path)
    assert isinstance(back, OmcColormap)
    assert back.e_min == omc_m8_m2.e_min and back.e_max == omc_m8_m2.e_max
    assert back.variant == omc_m8_m2.variant
    assert back.within_band_mode == omc_m8_m2.within_band_mode
    for b1, b2 in zip(back.bands, omc_m8_m2.bands):
        assert b1.exponent == b2.exponent
        assert b1.direction == b2.direction
        assert b1.hue_anchor == pytest.approx(b2.hue_anchor, abs=1e-12)
        assert b1.ramp_start.L == pytest.approx(b2.ramp_start.L, abs=1e-12)


def test_structured_file_fields(tmp_path, omc_m8_m2):
    path = tmp_path / "omc.cmap"
    export_colormap(omc_m8_m2, path)
    doc = json.loads(path.read_text())
    for key in ("name", "variant", "e_min", "e_max", "within_band_mode", "stops"):
        assert key in doc
    assert doc["variant"] == "omc"
    assert len(doc["stops"]) == 256


def test_import_single_stop_fails(tmp_path):
    path = tmp_path / "one.txt"
    path.write_text("12,34,56\n")
    with pytest.raises(ParseError):
        import_table(path)


def test_import_byte_csv(tmp_path):
    path = tmp_path / "table.txt"
    lines = [f"{i},{255 - i},{128}" for i in range(256)]
    path.write_text("\n".join(lines) + "\n")
    table = import_table(path)
    assert len(table.stops) == 256
    assert table.stops[0].to_8bit() == (0, 255, 128)
    assert table.stops[-1].to_8bit() == (255, 0, 128)


def test_import_malformed_line_reports_position(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1,2,3\nnot-a-color\n")
    with pytest.raises(ParseError, match="bad.txt:2"):
        import_table(path)


def test_import_out_of_range_channel(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1,2,3\n300,0,0\n")
    with pytest.raises(ParseError, match="bad.txt:2"):
        import_table(path)


def test_table_requires_two_stops():
    with pytest.raises(ValueError):
        ColormapTable(stops=(RgbColor(0, 0, 0),))

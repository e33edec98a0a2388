"""Command-line interface.

Subcommands: build, render, profile, lookup, rangesize, export, import.
Options resolve with precedence flags > config file > defaults; the config
file is YAML with one section per subcommand. Exit codes are stable and
documented: 0 success, 2 usage error, and one distinct code per library
error class (see `omcolors.errors` or the README table).

Runs are reproducible: identical inputs and flags produce identical stdout
and identical output files.
"""
from __future__ import annotations

import argparse
import sys

import yaml

from . import colormap as cm
from . import metrics, report
from .errors import InvalidDomain, OmcError, UnsupportedFormat
from .ingest import observed_exponent_span, parse_csv
from .render import RenderSpec, render_scatter, write_image
from .scinum import MANTISSA_LINEAR, decompose

_BUILTIN_NAMES = ("omc", "omc_sl", "viridis", "rainbow")


class _UsageError(Exception):
    """Bad or conflicting command-line options; maps to exit code 2."""

_DEFAULTS = {
    "build": {
        "emin": None, "emax": None, "variant": "omc", "mode": MANTISSA_LINEAR,
        "equalize": True, "out": None,
    },
    "render": {
        "data": None, "cmap": None, "emin": None, "emax": None, "out": None,
        "width": 1291, "height": 500, "point_size": 3, "colorbar": "none",
        "delimiter": ",", "vmin": None, "vmax": None,
    },
    "profile": {
        "cmap": None, "kind": "deltae", "metric": "de76", "samples": 448,
        "out": None, "figure": None, "no_figure": False,
        "emin": None, "emax": None,
    },
    "lookup": {"cmap": None, "value": None, "emin": None, "emax": None,
               "vmin": None, "vmax": None},
    "rangesize": {"low": None, "high": None},
    "export": {"cmap": None, "out": None, "format": "native", "samples": 256,
               "emin": None, "emax": None},
    "import": {"table": None, "out": None, "name": None},
}


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="omcolors",
        description="Order-of-magnitude colormaps: build, inspect, export, render.",
    )
    p.add_argument("--config", help="YAML config file with per-subcommand sections")
    p.add_argument("--dry-run", action="store_true",
                   help="print the effective options and exit")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build an OMC colormap and write it to a file")
    b.add_argument("--emin", type=int, help="smallest exponent band")
    b.add_argument("--emax", type=int, help="largest exponent band")
    b.add_argument("--variant", choices=("omc", "omc_sl"))
    b.add_argument("--mode", choices=("mantissa-linear", "log-fraction"),
                   help="within-band position mode")
    b.add_argument("--no-equalize", dest="equalize", action="store_false", default=None,
                   help="keep the evenly spaced starting hues")
    b.add_argument("-o", "--out", help="output colormap file (structured JSON)")

    r = sub.add_parser("render", help="render a time-height scatterplot PNG")
    r.add_argument("data", nargs="?", help="input CSV with time,height,value columns")
    r.add_argument("--cmap", help="colormap file or builtin name "
                                  f"({', '.join(_BUILTIN_NAMES)})")
    r.add_argument("--emin", type=int, help="override inferred e_min for builtin omc maps")
    r.add_argument("--emax", type=int, help="override inferred e_max for builtin omc maps")
    r.add_argument("--width", type=int)
    r.add_argument("--height", type=int)
    r.add_argument("--point-size", dest="point_size", type=int)
    r.add_argument("--colorbar", choices=("none", "right", "below"))
    r.add_argument("--delimiter")
    r.add_argument("--vmin", type=float, help="table colormap domain minimum")
    r.add_argument("--vmax", type=float, help="table colormap domain maximum")
    r.add_argument("-o", "--out", help="output PNG path")

    f = sub.add_parser("profile", help="write a diagnostic CSV (and figure) for a colormap")
    f.add_argument("cmap", nargs="?", help="colormap file or builtin name")
    f.add_argument("--kind", choices=("deltae", "hsv", "boundary", "monotonicity"))
    f.add_argument("--metric", choices=("de76", "de2000"))
    f.add_argument("--samples", type=int, help="table sample count for deltae/hsv profiles")
    f.add_argument("--emin", type=int)
    f.add_argument("--emax", type=int)
    f.add_argument("--figure", help="figure PNG path (default: alongside the CSV)")
    f.add_argument("--no-figure", dest="no_figure", action="store_true", default=None)
    f.add_argument("-o", "--out", help="output CSV path")

    l = sub.add_parser("lookup", help="print the color of one value")
    l.add_argument("cmap", nargs="?", help="colormap file or builtin name")
    l.add_argument("value", nargs="?", type=float)
    l.add_argument("--emin", type=int)
    l.add_argument("--emax", type=int)
    l.add_argument("--vmin", type=float, help="table colormap domain minimum")
    l.add_argument("--vmax", type=float, help="table colormap domain maximum")

    g = sub.add_parser("rangesize", help="decade-normalized size of a value range")
    g.add_argument("low", nargs="?", type=float)
    g.add_argument("high", nargs="?", type=float)

    e = sub.add_parser("export", help="export a colormap as a stop table")
    e.add_argument("cmap", nargs="?", help="colormap file or builtin name")
    e.add_argument("--format", choices=("native", "structured"))
    e.add_argument("--samples", type=int)
    e.add_argument("--emin", type=int)
    e.add_argument("--emax", type=int)
    e.add_argument("-o", "--out")

    i = sub.add_parser("import", help="import a foreign stop table, write structured JSON")
    i.add_argument("table", nargs="?", help="table file (R,G,B lines or structured JSON)")
    i.add_argument("--name")
    i.add_argument("-o", "--out")
    return p


def _effective_options(args: argparse.Namespace) -> dict:
    """Merge defaults, the config file section, and explicit flags."""
    cmd = args.command
    opts = dict(_DEFAULTS[cmd])
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            doc = yaml.safe_load(fh) or {}
        section = doc.get(cmd) or {}
        if not isinstance(section, dict):
            raise UnsupportedFormat(f"config section {cmd!r} must be a mapping")
        for key, value in section.items():
            key = key.replace("-", "_")
            if key not in opts:
                raise UnsupportedFormat(f"unknown config option {key!r} for {cmd!r}")
            opts[key] = value
    for key in opts:
        value = getattr(args, key, None)
        if value is not None:
            opts[key] = value
    return opts


def _require(opts: dict, *keys: str) -> None:
    for key in keys:
        if opts.get(key) is None:
            raise _UsageError(f"missing required option '{key}'")


def _load_cmap(opts: dict, *, need_bands: bool = False):
    """Resolve a --cmap argument into an OmcColormap or ColormapTable."""
    name = opts["cmap"]
    if name in ("omc", "omc_sl"):
        _require(opts, "emin", "emax")
        build = cm.build_omc_sl if name == "omc_sl" else cm.build_omc
        return build(int(opts["emin"]), int(opts["emax"]))
    if opts.get("emin") is not None or opts.get("emax") is not None:
        raise _UsageError("--emin/--emax only apply to builtin omc/omc_sl colormaps")
    if name == "viridis":
        return cm.viridis_table()
    if name == "rainbow":
        return cm.rainbow_table()
    loaded = cm.load_colormap(name)
    if need_bands and not isinstance(loaded, cm.OmcColormap):
        raise UnsupportedFormat(
            f"{name}: this profile kind needs a colormap with band data"
        )
    return loaded


def _print_boundary_summary(cmap: cm.OmcColormap) -> None:
    rep = metrics.boundary_report(cmap)
    values = [v for _, v in rep]
    ratio = metrics.boundary_ratio(rep)
    directions = [b.direction for b in cmap.bands]
    print(f"bands: {cmap.n_bands} (exponents {cmap.e_min}..{cmap.e_max})")
    print(f"directions: {' '.join(d[:3] for d in directions)}")
    print(f"boundary de76: min {min(values):.3f} max {max(values):.3f} ratio {ratio:.4f}")


def _cmd_build(opts: dict) -> int:
    _require(opts, "emin", "emax", "out")
    config = cm.BuildConfig(
        within_band_mode=opts["mode"],
        equalize=bool(opts["equalize"]),
    )
    build = cm.build_omc_sl if opts["variant"] == "omc_sl" else cm.build_omc
    cmap = build(int(opts["emin"]), int(opts["emax"]), config)
    cm.export_colormap(cmap, opts["out"])
    print(f"wrote {opts['out']}")
    _print_boundary_summary(cmap)
    return 0


def _cmd_render(opts: dict) -> int:
    _require(opts, "data", "cmap", "out")
    series = parse_csv(opts["data"], delimiter=opts["delimiter"])
    if opts["cmap"] in ("omc", "omc_sl") and opts["emin"] is None and opts["emax"] is None:
        opts = dict(opts)
        opts["emin"], opts["emax"] = observed_exponent_span(series)
    cmap = _load_cmap(opts)
    spec = RenderSpec(
        width_px=int(opts["width"]),
        height_px=int(opts["height"]),
        point_size_px=int(opts["point_size"]),
        colorbar=opts["colorbar"],
    )
    img = render_scatter(series, cmap, spec, vmin=opts["vmin"], vmax=opts["vmax"])
    write_image(img, opts["out"])
    counts = series.mask_counts()
    detail = ", ".join(f"{k}: {v}" for k, v in sorted(counts.items()))
    print(f"wrote {opts['out']} ({img.shape[1]}x{img.shape[0]} px)")
    print(f"rows: {len(series)} total, {series.n_masked} masked"
          + (f" ({detail})" if detail else ""))
    return 0


def _profile_csv(cmap, opts: dict):
    kind = opts["kind"]
    if kind in ("deltae", "hsv"):
        table = cm.sample_table(cmap, int(opts["samples"])) \
            if isinstance(cmap, cm.OmcColormap) else cmap
        if kind == "deltae":
            return metrics.delta_e_profile(table, opts["metric"]), None
        return metrics.hsv_profile(table), None
    if kind == "boundary":
        rep = metrics.boundary_report(cmap, opts["metric"])
        return rep, metrics.boundary_ratio(rep)
    rep = metrics.monotonicity_check(cmap)
    return rep, None


def _cmd_profile(opts: dict) -> int:
    _require(opts, "cmap", "out")
    need_bands = opts["kind"] in ("boundary", "monotonicity")
    cmap = _load_cmap(opts, need_bands=need_bands)
    if need_bands and not isinstance(cmap, cm.OmcColormap):
        raise UnsupportedFormat(f"profile kind {opts['kind']!r} needs band data")
    kind = opts["kind"]
    out = opts["out"]

    if kind == "deltae":
        profile, _ = _profile_csv(cmap, opts)
        profile.write_csv(out)
        values = profile.values
        print(f"wrote {out}")
        print(f"adjacent {opts['metric']}: min {min(values):.4f} max {max(values):.4f}")
    elif kind == "hsv":
        (h, s, v), _ = _profile_csv(cmap, opts)
        with open(out, "w", encoding="utf-8") as fh:
            fh.write("position,h,s,v\n")
            for p, hh, ss, vv in zip(h.positions, h.values, s.values, v.values):
                fh.write(f"{p!r},{hh!r},{ss!r},{vv!r}\n")
        print(f"wrote {out}")
        print(f"hue span: {min(h.values):.2f}..{max(h.values):.2f} deg")
    elif kind == "boundary":
        rep, ratio = _profile_csv(cmap, opts)
        with open(out, "w", encoding="utf-8") as fh:
            fh.write("boundary,delta_e\n")
            for k, v in rep:
                fh.write(f"{k},{v!r}\n")
        values = [v for _, v in rep]
        print(f"wrote {out}")
        print(f"boundary {opts['metric']}: min {min(values):.4f} max {max(values):.4f} "
              f"ratio {ratio:.4f}")
    else:
        rep, _ = _profile_csv(cmap, opts)
        with open(out, "w", encoding="utf-8") as fh:
            fh.write("exponent,monotone,min_step,direction\n")
            for r in rep:
                fh.write(f"{r.exponent},{str(r.monotone).lower()},{r.min_step!r},{r.direction}\n")
        print(f"wrote {out}")
        print(f"monotone bands: {sum(r.monotone for r in rep)}/{len(rep)}")

    if not opts["no_figure"]:
        fig_path = opts["figure"] or _default_figure_path(out)
        _write_figure(cmap, kind, opts, fig_path)
        print(f"wrote {fig_path}")
    return 0


def _default_figure_path(csv_path: str) -> str:
    base = csv_path[:-4] if csv_path.lower().endswith(".csv") else csv_path
    return base + ".png"


def _write_figure(cmap, kind: str, opts: dict, fig_path) -> None:
    if kind == "deltae":
        report.deltae_figure(cmap, opts["metric"], fig_path)
    elif kind == "hsv":
        report.hsv_figure(cmap, fig_path)
    elif kind == "boundary":
        report.boundary_figure(cmap, opts["metric"], fig_path)
    else:
        report.monotonicity_figure(cmap, metrics.monotonicity_check(cmap), fig_path)


def _cmd_lookup(opts: dict) -> int:
    _require(opts, "cmap", "value")
    cmap = _load_cmap(opts)
    value = float(opts["value"])
    if isinstance(cmap, cm.OmcColormap):
        result = cm.lookup(cmap, value)
    else:
        if opts.get("vmin") is None or opts.get("vmax") is None:
            raise InvalidDomain("table lookup needs --vmin and --vmax")
        result = cm.table_lookup(cmap, value, float(opts["vmin"]), float(opts["vmax"]))
    r, g, b = result.rgb.to_8bit()
    suffix = "  (out of range, clamped)" if result.out_of_range else ""
    print(f"{r},{g},{b}  {result.rgb.to_hex()}{suffix}")
    return 0


def _cmd_rangesize(opts: dict) -> int:
    _require(opts, "low", "high")
    ans = metrics.RangeAnswer(decompose(float(opts["low"])), decompose(float(opts["high"])))
    print(f"{metrics.range_size(ans):.6f}")
    return 0


def _cmd_export(opts: dict) -> int:
    _require(opts, "cmap", "out")
    cmap = _load_cmap(opts)
    if isinstance(cmap, cm.OmcColormap):
        if opts["format"] == "structured":
            cm.export_colormap(cmap, opts["out"], n_stops=int(opts["samples"]))
        else:
            cm.export_table(cm.sample_table(cmap, int(opts["samples"])), opts["out"],
                            format=opts["format"])
    else:
        cm.export_table(cmap, opts["out"], format=opts["format"])
    print(f"wrote {opts['out']}")
    return 0


def _cmd_import(opts: dict) -> int:
    _require(opts, "table", "out")
    table = cm.import_table(opts["table"])
    if opts["name"]:
        table = cm.ColormapTable(stops=table.stops, name=opts["name"],
                                 scale_hint=table.scale_hint)
    cm.export_table(table, opts["out"], format="structured")
    print(f"imported {len(table.stops)} stops from {opts['table']}")
    print(f"wrote {opts['out']}")
    return 0


_HANDLERS = {
    "build": _cmd_build,
    "render": _cmd_render,
    "profile": _cmd_profile,
    "lookup": _cmd_lookup,
    "rangesize": _cmd_rangesize,
    "export": _cmd_export,
    "import": _cmd_import,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        opts = _effective_options(args)
        if args.dry_run:
            print(yaml.safe_dump({args.command: opts}, sort_keys=True).rstrip())
            return 0
        return _HANDLERS[args.command](opts)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OmcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 16


if __name__ == "__main__":
    sys.exit(main())

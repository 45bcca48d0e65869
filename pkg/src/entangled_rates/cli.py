"""Command-line front end.

Subcommands: ``rate``, ``scan``, ``figure``, ``verify``, ``s-profile``.
Exit status: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .io import HeatPanel, LinePanel, RunManifest, read_manifest, render_svg, write_csv, write_manifest
from .rates import AtomConfig, Geometry, rate
from .states import channel
from .sweep import Axis, SweepResult, SweepSpec, run_sweep, s_profile
from .verify import consistency_triangle

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2

FIGURES = ("fig2", "fig3", "fig4", "fig5")
FIG5_WIDTHS = (7.0, 15.0, 23.0)


class UsageError(Exception):
    pass


def _geometry(kind: str, L) -> Geometry:
    if kind == "cavity":
        if L is None:
            raise UsageError("cavity geometry needs --L")
        return Geometry.cavity(float(L))
    return Geometry(kind)


# --------------------------------------------------------------------------
# rate


def cmd_rate(args) -> int:
    ch = channel(args.initial, args.final, args.omega0)
    scale = 2 * np.pi / args.omega0 if args.units == "wavelength" else 1.0
    L = None if args.L is None else args.L * scale
    geom = _geometry(args.geometry, L)
    d1, d2 = args.d1 * scale, args.d2 * scale
    bd = rate(ch, AtomConfig(d1, d2), geom)
    record = {
        **bd.as_dict(),
        "channel": ch.label,
        "geometry": geom.kind.value,
        "d1": d1,
        "d2": d2,
        "L": L,
        "omega0": args.omega0,
    }
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        print(f"channel={ch} geometry={geom} d1={d1:.6g} d2={d2:.6g} L={L if L is None else f'{L:.6g}'} omega0={args.omega0:g}")
        for key in ("self1", "self2", "cross", "total"):
            print(f"{key}={record[key]:.6f}")
        if bd.resonant:
            print("resonant=true")
    return EXIT_OK


# --------------------------------------------------------------------------
# scan

_SCAN_DEFAULTS = {
    "geometry": "free",
    "channels": "sg,ag",
    "axis": None,
    "axis2": None,
    "omega0": 2.0,
    "units": "natural",
    "L": None,
    "d1": None,
    "d2": None,
    "include_boundary": False,
    "out": "scan.csv",
}


def _read_config(path) -> dict:
    parser = configparser.ConfigParser()
    parser.optionxform = str
    text = Path(path).read_text(encoding="utf-8")
    parser.read_string("[scan]\n" + text)
    return {k.replace("-", "_"): v for k, v in parser["scan"].items()}


def _resolve_scan_params(args) -> dict:
    if args.manifest:
        params = dict(read_manifest(args.manifest).params)
    else:
        params = dict(_SCAN_DEFAULTS)
        if args.config:
            params.update(_read_config(args.config))
    for key in _SCAN_DEFAULTS:
        value = getattr(args, key, None)
        if value is not None and value is not False:
            params[key] = value
    params["omega0"] = float(params["omega0"])
    for key in ("L", "d1", "d2"):
        if params.get(key) is not None:
            params[key] = float(params[key])
    params["include_boundary"] = str(params["include_boundary"]).lower() in ("1", "true", "yes")
    return params


def _parse_axis(text: str) -> Axis:
    try:
        name, start, stop, steps = text.split(":")
        return Axis(name, float(start), float(stop), int(steps))
    except ValueError as exc:
        raise UsageError(f"bad axis {text!r} (expected name:start:stop:steps): {exc}") from None


def spec_from_params(params: dict) -> SweepSpec:
    if not params.get("axis"):
        raise UsageError("scan needs an --axis name:start:stop:steps")
    channels = [channel(lab[0], lab[1], params["omega0"]) for lab in str(params["channels"]).split(",") if lab]
    fixed = {k: params[k] for k in ("d1", "d2") if params.get(k) is not None}
    L = params.get("L")
    if params["units"] == "wavelength" and L is not None:
        L = L * 2 * np.pi / params["omega0"]
    return SweepSpec(
        geometry=_geometry(params["geometry"], L),
        channels=tuple(channels),
        axis1=_parse_axis(params["axis"]),
        axis2=_parse_axis(params["axis2"]) if params.get("axis2") else None,
        omega0=params["omega0"],
        units=params["units"],
        fixed=fixed,
        include_boundary=params["include_boundary"],
    )


def cmd_scan(args) -> int:
    params = _resolve_scan_params(args)
    spec = spec_from_params(params)
    result = run_sweep(spec)
    out = Path(params["out"])
    write_csv(result, out)
    manifest = RunManifest("scan", params, outputs=[out.name])
    write_manifest(manifest, out.with_suffix(".manifest.json"))
    print(f"wrote {out} ({result.n_rows} rows)")
    return EXIT_OK


# --------------------------------------------------------------------------
# figures


def _stack(results: list[SweepResult], extra_axis: str, values) -> SweepResult:
    axes = (extra_axis,) + results[0].axes
    coords = {extra_axis: np.concatenate([np.full(r.n_rows, v) for r, v in zip(results, values)])}
    for a in results[0].axes:
        coords[a] = np.concatenate([r.coords[a] for r in results])
    columns = {c: np.concatenate([r.columns[c] for r in results]) for c in results[0].columns}
    return SweepResult(axes, coords, columns, {"parts": [r.metadata for r in results]})


def build_figure(name: str, steps: int | None = None, omega0: float = 2.0):
    """Return ``(result, svg_text)`` for one of the figure presets."""
    lam = 2 * np.pi / omega0
    sg, ag = channel("s", "g", omega0), channel("a", "g", omega0)
    if name == "fig2":
        spec = SweepSpec(Geometry.free(), (sg, ag), Axis("d", 0.0, 6.0, steps or 600), omega0=omega0, units="wavelength")
        res = run_sweep(spec)
        x = res.coords["d"] / lam
        panel = LinePanel(
            "Free space: decay from |s> (solid) and |a> (dashed)",
            "|d-| / lambda",
            "R / g^2",
            [(x, res.column(sg), "solid", "R_sg"), (x, res.column(ag), "dashed", "R_ag")],
        )
        return res, render_svg([panel], 1, 1, "fig2")
    if name == "fig3":
        n = steps or 60
        spec = SweepSpec(Geometry.mirror(), (sg, ag), Axis("d1", 0.0, 2.0, n), Axis("d2", 0.0, 2.0, n), omega0=omega0, units="wavelength")
        res = run_sweep(spec)
        x = res.coords["d1"].reshape(n, n)[:, 0] / lam
        panels = [
            HeatPanel(f"R_{ch.label} / g^2, one mirror", "d1 / lambda", "d2 / lambda", x, x, res.column(ch).reshape(n, n))
            for ch in (sg, ag)
        ]
        return res, render_svg(panels, 1, 2, "fig3")
    if name == "fig4":
        z_steps = steps or 401
        res = s_profile(-omega0, FIG5_WIDTHS, z_steps)
        panels = []
        for L in FIG5_WIDTHS:
            rows = res.coords["L"] == L
            panels.append(LinePanel(f"S(z), L = {L:g}", "z", "S", [(res.coords["z"][rows], res.columns["S"][rows], "solid", f"L={L:g}")]))
        return res, render_svg(panels, 3, 1, "fig4")
    if name == "fig5":
        n = steps or 60
        parts = []
        panels = []
        for L in FIG5_WIDTHS:
            spec = SweepSpec(Geometry.cavity(L), (sg, ag), Axis("d1", 0.0, L, n), Axis("d2", 0.0, L, n), omega0=omega0)
            r = run_sweep(spec)
            parts.append(r)
            x = r.coords["d1"].reshape(n, n)[:, 0]
            for ch in (sg, ag):
                panels.append(HeatPanel(f"R_{ch.label} / g^2, L = {L:g}", "d1", "d2", x, x, r.column(ch).reshape(n, n)))
        return _stack(parts, "L", FIG5_WIDTHS), render_svg(panels, 3, 2, "fig5")
    raise UsageError(f"unknown figure {name!r}; expected one of {', '.join(FIGURES)}")


def cmd_figure(args) -> int:
    if args.name not in FIGURES:
        raise UsageError(f"unknown figure {args.name!r}; expected one of {', '.join(FIGURES)}")
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    res, svg = build_figure(args.name, args.steps, args.omega0)
    csv_path = write_csv(res, outdir / f"{args.name}.csv")
    svg_path = outdir / f"{args.name}.svg"
    svg_path.write_text(svg, encoding="utf-8")
    params = {"name": args.name, "steps": args.steps, "omega0": args.omega0}
    write_manifest(RunManifest("figure", params, outputs=[csv_path.name, svg_path.name]), outdir / f"{args.name}.manifest.json")
    print(f"wrote {csv_path} and {svg_path}")
    return EXIT_OK


# --------------------------------------------------------------------------
# verify and s-profile


def cmd_verify(args) -> int:
    checks = consistency_triangle(
        samples=args.samples,
        seed=args.seed,
        tolerance=args.tolerance,
        series_tolerance=args.series_tolerance,
        quadrature_samples=args.quadrature_samples,
        force_resonance=args.force_resonance,
    )
    counts = {"pass": 0, "fail": 0, "flagged": 0}
    print(f"{'check':<24} {'status':<8} {'|diff|':>11} {'allowed':>11}  params")
    for c in checks:
        counts[c.status] += 1
        if c.status != "pass" or args.verbose:
            print(f"{c.name:<24} {c.status:<8} {c.diff:11.3e} {c.allowed:11.3e}  {c.params}")
    print(f"summary: {counts['pass']} pass, {counts['fail']} fail, {counts['flagged']} flagged (resonant)")
    return EXIT_VERIFY if counts["fail"] else EXIT_OK


def cmd_s_profile(args) -> int:
    dw = args.delta_omega if args.delta_omega is not None else -args.omega0
    if dw >= 0:
        raise UsageError("s-profile needs a decay gap (delta-omega < 0)")
    res = s_profile(dw, args.L, args.z_steps)
    out = write_csv(res, args.out)
    write_manifest(RunManifest("s-profile", {"delta_omega": dw, "L": args.L, "z_steps": args.z_steps}, outputs=[out.name]), out.with_suffix(".manifest.json"))
    print(f"wrote {out} ({res.n_rows} rows)")
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="entangled-rates", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rate", help="decay rate for one configuration")
    r.add_argument("--from", dest="initial", required=True, help="initial state: g, a, s or e")
    r.add_argument("--to", dest="final", required=True, help="final state: g, a, s or e")
    r.add_argument("--geometry", choices=("free", "mirror", "cavity"), default="free")
    r.add_argument("--d1", type=float, default=0.0)
    r.add_argument("--d2", type=float, default=0.0)
    r.add_argument("--L", type=float)
    r.add_argument("--omega0", type=float, default=2.0)
    r.add_argument("--units", choices=("natural", "wavelength"), default="natural")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_rate)

    s = sub.add_parser("scan", help="1D/2D parameter sweep to CSV")
    s.add_argument("--config", help="flat key = value file; keys mirror the flags")
    s.add_argument("--manifest", help="rerun from a manifest written by a previous scan")
    s.add_argument("--geometry", choices=("free", "mirror", "cavity"))
    s.add_argument("--channels", help="comma-separated labels such as sg,ag")
    s.add_argument("--axis", help="name:start:stop:steps, name in d, d1, d2, L")
    s.add_argument("--axis2")
    s.add_argument("--omega0", type=float)
    s.add_argument("--units", choices=("natural", "wavelength"))
    s.add_argument("--L", type=float)
    s.add_argument("--d1", type=float, help="fixed d1 when not swept")
    s.add_argument("--d2", type=float, help="fixed d2 when not swept")
    s.add_argument("--include-boundary", action="store_true", default=False)
    s.add_argument("--out")
    s.set_defaults(func=cmd_scan)

    f = sub.add_parser("figure", help="regenerate figure data and SVG")
    f.add_argument("name", help=", ".join(FIGURES))
    f.add_argument("--outdir", default=".")
    f.add_argument("--steps", type=int)
    f.add_argument("--omega0", type=float, default=2.0)
    f.set_defaults(func=cmd_figure)

    v = sub.add_parser("verify", help="closed forms against the oracles")
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--tolerance", type=float, default=1e-9, help="relative tolerance against the exact mode sums")
    v.add_argument("--series-tolerance", type=float, default=1e-6)
    v.add_argument("--quadrature-samples", type=int, default=2)
    v.add_argument("--force-resonance", action="store_true")
    v.add_argument("--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    sp = sub.add_parser("s-profile", help="tabulate the cavity lattice function S(z)")
    sp.add_argument("--delta-omega", type=float)
    sp.add_argument("--omega0", type=float, default=2.0)
    sp.add_argument("--L", type=float, nargs="+", default=list(FIG5_WIDTHS))
    sp.add_argument("--z-steps", type=int, default=401)
    sp.add_argument("--out", default="s_profile.csv")
    sp.set_defaults(func=cmd_s_profile)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface: wep4.

Subcommands
    eval       immersion point at one parameter value
    mesh       sample a polar grid, project, and export obj/ply/csv
    verify     run the seeded verification suites (exit 1 on any failure)
    report     fidelity audit of the printed reference displays (CSV)
    curvature  Gauss curvature over a polar grid to CSV
    info       closed-form coefficients of the member as JSON

Defaults can be preloaded from a JSON file via --config; explicit flags
win over config values.  The RNG seed defaults to 42 so identical
invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from .fixtures import fidelity_report
from .henneberg import (
    FamilyParams,
    family_curve,
    family_phi,
    family_triple,
    seed_phi,
)
from .geometry import immersion_point
from .mesh import AXES, PolarGrid, export, format_float, project, sample_grid
from .verify import run_verify, sample_annulus

__all__ = ["main", "parse_lambda"]

_LAMBDA_CHARS = re.compile(r"^[0-9eE+\-.i]+$")


class UsageError(ValueError):
    pass


def parse_lambda(text: str) -> complex:
    """Parse 'a', 'bi', or 'a+bi' (no whitespace, trailing i marks the
    imaginary part)."""
    if not text or text.strip() != text or not _LAMBDA_CHARS.match(text):
        raise UsageError(f"bad lambda syntax: {text!r}")
    try:
        value = complex(text.replace("i", "j"))
    except ValueError:
        raise UsageError(f"bad lambda syntax: {text!r}") from None
    return value


def _params_from(args) -> FamilyParams:
    try:
        return FamilyParams(args.m, args.n, parse_lambda(args.lam))
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _grid_from(args) -> PolarGrid:
    try:
        return PolarGrid(args.rmin, args.rmax, args.nr, args.ntheta,
                         theta_closed=not args.open_seam)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _poly_json(poly) -> dict:
    return {str(k): [c.real + 0.0, c.imag + 0.0] for k, c in sorted(poly.terms.items())}


def _add_member_flags(sub) -> None:
    sub.add_argument("--m", type=int, default=1, help="first odd order")
    sub.add_argument("--n", type=int, default=1, help="second odd order")
    sub.add_argument("--lambda", dest="lam", default="0",
                     help="complex weight, e.g. 0, 1, 1+1i, 0.5-2i")


def _add_grid_flags(sub) -> None:
    sub.add_argument("--rmin", type=float, default=0.5)
    sub.add_argument("--rmax", type=float, default=2.0)
    sub.add_argument("--nr", type=int, default=80)
    sub.add_argument("--ntheta", type=int, default=160)
    sub.add_argument("--open-seam", action="store_true",
                     help="duplicate the theta seam instead of wrapping faces")


def _build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="wep4",
        description="Closed-form Henneberg-type minimal surfaces in R4",
    )
    parser.add_argument("--config", help="JSON file with default flag values")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="immersion point at one parameter value")
    _add_member_flags(p_eval)
    p_eval.add_argument("--point", help="parameter point 'u,v'")

    p_mesh = sub.add_parser("mesh", help="sample, project, and export a mesh")
    _add_member_flags(p_mesh)
    _add_grid_flags(p_mesh)
    p_mesh.add_argument("--project", default="xyz",
                        help=f"three axes from '{AXES}' (obj/ply only)")
    p_mesh.add_argument("--format", dest="fmt", default="obj",
                        choices=["obj", "ply", "csv"])
    p_mesh.add_argument("--out", help="output path")

    p_verify = sub.add_parser("verify", help="run the verification suites")
    _add_member_flags(p_verify)
    p_verify.add_argument("--samples", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=42)

    p_report = sub.add_parser("report", help="fidelity audit of reference displays")
    _add_member_flags(p_report)
    p_report.add_argument("--samples", type=int, default=200)
    p_report.add_argument("--seed", type=int, default=42)
    p_report.add_argument("--out", help="write the CSV here instead of stdout")

    p_curv = sub.add_parser("curvature", help="Gauss curvature over a grid to CSV")
    _add_member_flags(p_curv)
    _add_grid_flags(p_curv)
    p_curv.add_argument("--out", help="output CSV path")

    p_info = sub.add_parser("info", help="closed-form coefficients as JSON")
    _add_member_flags(p_info)
    p_info.add_argument("--out", help="write the JSON here instead of stdout")

    commands = {"eval": p_eval, "mesh": p_mesh, "verify": p_verify,
                "report": p_report, "curvature": p_curv, "info": p_info}
    return parser, commands


def _apply_config(parser, commands, argv: list[str]) -> argparse.Namespace:
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config")
    known, _ = probe.parse_known_args(argv)
    if known.config:
        with open(known.config, "r", encoding="utf-8") as fh:
            defaults = json.load(fh)
        if not isinstance(defaults, dict):
            raise UsageError("--config must contain a JSON object")
        renames = {"lambda": "lam", "format": "fmt", "open-seam": "open_seam"}
        mapped = {renames.get(k, k): v for k, v in defaults.items()}
        # subparsers keep their own default tables, so feed every one of them
        for p in [parser, *commands.values()]:
            p.set_defaults(**mapped)
    return parser.parse_args(argv)


def _cmd_eval(args) -> int:
    params = _params_from(args)
    if not args.point:
        raise UsageError("--point is required")
    try:
        u_text, v_text = args.point.split(",")
        w = complex(float(u_text), float(v_text))
    except ValueError:
        raise UsageError(f"bad point {args.point!r}, expected 'u,v'") from None
    if w == 0:
        raise UsageError("the point 0,0 is the puncture")
    point = immersion_point(family_curve(params), w)
    print(" ".join(format_float(c) for c in point))
    return 0


def _cmd_mesh(args) -> int:
    params = _params_from(args)
    if not args.out:
        raise UsageError("--out is required")
    mesh4 = sample_grid(params, _grid_from(args))
    if args.fmt == "csv":
        export(mesh4, "csv", args.out)
    else:
        try:
            mesh3 = project(mesh4, args.project)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        export(mesh3, args.fmt, args.out)
    print(f"wrote {args.out} ({len(mesh4.vertices)} vertices, {len(mesh4.quads)} quads)")
    return 0


def _cmd_verify(args) -> int:
    params = _params_from(args)
    results = run_verify(params, args.samples, args.seed)
    for res in results:
        print(res.line())
    failed = [r for r in results if not r.skipped and not r.passed]
    print(f"verify: {len(results) - len(failed)}/{len(results)} suites passed")
    return 1 if failed else 0


def _cmd_report(args) -> int:
    params = _params_from(args)
    rng_points = sample_annulus(np.random.default_rng(args.seed), args.samples,
                                r_lo=0.5, r_hi=1.7)
    report = fidelity_report(params, [complex(w) for w in rng_points])
    text = report.to_csv()
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {args.out} ({len(report.rows)} rows)")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_curvature(args) -> int:
    params = _params_from(args)
    if not args.out:
        raise UsageError("--out is required")
    mesh4 = sample_grid(params, _grid_from(args))
    lines = ["u,v,E,K"]
    for v in mesh4.vertices:
        k = "" if v.curvature is None else format_float(v.curvature)
        lines.append(f"{format_float(v.u)},{format_float(v.v)},{format_float(v.energy)},{k}")
    with open(args.out, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")
    print(f"wrote {args.out} ({len(mesh4.vertices)} rows)")
    return 0


def _cmd_info(args) -> int:
    params = _params_from(args)
    triple = family_triple(params)
    phi = family_phi(params)
    curve = family_curve(params)
    payload = {
        "m": params.m,
        "n": params.n,
        "lambda": [params.lam.real, params.lam.imag],
        "data": {"f": _poly_json(triple.f), "g": _poly_json(triple.g), "h": _poly_json(triple.h)},
        "phi": [_poly_json(p) for p in phi.parts],
        "curve": [_poly_json(p) for p in curve.parts],
        "seed": _poly_json(seed_phi(params.m, params.n)),
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    return 0


_COMMANDS = {
    "eval": _cmd_eval,
    "mesh": _cmd_mesh,
    "verify": _cmd_verify,
    "report": _cmd_report,
    "curvature": _cmd_curvature,
    "info": _cmd_info,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, commands = _build_parser()
    try:
        args = _apply_config(parser, commands, argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"wep4: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0)
    except OSError as exc:
        print(f"wep4: i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

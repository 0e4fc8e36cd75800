"""Command line: fiber and torus exports, Apollonius figures, the hypercube
scene, winding-number root counts, and the verify suites.

Exit codes: 0 on success, 1 when a verify suite fails or a computation
cannot be completed, 2 on usage errors.  All byte output goes to stdout and
is deterministic for fixed arguments.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__, hopf
from .complexplane import Polynomial, count_roots_by_winding, outer_root_radius
from .inversion import apollonian_families
from .scene import (
    SceneDocument,
    dumps_canonical,
    export_json,
    export_obj,
    export_svg,
    fmt9,
    planar_from_generalized,
    sample_torus_mesh,
)
from .stereo import hypercube_scene
from .verify import format_table, run_suites


class UsageError(ValueError):
    pass


def _parse_floats(text: str, n: int = None) -> list[float]:
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated number list, got {text!r}") from exc
    if n is not None and len(values) != n:
        raise UsageError(f"expected {n} comma-separated numbers, got {text!r}")
    return values


def _emit(data: bytes) -> None:
    sys.stdout.buffer.write(data)
    sys.stdout.buffer.flush()


def _convention_annotations(variant: str) -> dict:
    return {
        "convention.variant": variant,
        "convention.chart": "stereographic-north-pole",
        "convention.orientation_sign": f"{hopf.FIBER_LINK_SIGN:+d}",
    }


def cmd_fiber(args) -> int:
    base = np.array(_parse_floats(args.base, 3))
    norm = float(np.linalg.norm(base))
    if norm <= 1e-9:
        raise UsageError("--base must be a nonzero vector")
    base /= norm
    convention = hopf.HopfConvention(hopf.Variant(args.variant))
    fc = hopf.fiber(base, args.samples, convention)
    curve = hopf.project_fiber(fc)
    annotations = _convention_annotations(args.variant)
    annotations["base"] = ",".join(fmt9(v) for v in base)
    scene = SceneDocument(curves=[curve], annotations=annotations)
    _emit(export_obj(scene) if args.format == "obj" else export_json(scene))
    return 0


def cmd_tori(args) -> int:
    latitudes = _parse_floats(args.latitudes)
    if not latitudes or any(not lat > 0 for lat in latitudes):
        raise UsageError("--latitudes must be positive numbers")
    if len(latitudes) > 16:
        raise UsageError("at most 16 latitudes")
    curves, meshes = [], []
    for rho in latitudes:
        torus, fiber_curves = hopf.latitudinal_torus(rho, args.fibers_per_torus)
        mesh = sample_torus_mesh(torus.big_radius, torus.small_radius)
        mesh.metadata.update({
            "kind": "latitude-torus",
            "rho": fmt9(rho),
            "big_radius": fmt9(torus.big_radius),
            "small_radius": fmt9(torus.small_radius),
            "fit_residual": fmt9(torus.residual),
        })
        meshes.append(mesh)
        for c in fiber_curves:
            c.metadata["rho"] = fmt9(rho)
        curves.extend(fiber_curves)
    annotations = _convention_annotations("riemann")
    annotations["latitudes"] = ",".join(fmt9(v) for v in latitudes)
    scene = SceneDocument(curves=curves, meshes=meshes, annotations=annotations)
    _emit(export_obj(scene) if args.format == "obj" else export_json(scene))
    return 0


def cmd_apollonius(args) -> int:
    p = complex(*_parse_floats(args.p, 2))
    p2 = complex(*_parse_floats(args.p2, 2))
    if abs(p - p2) <= 1e-12:
        raise UsageError("--p and --p2 must be distinct")
    elliptic, hyperbolic = apollonian_families(p, p2, args.count, args.count)
    planar = []
    for kind, family in (("elliptic", elliptic), ("hyperbolic", hyperbolic)):
        for i, circ in enumerate(family):
            planar.append(planar_from_generalized(
                circ, {"kind": f"apollonius-{kind}", "index": str(i)}))
    annotations = {
        "p": f"{fmt9(p.real)},{fmt9(p.imag)}",
        "p2": f"{fmt9(p2.real)},{fmt9(p2.imag)}",
    }
    scene = SceneDocument(planar=planar, annotations=annotations)
    _emit(export_svg(scene) if args.format == "svg" else export_json(scene))
    return 0


def cmd_hypercube(args) -> int:
    curves = hypercube_scene(args.samples_per_edge)
    scene = SceneDocument(curves=curves,
                          annotations={"kind": "hypercube-projection"})
    _emit(export_obj(scene) if args.format == "obj" else export_json(scene))
    return 0


def cmd_winding(args) -> int:
    coeffs = _parse_floats(args.poly)
    poly = Polynomial(tuple(complex(c) for c in coeffs))
    radius = args.radius
    if radius is not None and radius <= 0:
        raise UsageError("--radius must be positive")
    if radius is None:
        radius = outer_root_radius(poly)
    count = count_roots_by_winding(poly, radius, args.samples)
    payload = {
        "polynomial": [fmt9(c) for c in coeffs],
        "radius": float(fmt9(radius)),
        "samples": args.samples,
        "roots_inside": count,
    }
    _emit(dumps_canonical(payload))
    return 0


def cmd_verify(args) -> int:
    results = run_suites(args.suite, seed=args.seed)
    _emit(format_table(results).encode("ascii"))
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopfgeo",
        description="Hopf fibration geometry: fibers, tori, inversive "
                    "figures, and verification suites.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fiber", help="projected fiber over a base point")
    p.add_argument("--base", required=True, metavar="X,Y,Z")
    p.add_argument("--variant", default="riemann",
                   choices=[v.value for v in hopf.Variant])
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--format", default="json", choices=["json", "obj"])
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("tori", help="nested latitude tori with fiber threads")
    p.add_argument("--latitudes", required=True, metavar="R1,R2,...")
    p.add_argument("--fibers-per-torus", type=int, default=12)
    p.add_argument("--format", default="json", choices=["json", "obj"])
    p.set_defaults(func=cmd_tori)

    p = sub.add_parser("apollonius", help="elliptic/hyperbolic circle families")
    p.add_argument("--p", required=True, metavar="X,Y")
    p.add_argument("--p2", required=True, metavar="X,Y")
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--format", default="svg", choices=["svg", "json"])
    p.set_defaults(func=cmd_apollonius)

    p = sub.add_parser("hypercube", help="projected hypercube edge scene")
    p.add_argument("--samples-per-edge", type=int, default=24)
    p.add_argument("--format", default="json", choices=["json", "obj"])
    p.set_defaults(func=cmd_hypercube)

    p = sub.add_parser("winding", help="count polynomial roots by winding")
    p.add_argument("--poly", required=True, metavar="C0,C1,...",
                   help="real coefficients, constant term first")
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--samples", type=int, default=2048)
    p.set_defaults(func=cmd_winding)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", default="all",
                   choices=["all", "quaternion", "hopf", "stereo", "inversion"])
    p.add_argument("--seed", type=int, default=20260825)
    p.set_defaults(func=cmd_verify)
    return parser


_NUMBER_LIST_OPTS = {"--p", "--p2", "--base", "--latitudes", "--poly"}


def _glue_negative_values(argv: list) -> list:
    # argparse mistakes values like "-1,0" for option names; rewrite
    # "--p -1,0" as "--p=-1,0" so coordinate lists may start with a minus.
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if (tok in _NUMBER_LIST_OPTS and i + 1 < len(argv)
                and argv[i + 1][:1] == "-" and len(argv[i + 1]) > 1
                and (argv[i + 1][1].isdigit() or argv[i + 1][1] == ".")):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())

"""Self-check suites behind the command line's verify subcommand.

Each suite runs a fixed-seed batch of invariant checks and reports one row
per check.  Everything here is redundant with the test suite on purpose:
these are the runtime sanity gates a user can run without a test harness.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import hopf
from .fitting import fit_circle_3d, fit_generalized_circle, fit_torus_of_revolution
from .inversion import (
    GeneralizedCircle,
    Sphere,
    apollonian_families,
    circles_orthogonal,
    compose_inversions,
    invert_circle,
)
from .moebius import INFINITY, MoebiusMap, cross_ratio, is_infinity
from .quaternions import Quaternion, axis_angle, from_axis_angle, rotate_right, to_su2
from .stereo import CHART_S1, CHART_S2, CHART_S3, from_riemann, hypercube_scene


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str


def _result(suite, name, err, tol):
    return CheckResult(suite, name, bool(err < tol),
                       f"max err {err:.3g} (tol {tol:g})")


def _random_unit_quaternions(rng, n):
    qs = rng.standard_normal((n, 4))
    qs /= np.linalg.norm(qs, axis=1)[:, None]
    return [Quaternion(*row) for row in qs]


def suite_quaternion(rng) -> list[CheckResult]:
    out = []
    qs = _random_unit_quaternions(rng, 200)
    vs = rng.standard_normal((200, 3))

    err = 0.0
    for q1, q2, v in zip(qs, qs[::-1], vs):
        lhs = rotate_right(q2, rotate_right(q1, v))
        rhs = rotate_right(q1 * q2, v)
        err = max(err, float(np.max(np.abs(lhs - rhs))))
    out.append(_result("quaternion", "composition law", err, 1e-10))

    err = 0.0
    for q, v in zip(qs, vs):
        err = max(err, float(np.max(np.abs(
            rotate_right(q, v) - rotate_right(-1.0 * q, v)))))
    out.append(_result("quaternion", "double cover q ~ -q", err, 1e-10))

    err = 0.0
    for q in qs:
        axis, angle = axis_angle(q)
        err = max(err, float(np.max(np.abs(rotate_right(q, axis) - axis))))
    out.append(_result("quaternion", "axis is fixed", err, 1e-10))

    err = 0.0
    for q, v in zip(qs, vs):
        err = max(err, abs(float(np.linalg.norm(rotate_right(q, v)))
                           - float(np.linalg.norm(v))))
    out.append(_result("quaternion", "norm preserved", err, 1e-10))

    err = 0.0
    for q in qs:
        _, angle = axis_angle(q)
        want = math.acos(max(-1.0, min(1.0, 2.0 * q.a * q.a - 1.0)))
        got = min(angle, 2.0 * math.pi - angle)
        err = max(err, abs(got - want))
    out.append(_result("quaternion", "angle = arccos(2a^2-1)", err, 1e-10))

    err = 0.0
    for q1, q2 in zip(qs, qs[::-1]):
        err = max(err, float(np.max(np.abs(
            to_su2(q1) @ to_su2(q2) - to_su2(q1 * q2)))))
    out.append(_result("quaternion", "SU(2) homomorphism", err, 1e-10))
    return out


def suite_stereo(rng) -> list[CheckResult]:
    out = []
    err = 0.0
    for chart in (CHART_S1, CHART_S2, CHART_S3):
        pts = rng.standard_normal((500, chart.dim + 1))
        pts /= np.linalg.norm(pts, axis=1)[:, None]
        for p in pts:
            if abs(1.0 - p[-1]) < 1e-6:
                continue
            q = chart.unproject(chart.project(p))
            err = max(err, float(np.max(np.abs(q - p))))
    out.append(_result("stereo", "round trip on S^1,S^2,S^3", err, 1e-12))

    err = 0.0
    t = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    eq = np.column_stack([np.cos(t), np.sin(t), np.zeros_like(t)])
    for p in eq:
        err = max(err, float(np.max(np.abs(CHART_S2.project(p) - p[:2]))))
    out.append(_result("stereo", "equator pointwise fixed", err, 1e-12))

    err = 0.0
    for _ in range(20):
        axis = rng.standard_normal(3)
        axis /= np.linalg.norm(axis)
        u = np.cross(axis, [1.0, 0.3, -0.4])
        u /= np.linalg.norm(u)
        v = np.cross(axis, u)
        h = rng.uniform(-0.8, 0.8)
        r = math.sqrt(1.0 - h * h)
        circ = (h * axis + r * (np.outer(np.cos(t), u) + np.outer(np.sin(t), v)))
        if np.max(circ[:, 2]) > 1.0 - 1e-3:
            continue
        zs = np.array([complex(*CHART_S2.project(p)) for p in circ])
        _, resid = fit_generalized_circle(zs)
        err = max(err, resid)
    out.append(_result("stereo", "circles project to circles", err, 1e-8))

    curves = hypercube_scene()
    out.append(CheckResult("stereo", "hypercube edge count",
                           len(curves) == 32, f"{len(curves)} curves (want 32)"))
    return out


def suite_inversion(rng) -> list[CheckResult]:
    out = []
    centers = rng.standard_normal((50, 2))
    radii = rng.uniform(0.5, 2.0, 50)
    pts = rng.standard_normal((200, 2))

    err = inv_err = 0.0
    for (cx, cy), r in zip(centers, radii):
        s = Sphere(np.array([cx, cy]), float(r))
        for p in pts[:40]:
            if np.linalg.norm(p - s.center) < 1e-3:
                continue
            q = s.invert(p)
            inv_err = max(inv_err, float(np.max(np.abs(s.invert(q) - p))))
            err = max(err, abs(np.linalg.norm(p - s.center)
                               * np.linalg.norm(q - s.center) - r * r))
    out.append(_result("inversion", "involution", inv_err, 1e-10))
    out.append(_result("inversion", "|ap||aq| = r^2", err, 1e-10))

    err = 0.0
    for k in range(40):
        s = Sphere(rng.standard_normal(2), float(rng.uniform(0.5, 2.0)))
        c = GeneralizedCircle.circle(complex(*rng.standard_normal(2)),
                                     float(rng.uniform(0.3, 1.5)))
        image = invert_circle(s, c)
        zs = np.array([s.invert(z) for z in c.sample(64)], dtype=complex)
        err = max(err, float(np.max(np.abs(image.evaluate(zs)))))
    out.append(_result("inversion", "circle maps to circle", err, 1e-8))

    err = 0.0
    for k in range(20):
        s1 = Sphere(rng.standard_normal(2), float(rng.uniform(0.5, 2.0)))
        s2 = Sphere(rng.standard_normal(2), float(rng.uniform(0.5, 2.0)))
        mob = compose_inversions(s1, s2)
        for z in (0.3 + 0.1j, -1.2 + 0.8j, 2.0 - 0.5j):
            direct = s1.invert(s2.invert(z))
            if is_infinity(direct):
                continue
            err = max(err, abs(mob(z) - direct))
    out.append(_result("inversion", "composed inversions are Moebius", err, 1e-9))

    ell, hyp = apollonian_families(-1.0 + 0j, 1.0 + 0j, 6, 6)
    err = 0.0
    for e in ell:
        for h in hyp:
            ang, _ = circles_orthogonal(e, h)
            err = max(err, abs(ang - math.pi / 2))
    out.append(_result("inversion", "Apollonius orthogonality", err, 1e-9))
    return out


def suite_hopf(rng) -> list[CheckResult]:
    out = []
    pts = rng.standard_normal((200, 4))
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    err = 0.0
    for row in pts:
        p = hopf.S3Point.from_xyzw(row)
        a = hopf.hopf_map(p)
        b = hopf.hopf_map_coords(row)
        c = hopf.quat_hopf(hopf.QUAT_RIGHT_CONVENTION, p.to_quaternion())
        err = max(err, float(np.max(np.abs(a - b))), float(np.max(np.abs(a - c))))
    out.append(_result("hopf", "chart = coords = calibrated rotation", err, 1e-10))

    align_ok = bool(np.array_equal(hopf.calibrate_quat_alignment(80),
                                   hopf.QUAT_ALIGNMENT))
    out.append(CheckResult("hopf", "calibration matrix stable", align_ok,
                           "search over 48 signed permutations"))

    err = plane_err = 0.0
    bases = rng.standard_normal((20, 3))
    bases /= np.linalg.norm(bases, axis=1)[:, None]
    for b in bases:
        fc = hopf.fiber(b, 96)
        check = hopf.is_great_circle(fc)
        plane_err = max(plane_err, check.plane_residual)
        img = hopf.hopf_map_coords(fc.samples)
        err = max(err, float(np.max(np.abs(img - b))))
    out.append(_result("hopf", "fibers are great circles", plane_err, 1e-9))
    out.append(_result("hopf", "fibers map to their base", err, 1e-10))

    err = 0.0
    for b in bases[:5]:
        fc = hopf.fiber(b, 96)
        x0, xk = fc.samples[0], fc.samples[17]
        z10, z20 = complex(x0[0], x0[1]), complex(x0[2], x0[3])
        z1k, z2k = complex(xk[0], xk[1]), complex(xk[2], xk[3])
        if min(abs(z10), abs(z20)) < 1e-12:
            lam = z2k / z20 if abs(z10) < 1e-12 else z1k / z10
            err = max(err, abs(abs(lam) - 1.0))
        else:
            lam1, lam2 = z1k / z10, z2k / z20
            err = max(err, abs(lam1 - lam2), abs(abs(lam1) - 1.0))
    out.append(_result("hopf", "same fiber iff unit ratio", err, 1e-10))

    b1 = np.array([0.0, 0.0, -1.0])
    b2 = b1 + np.array([0.1, 0.0, 0.0])
    b2 /= np.linalg.norm(b2)
    c1 = hopf.project_fiber(hopf.fiber(b1, 256))
    c2 = hopf.project_fiber(hopf.fiber(b2, 256))
    link = hopf.linking_number(c1.points, c2.points)
    out.append(CheckResult("hopf", "nearby fibers link once",
                           abs(link) == 1, f"linking number {link}"))

    torus, _ = hopf.latitudinal_torus(1.0, 12, 96)
    rel = abs(torus.big_radius ** 2 - torus.small_radius ** 2 - 1.0)
    out.append(_result("hopf", "rho=1 torus satisfies R^2-r^2=1",
                       max(rel, torus.residual), 1e-6))

    base = np.array([0.6, 0.0, 0.8])
    sr = hopf.winding_slope(hopf.fiber(base, 96, hopf.QUAT_RIGHT_CONVENTION))
    sl = hopf.winding_slope(hopf.fiber(base, 96, hopf.QUAT_LEFT_CONVENTION))
    out.append(_result("hopf", "handedness slopes +1/-1",
                       max(abs(sr - 1.0), abs(sl + 1.0)), 1e-9))

    v1, v2 = hopf.villarceau_section(math.sqrt(2.0), 1.0, 128)
    pr = hopf.project_fiber(hopf.fiber(from_riemann(1.0 + 0j), 128))
    fit_v = fit_circle_3d(v1.points)
    fit_f = fit_circle_3d(pr.points)
    err = max(float(np.max(np.abs(fit_v.center - fit_f.center))),
              abs(fit_v.radius - fit_f.radius),
              float(np.max(np.abs(np.abs(fit_v.normal) - np.abs(fit_f.normal)))))
    out.append(_result("hopf", "Villarceau circle is a fiber", err, 1e-6))
    return out


SUITES = {
    "quaternion": suite_quaternion,
    "stereo": suite_stereo,
    "inversion": suite_inversion,
    "hopf": suite_hopf,
}


def run_suites(names, seed: int = 20260825) -> list[CheckResult]:
    if isinstance(names, str):
        names = [names]
    expanded = []
    for name in names:
        if name == "all":
            expanded.extend(SUITES)
        elif name in SUITES:
            expanded.append(name)
        else:
            raise KeyError(f"unknown suite {name!r}")
    results = []
    for name in dict.fromkeys(expanded):
        rng = np.random.default_rng(seed)
        results.extend(SUITES[name](rng))
    return results


def format_table(results) -> str:
    width_suite = max(len(r.suite) for r in results)
    width_name = max(len(r.name) for r in results)
    lines = []
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        lines.append(f"{mark}  {r.suite:<{width_suite}}  "
                     f"{r.name:<{width_name}}  {r.detail}")
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"

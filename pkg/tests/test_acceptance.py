"""End-to-end acceptance checks.

One test per headline guarantee, each asserting its stated tolerance and
wall-clock budget.  Random instances use fixed seeds; degenerate
configurations (coincident points, chart poles, touching curves) are
resampled away because the quantities under test are undefined there.
"""
import itertools
import json
import math
import subprocess
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from fastapi.testclient import TestClient

from hopfgeo.complexplane import (
    ClosedPath,
    PolarForm,
    Polynomial,
    count_roots_by_winding,
    from_polar,
    map_path,
    outer_root_radius,
    to_polar,
    winding_number,
)
from hopfgeo.fitting import (
    fit_circle_3d,
    fit_generalized_circle,
    torus_implicit,
)
from hopfgeo.hopf import (
    QUAT_ALIGNMENT,
    QUAT_LEFT_CONVENTION,
    QUAT_RIGHT_CONVENTION,
    S3Point,
    calibrate_quat_alignment,
    fiber,
    gauss_linking_sum,
    hopf_map,
    is_great_circle,
    latitudinal_torus,
    linking_number,
    project_fiber,
    quat_hopf,
    villarceau_section,
    winding_slope,
)
from hopfgeo.inversion import (
    GeneralizedCircle,
    Sphere,
    apollonian_families,
    circles_orthogonal,
    compose_inversions,
)
from hopfgeo.moebius import (
    INFINITY,
    MoebiusMap,
    between_triples,
    cross_ratio,
    from_three_points,
    is_infinity,
    riemann_close,
)
from hopfgeo.quaternions import (
    Quaternion,
    UnitQuaternion,
    axis_angle,
    rotate_right,
    to_su2,
)
from hopfgeo.scene import sample_torus_mesh, validate_scene_dict
from hopfgeo.service import create_app
from hopfgeo.stereo import CHART_S2, CHART_S3, from_riemann


def _within(t0: float, budget: float) -> None:
    elapsed = time.perf_counter() - t0
    assert elapsed < budget, f"took {elapsed:.2f} s, budget {budget} s"


def _unit_rows(rng, n, dim):
    v = rng.standard_normal((n, dim))
    return v / np.linalg.norm(v, axis=1)[:, None]


def test_complex_product_and_polar_laws():
    t0 = time.perf_counter()
    rng = np.random.default_rng(101)
    pairs = rng.standard_normal((10_000, 4))
    worst = 0.0
    for zr, zi, wr, wi in pairs:
        z, w = complex(zr, zi), complex(wr, wi)
        pz, pw = to_polar(z), to_polar(w)
        worst = max(worst, abs(abs(z * w) - abs(z) * abs(w)))
        via_polar = from_polar(PolarForm(pz.r * pw.r, pz.theta + pw.theta))
        worst = max(worst, abs(via_polar - z * w))
    assert worst < 1e-12
    _within(t0, 1.0)


def test_winding_number_named_paths_and_random_root_counts():
    t0 = time.perf_counter()
    circle = ClosedPath.circle(0.0, 1.0, 256)
    assert winding_number(circle) == 1
    assert winding_number(ClosedPath.circle(2.0, 1.0, 256)) == 0
    assert winding_number(map_path(lambda z: z * z, circle)) == 2
    assert winding_number(map_path(lambda z: z * (z - 2.0), circle)) == 1
    rng = np.random.default_rng(102)
    for _ in range(50):
        degree = int(rng.integers(1, 7))
        coeffs = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        lead = coeffs[-1]
        coeffs[-1] = lead / abs(lead) * max(abs(lead), 0.5)
        poly = Polynomial(tuple(coeffs))
        radius = outer_root_radius(poly)
        assert count_roots_by_winding(poly, radius) == degree
    _within(t0, 2.0)


def _random_moebius(rng) -> MoebiusMap:
    while True:
        a, b, c, d = (complex(*pair) for pair in rng.standard_normal((4, 2)))
        m = MoebiusMap(a, b, c, d)
        if abs(m.det) >= 0.5:
            return m


def _separated_points(rng, k, min_sep=0.5, scale=2.0):
    while True:
        pts = [complex(*row) for row in scale * rng.standard_normal((k, 2))]
        if min(abs(p - q) for p, q in
               itertools.combinations(pts, 2)) >= min_sep:
            return pts


def test_cross_ratio_invariance_and_moebius_algebra():
    t0 = time.perf_counter()
    rng = np.random.default_rng(103)

    done = 0
    while done < 1000:
        pts = _separated_points(rng, 4)
        m = _random_moebius(rng)
        images = [m(p) for p in pts]
        if any(is_infinity(w) or abs(w) > 10.0 for w in images):
            continue
        if min(abs(p - q) for p, q in
               itertools.combinations(images, 2)) < 0.2:
            continue
        err = abs(cross_ratio(*images) - cross_ratio(*pts))
        assert err < 1e-9
        done += 1

    for _ in range(1000):
        z1, z2, z3 = _separated_points(rng, 3)
        f = from_three_points(z1, z2, z3)
        assert abs(f(z1)) < 1e-12
        assert abs(f(z2) - 1.0) < 1e-12
        assert riemann_close(f(z3), INFINITY, 1e-12)

    done = 0
    while done < 1000:
        m1, m2 = _random_moebius(rng), _random_moebius(rng)
        z = complex(*rng.standard_normal(2))
        inner = m2(z)
        if is_infinity(inner) or abs(inner) > 1e3:
            continue
        outer = m1(inner)
        if is_infinity(outer) or abs(outer) > 1e3:
            continue
        assert abs(m1.compose(m2)(z) - outer) < 1e-10
        done += 1
    _within(t0, 2.0)


def _random_sphere(rng) -> Sphere:
    center = complex(*rng.standard_normal(2))
    return Sphere.from_complex(center, 0.5 + 1.5 * rng.random())


def test_inversion_involution_product_fits_and_composition():
    t0 = time.perf_counter()
    rng = np.random.default_rng(104)

    worst_inv, worst_prod = 0.0, 0.0
    for _ in range(10_000):
        s = _random_sphere(rng)
        c = s.center_complex
        p = c + (0.1 + 2.0 * rng.random()) * np.exp(2j * np.pi * rng.random())
        q = s.invert(p)
        worst_inv = max(worst_inv, abs(s.invert(q) - p))
        worst_prod = max(worst_prod, abs(abs(p - c) * abs(q - c) - s.radius ** 2))
    assert worst_inv < 1e-10
    assert worst_prod < 1e-10

    for case in range(200):
        s = _random_sphere(rng)
        kind = case % 4
        if kind == 0:
            k = GeneralizedCircle.circle(complex(*rng.standard_normal(2)),
                                         0.3 + 1.5 * rng.random())
        elif kind == 1:  # circle through the inversion center
            c = complex(*rng.standard_normal(2))
            k = GeneralizedCircle.circle(c, abs(s.center_complex - c))
        elif kind == 2:
            k = GeneralizedCircle.line(complex(*rng.standard_normal(2)),
                                       np.exp(2j * np.pi * rng.random()))
        else:  # line through the inversion center
            k = GeneralizedCircle.line(s.center_complex,
                                       np.exp(2j * np.pi * rng.random()))
        images = [s.invert(z) for z in k.sample(128)]
        finite = [w for w in images if not is_infinity(w) and abs(w) <= 1e6]
        assert len(finite) >= 100
        _, resid = fit_generalized_circle(np.asarray(finite))
        assert resid < 1e-8

    for _ in range(50):
        c, k = _random_sphere(rng), _random_sphere(rng)
        m = compose_inversions(c, k)

        def double(z):
            return c.invert(k.invert(z))

        def usable(z):
            if abs(z - k.center_complex) < 0.1:
                return False
            mid = k.invert(z)
            return (not is_infinity(mid)
                    and abs(mid - c.center_complex) > 0.1
                    and abs(double(z)) < 1e3)

        probes = []
        while len(probes) < 23:
            z = complex(*(2.0 * rng.standard_normal(2)))
            if usable(z) and all(abs(z - p) > 0.3 for p in probes):
                probes.append(z)
        fitted = between_triples(probes[:3], [double(z) for z in probes[:3]])
        for z in probes[3:]:
            assert abs(m(z) - fitted(z)) < 1e-9
    _within(t0, 5.0)


def _reflect_across_line(line: GeneralizedCircle, z: complex) -> complex:
    q0, d = line.line_point, line.line_direction
    return q0 + d * ((z - q0) / d).conjugate()


def test_apollonius_membership_and_orthogonality():
    t0 = time.perf_counter()
    for p, p2 in ((-1.0 + 0.0j, 1.0 + 0.0j), (-0.6 + 0.2j, 1.1 - 0.4j)):
        elliptic, hyperbolic = apollonian_families(p, p2, 8, 8)
        assert len(elliptic) == 8 and len(hyperbolic) == 8
        for circ in elliptic:
            assert circ.distance(p) < 1e-10
            assert circ.distance(p2) < 1e-10
        for circ in hyperbolic:
            if circ.is_line:
                image = _reflect_across_line(circ, p)
            else:
                image = Sphere.from_complex(circ.center, circ.radius).invert(p)
            assert abs(image - p2) < 1e-10
        for e, h in itertools.product(elliptic, hyperbolic):
            angle, ortho = circles_orthogonal(e, h)
            assert ortho
            assert abs(angle - math.pi / 2) < 1e-9
    _within(t0, 2.0)


def test_stereographic_round_trip_circles_and_equator():
    t0 = time.perf_counter()
    rng = np.random.default_rng(106)

    for chart, dim in ((CHART_S2, 3), (CHART_S3, 4)):
        worst = 0.0
        made = 0
        while made < 10_000:
            p = rng.standard_normal(dim)
            p /= np.linalg.norm(p)
            if 1.0 - p[-1] < 0.01:  # resample next to the chart pole
                continue
            back = chart.unproject(chart.project(p))
            worst = max(worst, float(np.max(np.abs(back - p))))
            made += 1
        assert worst < 1e-12

    made = 0
    while made < 200:
        normal = _unit_rows(rng, 1, 3)[0]
        u = np.cross(normal, [1.0, 0.0, 0.0])
        if np.linalg.norm(u) < 1e-6:
            u = np.cross(normal, [0.0, 1.0, 0.0])
        u /= np.linalg.norm(u)
        v = np.cross(normal, u)
        h = 0.95 * (2.0 * rng.random() - 1.0)
        rad = math.sqrt(1.0 - h * h)
        theta = 2.0 * np.pi * np.arange(64) / 64
        pts = (h * normal + rad * (np.outer(np.cos(theta), u)
                                   + np.outer(np.sin(theta), v)))
        images = np.array([CHART_S2.project(p) for p in pts])
        if np.max(np.abs(images)) > 1e3:  # circle grazes the pole
            continue
        _, resid = fit_generalized_circle(images[:, 0] + 1j * images[:, 1])
        assert resid < 1e-8
        made += 1

    theta = 2.0 * np.pi * np.arange(512) / 512
    equator2 = np.column_stack([np.cos(theta), np.sin(theta),
                                np.zeros_like(theta)])
    for p in equator2:
        assert np.array_equal(CHART_S2.project(p), p[:2])
    equator3 = np.column_stack([np.cos(theta), np.sin(theta),
                                np.zeros_like(theta)])
    for x, y, _ in equator3:
        p = np.array([x * 0.6, y * 0.6, 0.8, 0.0])
        assert np.array_equal(CHART_S3.project(p), p[:3])
    _within(t0, 3.0)


def test_quaternion_rotation_laws():
    t0 = time.perf_counter()
    rng = np.random.default_rng(107)

    def rand_quat():
        while True:
            q = Quaternion(*rng.standard_normal(4))
            if q.norm() >= 0.3:
                return q

    worst = {"compose": 0.0, "cover": 0.0, "axis": 0.0, "norm": 0.0,
             "angle": 0.0, "su2": 0.0}
    for _ in range(1000):
        q, q2 = rand_quat(), rand_quat()
        p = rng.standard_normal(3)

        lhs = rotate_right(q2, rotate_right(q, p))
        rhs = rotate_right(q * q2, p)
        worst["compose"] = max(worst["compose"],
                               float(np.max(np.abs(lhs - rhs))))

        neg = Quaternion(-q.a, -q.b, -q.c, -q.d)
        worst["cover"] = max(worst["cover"], float(np.max(np.abs(
            rotate_right(q, p) - rotate_right(neg, p)))))

        u = UnitQuaternion(*rng.standard_normal(4))
        axis, angle = axis_angle(u)
        worst["axis"] = max(worst["axis"], float(np.max(np.abs(
            rotate_right(u, axis) - axis))))

        worst["norm"] = max(worst["norm"], abs(
            float(np.linalg.norm(rotate_right(q, p))) - float(np.linalg.norm(p))))

        measured = min(angle, 2.0 * math.pi - angle)
        target = math.acos(min(1.0, max(-1.0, 2.0 * u.a ** 2 - 1.0)))
        worst["angle"] = max(worst["angle"], abs(measured - target))

        worst["su2"] = max(worst["su2"], float(np.max(np.abs(
            to_su2(q * q2) - to_su2(q) @ to_su2(q2)))))

    for law, err in worst.items():
        assert err < 1e-10, f"{law} law error {err}"
    _within(t0, 2.0)


def test_hopf_fibers_great_circles_and_calibration():
    t0 = time.perf_counter()
    rng = np.random.default_rng(108)

    for base in _unit_rows(rng, 100, 3):
        fc = fiber(base, 64)
        check = is_great_circle(fc)
        assert check
        assert check.plane_residual < 1e-9
        for row in fc.samples:
            assert np.max(np.abs(hopf_map(S3Point.from_xyzw(row)) - base)) < 1e-10

    # lambda-uniqueness: same fiber iff the coordinate pair scales by one
    # unit complex number
    for _ in range(50):
        rho = 0.5 + 1.5 * rng.random()
        phi, phi2 = 2.0 * np.pi * rng.random(2)
        fc = fiber(from_riemann(rho * np.exp(1j * phi)), 32)
        i, j = rng.integers(0, 32, 2)
        x, y = fc.samples[i], fc.samples[j]
        z1x, z2x = complex(x[0], x[1]), complex(x[2], x[3])
        z1y, z2y = complex(y[0], y[1]), complex(y[2], y[3])
        lam = z1y / z1x
        assert abs(abs(lam) - 1.0) < 1e-10
        assert abs(z1y - lam * z1x) < 1e-10
        assert abs(z2y - lam * z2x) < 1e-10
        other = fiber(from_riemann((rho + 0.25) * np.exp(1j * phi2)), 32)
        w = other.samples[int(rng.integers(0, 32))]
        z1w, z2w = complex(w[0], w[1]), complex(w[2], w[3])
        lam_w = z1w / z1x
        assert abs(z2w - lam_w * z2x) > 1e-4  # no unit factor reaches it

    assert np.array_equal(calibrate_quat_alignment(), QUAT_ALIGNMENT)
    for row in _unit_rows(rng, 1000, 4):
        q = Quaternion(*row)
        err = np.max(np.abs(quat_hopf(QUAT_RIGHT_CONVENTION, q)
                            - hopf_map(S3Point.from_quaternion(q))))
        assert err < 1e-10
    _within(t0, 5.0)


def test_linking_number_of_random_fiber_pairs():
    t0 = time.perf_counter()
    rng = np.random.default_rng(109)
    done = 0
    while done < 50:
        b1, b2 = _unit_rows(rng, 2, 3)
        if b1[2] > 0.95 or b2[2] > 0.95:  # pole fiber projects to a line
            continue
        if np.linalg.norm(b1 - b2) < 0.3:  # nearly equal fibers nearly touch
            continue
        c1 = project_fiber(fiber(b1, 512)).points
        c2 = project_fiber(fiber(b2, 512)).points
        raw = gauss_linking_sum(c1, c2)
        k = round(raw)
        assert abs(raw - k) < 0.05
        assert abs(k) == 1
        done += 1
    _within(t0, 30.0)


def test_latitudinal_tori_villarceau_and_handedness():
    t0 = time.perf_counter()
    rhos = (0.5, 1.0, 2.0)
    tori = {}
    for rho in rhos:
        torus, _ = latitudinal_torus(rho)
        assert torus.residual < 1e-8
        assert abs(torus.big_radius ** 2 - torus.small_radius ** 2 - 1.0) < 1e-6
        tori[rho] = torus

    surf = {rho: sample_torus_mesh(tori[rho].big_radius,
                                   tori[rho].small_radius).vertices
            for rho in rhos}
    for small, big in itertools.combinations(rhos, 2):
        inner = torus_implicit(surf[small], tori[big].big_radius,
                               tori[big].small_radius)
        outer = torus_implicit(surf[big], tori[small].big_radius,
                               tori[small].small_radius)
        assert np.max(inner) < 0.0  # smaller-rho torus strictly inside
        assert np.min(outer) > 0.0  # larger-rho torus strictly outside

    plus, minus = villarceau_section(math.sqrt(2.0), 1.0)
    fiber_plus = project_fiber(fiber(np.array([1.0, 0.0, 0.0]), 256))
    fiber_minus = project_fiber(fiber(np.array([-1.0, 0.0, 0.0]), 256,
                                      QUAT_LEFT_CONVENTION))
    for section, thread in ((plus, fiber_plus), (minus, fiber_minus)):
        fit_s = fit_circle_3d(section.points)
        assert fit_s.residual < 1e-6
        fit_f = fit_circle_3d(thread.points)
        assert np.max(np.abs(fit_s.center - fit_f.center)) < 1e-6
        assert abs(fit_s.radius - fit_f.radius) < 1e-6
        assert abs(abs(float(fit_s.normal @ fit_f.normal)) - 1.0) < 1e-6

    for rho in rhos:
        base = from_riemann(rho * np.exp(0.7j))
        assert abs(winding_slope(fiber(base, 128)) - 1.0) < 1e-9
        assert abs(winding_slope(fiber(base, 128, QUAT_LEFT_CONVENTION))
                   + 1.0) < 1e-9
    _within(t0, 10.0)


def test_cli_verify_and_deterministic_exports():
    verify = subprocess.run(
        [sys.executable, "-m", "hopfgeo", "verify", "--suite", "all"],
        capture_output=True)
    assert verify.returncode == 0, verify.stdout.decode()

    commands = [
        ["fiber", "--base", "0.3,-0.4,0.5", "--samples", "64"],
        ["tori", "--latitudes", "1", "--fibers-per-torus", "3"],
        ["apollonius", "--p", "-1,0", "--p2", "1,0"],
        ["hypercube", "--format", "obj"],
    ]
    for argv in commands:
        runs = [subprocess.run([sys.executable, "-m", "hopfgeo", *argv],
                               capture_output=True, check=True).stdout
                for _ in range(2)]
        assert runs[0] == runs[1], f"non-deterministic output: {argv}"
        assert runs[0]


def test_service_fiber_examples_and_concurrency():
    with TestClient(create_app()) as client:
        def fetch(params):
            resp = client.get("/api/fiber", params=params)
            assert resp.status_code == 200
            doc = json.loads(resp.content,
                             parse_constant=lambda name: 1 / 0)
            validate_scene_dict(doc)
            again = client.get("/api/fiber", params=params)
            assert again.content == resp.content
            return resp.content, doc

        _, south = fetch({"x": 0, "y": 0, "z": -1})
        fit = fit_circle_3d(np.asarray(south["curves"][0]["points"]))
        assert fit.residual < 1e-9
        assert abs(fit.radius - 1.0) < 1e-8

        _, north = fetch({"x": 0, "y": 0, "z": 1})
        assert north["curves"][0]["contains_infinity"] is True

        _, f1 = fetch({"x": 1, "y": 0, "z": 0, "samples": 512})
        _, f2 = fetch({"x": 1, "y": 0.1, "z": 0, "samples": 512})
        link = linking_number(np.asarray(f1["curves"][0]["points"]),
                              np.asarray(f2["curves"][0]["points"]))
        assert abs(link) == 1

        url = "/api/fiber?x=0.6&y=0&z=0.8&samples=256"
        with ThreadPoolExecutor(max_workers=32) as pool:
            responses = list(pool.map(lambda _: client.get(url), range(100)))
        assert all(r.status_code == 200 for r in responses)
        assert len({r.content for r in responses}) == 1

"""Stateless HTTP JSON API for fibers, latitude tori, the base sphere, and
the hypercube scene.

Every successful response body is a canonically serialized SceneDocument
(sorted keys, 9-significant-digit floats), so identical requests produce
byte-identical bodies; wall-clock time is reported in the X-Elapsed-Ms
header to keep bodies deterministic.  Handlers are pure functions of the
query string.  Configuration comes from the environment: HOPF_BIND
(default 127.0.0.1:8787, used by the serve script) and HOPF_MAX_SAMPLES
(default 16384).
"""
from __future__ import annotations

import os
import time

import numpy as np
from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import __version__, hopf
from .scene import (
    SceneDocument,
    dumps_canonical,
    fmt9,
    sample_sphere_mesh,
    sample_torus_mesh,
)
from .stereo import hypercube_scene

DEFAULT_BIND = "127.0.0.1:8787"
DEFAULT_MAX_SAMPLES = 16384
MAX_LATITUDES = 16
MAX_FIBERS = 64


def bind_address() -> tuple:
    """(host, port) from HOPF_BIND."""
    raw = os.environ.get("HOPF_BIND", DEFAULT_BIND)
    host, _, port = raw.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"HOPF_BIND must look like host:port, got {raw!r}")
    return host, int(port)


def _bad(message: str) -> HTTPException:
    return HTTPException(status_code=400, detail=message)


def _parse_float(raw: str, name: str) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise _bad(f"{name} must be a number, got {raw!r}")
    if not np.isfinite(value):
        raise _bad(f"{name} must be finite")
    return value


def _parse_int(raw: str, name: str, lo: int, hi: int) -> int:
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise _bad(f"{name} must be an integer, got {raw!r}")
    if not lo <= value <= hi:
        raise _bad(f"{name} must be in [{lo}, {hi}]")
    return value


def _convention_annotations(variant: str) -> dict:
    return {
        "convention.variant": variant,
        "convention.chart": "stereographic-north-pole",
        "convention.orientation_sign": f"{hopf.FIBER_LINK_SIGN:+d}",
    }


def _scene_response(scene: SceneDocument, started: float) -> Response:
    body = dumps_canonical(scene.to_dict())
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    return Response(content=body, media_type="application/json",
                    headers={"X-Elapsed-Ms": f"{elapsed_ms:.3f}"})


def create_app(max_samples: int = None) -> FastAPI:
    if max_samples is None:
        max_samples = int(os.environ.get("HOPF_MAX_SAMPLES",
                                         DEFAULT_MAX_SAMPLES))
    app = FastAPI(title="hopfgeo fiber service", version=__version__,
                  docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=os.environ.get("HOPF_CORS_ORIGINS", "*").split(","),
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    @app.get("/api/health")
    def health():
        started = time.perf_counter()
        body = dumps_canonical({"status": "ok", "version": __version__})
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        return Response(content=body, media_type="application/json",
                        headers={"X-Elapsed-Ms": f"{elapsed_ms:.3f}"})

    @app.get("/api/fiber")
    def fiber_endpoint(request: Request):
        started = time.perf_counter()
        params = request.query_params
        x = _parse_float(params.get("x", "0"), "x")
        y = _parse_float(params.get("y", "0"), "y")
        z = _parse_float(params.get("z", "0"), "z")
        variant_raw = params.get("variant", hopf.Variant.RIEMANN.value)
        try:
            variant = hopf.Variant(variant_raw)
        except ValueError:
            raise HTTPException(status_code=422,
                                detail=f"unsupported variant {variant_raw!r}")
        samples = _parse_int(params.get("samples", "256"), "samples",
                             8, min(16384, max_samples))
        base = np.array([x, y, z])
        norm = float(np.linalg.norm(base))
        if norm <= 1e-9:
            raise _bad("base vector must have norm > 1e-9")
        base /= norm
        convention = hopf.HopfConvention(variant)
        curve = hopf.project_fiber(hopf.fiber(base, samples, convention))
        annotations = _convention_annotations(variant.value)
        annotations["base"] = ",".join(fmt9(v) for v in base)
        annotations["samples"] = str(samples)
        scene = SceneDocument(curves=[curve], annotations=annotations)
        return _scene_response(scene, started)

    @app.get("/api/tori")
    def tori_endpoint(request: Request):
        started = time.perf_counter()
        params = request.query_params
        raw = params.get("latitudes")
        if not raw:
            raise _bad("latitudes is required (comma-separated positive numbers)")
        parts = raw.split(",")
        if len(parts) > MAX_LATITUDES:
            raise _bad(f"at most {MAX_LATITUDES} latitudes")
        latitudes = [_parse_float(p, "latitudes") for p in parts]
        if any(not lat > 0 for lat in latitudes):
            raise _bad("latitudes must be positive")
        fibers = _parse_int(params.get("fibers", "12"), "fibers", 3, MAX_FIBERS)
        curves, meshes = [], []
        for rho in latitudes:
            torus, fiber_curves = hopf.latitudinal_torus(rho, fibers)
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
        annotations = _convention_annotations(hopf.Variant.RIEMANN.value)
        annotations["latitudes"] = ",".join(fmt9(v) for v in latitudes)
        scene = SceneDocument(curves=curves, meshes=meshes,
                              annotations=annotations)
        return _scene_response(scene, started)

    @app.get("/api/base-sphere")
    def base_sphere_endpoint():
        started = time.perf_counter()
        mesh = sample_sphere_mesh(1.0)
        mesh.metadata["kind"] = "base-sphere"
        scene = SceneDocument(meshes=[mesh],
                              annotations={"kind": "base-sphere"})
        return _scene_response(scene, started)

    @app.get("/api/scene/hypercube")
    def hypercube_endpoint():
        started = time.perf_counter()
        scene = SceneDocument(curves=hypercube_scene(),
                              annotations={"kind": "hypercube-projection"})
        return _scene_response(scene, started)

    return app


app = create_app()

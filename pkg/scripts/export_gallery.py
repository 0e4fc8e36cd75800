"""Export a gallery of geometry artifacts into an output directory.

Writes projected fibers (JSON + OBJ), a nested-tori scene, the Apollonius
figure (SVG), the projected hypercube (OBJ), and the Villarceau circles of
the sqrt(2), 1 torus.  Everything is deterministic, so re-running into the
same directory is a no-op byte-wise.
"""
import argparse
import math
import pathlib

import numpy as np

from hopfgeo.hopf import (
    QUAT_LEFT_CONVENTION,
    fiber,
    latitudinal_torus,
    project_fiber,
    villarceau_section,
)
from hopfgeo.inversion import apollonian_families
from hopfgeo.scene import (
    SceneDocument,
    export_json,
    export_obj,
    export_svg,
    planar_from_generalized,
    sample_torus_mesh,
)
from hopfgeo.stereo import hypercube_scene


def fiber_scene(bases, samples):
    curves = []
    for base in bases:
        b = np.asarray(base, dtype=float)
        b /= np.linalg.norm(b)
        curve = project_fiber(fiber(b, samples))
        curve.metadata["base"] = ",".join(f"{v:.6f}" for v in b)
        curves.append(curve)
    return SceneDocument(curves=curves, annotations={"kind": "fiber-bundle"})


def tori_scene(latitudes, fibers_per_torus):
    curves, meshes = [], []
    for rho in latitudes:
        torus, threads = latitudinal_torus(rho, fibers_per_torus)
        mesh = sample_torus_mesh(torus.big_radius, torus.small_radius)
        mesh.metadata.update({"rho": f"{rho:g}",
                              "big_radius": f"{torus.big_radius:.9g}",
                              "small_radius": f"{torus.small_radius:.9g}"})
        meshes.append(mesh)
        curves.extend(threads)
    return SceneDocument(curves=curves, meshes=meshes,
                         annotations={"kind": "latitude-tori"})


def apollonius_scene(p, p2, count):
    elliptic, hyperbolic = apollonian_families(p, p2, count, count)
    planar = [planar_from_generalized(c, {"family": name, "index": str(i)})
              for name, family in (("elliptic", elliptic),
                                   ("hyperbolic", hyperbolic))
              for i, c in enumerate(family)]
    return SceneDocument(planar=planar,
                         annotations={"kind": "apollonius"})


def villarceau_scene():
    plus, minus = villarceau_section(math.sqrt(2.0), 1.0)
    return SceneDocument(curves=[plus, minus],
                         annotations={"kind": "villarceau"})


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=pathlib.Path,
                        default=pathlib.Path("gallery"))
    parser.add_argument("--samples", type=int, default=256)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    bases = [(0.0, 0.0, -1.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0),
             (0.6, 0.0, 0.8), (-0.6, 0.6, 0.52915026)]
    artifacts = {
        "fibers.json": export_json(fiber_scene(bases, args.samples)),
        "fibers.obj": export_obj(fiber_scene(bases, args.samples)),
        "tori.obj": export_obj(tori_scene((0.5, 1.0, 2.0), 8)),
        "apollonius.svg": export_svg(apollonius_scene(-1.0, 1.0, 8)),
        "hypercube.obj": export_obj(SceneDocument(
            curves=hypercube_scene(),
            annotations={"kind": "hypercube-projection"})),
        "villarceau.json": export_json(villarceau_scene()),
    }
    for name, data in artifacts.items():
        path = args.out / name
        path.write_bytes(data)
        print(f"wrote {path} ({len(data)} bytes)")


if __name__ == "__main__":
    main()

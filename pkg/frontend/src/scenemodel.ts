/**
 * Translation of fetched scene documents into drawables for the canvas
 * renderer.  Geometry passes through verbatim; this module only attaches
 * styling (colors, widths, opacity) and pairs each fiber with the base
 * point that requested it.
 */

import { colorForLatitude } from "./colors.js";
import type { Vec3 } from "./geom.js";
import { BASE_SPHERE_PATH, fiberPath, toriPath } from "./requests.js";
import type { SceneMap } from "./client.js";
import type { ExplorerState } from "./state.js";
import type { MeshJson, Point3 } from "./types.js";

export type Drawable =
  | {
      kind: "polyline";
      points: Point3[];
      closed: boolean;
      color: string;
      width: number;
      alpha: number;
      /** Depth-sort individual segments so crossings show over/under. */
      depthSorted: boolean;
    }
  | {
      kind: "segments";
      segments: [Point3, Point3][];
      color: string;
      width: number;
      alpha: number;
    }
  | {
      kind: "marker";
      at: Vec3;
      color: string;
      radius: number;
    };

/** Unique undirected edges of a triangle mesh, as point pairs. */
export function meshEdges(mesh: MeshJson): [Point3, Point3][] {
  const seen = new Set<number>();
  const edges: [Point3, Point3][] = [];
  const n = mesh.vertices.length;
  for (const [a, b, c] of mesh.triangles) {
    for (const [i, j] of [
      [a, b],
      [b, c],
      [c, a],
    ] as const) {
      const key = i < j ? i * n + j : j * n + i;
      if (!seen.has(key)) {
        seen.add(key);
        edges.push([mesh.vertices[i]!, mesh.vertices[j]!]);
      }
    }
  }
  return edges;
}

/**
 * Build the draw list for the current state from fetched documents.
 *
 * Missing documents (still loading, or a fetch round was superseded) are
 * skipped; the scene renders whatever is available.
 */
export function buildSceneModel(
  state: ExplorerState,
  docs: SceneMap,
): Drawable[] {
  const drawables: Drawable[] = [];

  const sphere = docs.get(BASE_SPHERE_PATH);
  if (sphere) {
    for (const mesh of sphere.meshes) {
      drawables.push({
        kind: "segments",
        segments: meshEdges(mesh),
        color: "#8899bb",
        width: 0.5,
        alpha: 0.22,
      });
    }
  }

  if (state.showTori && state.latitudes.length > 0) {
    const tori = docs.get(toriPath(state.latitudes));
    if (tori) {
      for (const mesh of tori.meshes) {
        drawables.push({
          kind: "segments",
          segments: meshEdges(mesh),
          color: "#667799",
          width: 0.4,
          alpha: 0.1,
        });
      }
      for (const curve of tori.curves) {
        const rho = Number(curve.metadata["rho"] ?? "1");
        drawables.push({
          kind: "polyline",
          points: curve.points,
          closed: curve.closed,
          color: colorForLatitude(rho),
          width: 1,
          alpha: 0.55,
          depthSorted: false,
        });
      }
    }
  }

  for (const base of state.bases) {
    const doc = docs.get(fiberPath(base.point, state.variant));
    if (doc) {
      for (const curve of doc.curves) {
        drawables.push({
          kind: "polyline",
          points: curve.points,
          closed: curve.closed,
          color: base.color,
          width: 2.4,
          alpha: 1,
          depthSorted: state.showLinks,
        });
      }
    }
    drawables.push({
      kind: "marker",
      at: base.point,
      color: base.color,
      radius: 5,
    });
  }

  return drawables;
}

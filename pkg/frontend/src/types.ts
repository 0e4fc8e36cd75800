/**
 * Wire types for scene documents returned by the fiber service, plus a
 * structural validator.  The explorer renders these documents verbatim; it
 * never fabricates geometry of its own.
 */

export type Point3 = [number, number, number];

export interface CurveJson {
  points: Point3[];
  closed: boolean;
  metadata: Record<string, string>;
  contains_infinity: boolean;
}

export interface MeshJson {
  vertices: Point3[];
  triangles: [number, number, number][];
  metadata: Record<string, string>;
}

export interface SceneJson {
  version: number;
  curves: CurveJson[];
  meshes: MeshJson[];
  planar: unknown[];
  annotations: Record<string, string>;
}

export class SceneFormatError extends Error {}

function fail(path: string, message: string): never {
  throw new SceneFormatError(`${path}: ${message}`);
}

function asRecord(value: unknown, path: string): Record<string, unknown> {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    fail(path, "expected an object");
  }
  return value as Record<string, unknown>;
}

function asStringMap(value: unknown, path: string): Record<string, string> {
  const rec = asRecord(value, path);
  for (const [k, v] of Object.entries(rec)) {
    if (typeof v !== "string") {
      fail(`${path}.${k}`, "expected a string value");
    }
  }
  return rec as Record<string, string>;
}

function asPointList(value: unknown, path: string, arity: 3): Point3[] {
  if (!Array.isArray(value)) {
    fail(path, "expected an array");
  }
  return value.map((row, i) => {
    if (!Array.isArray(row) || row.length !== arity) {
      fail(`${path}[${i}]`, `expected ${arity} components`);
    }
    for (const c of row) {
      if (typeof c !== "number" || !Number.isFinite(c)) {
        fail(`${path}[${i}]`, "expected finite numbers");
      }
    }
    return row as Point3;
  });
}

function parseCurve(value: unknown, path: string): CurveJson {
  const rec = asRecord(value, path);
  const points = asPointList(rec["points"], `${path}.points`, 3);
  if (typeof rec["closed"] !== "boolean") {
    fail(`${path}.closed`, "expected a boolean");
  }
  if (typeof rec["contains_infinity"] !== "boolean") {
    fail(`${path}.contains_infinity`, "expected a boolean");
  }
  return {
    points,
    closed: rec["closed"],
    metadata: asStringMap(rec["metadata"] ?? {}, `${path}.metadata`),
    contains_infinity: rec["contains_infinity"],
  };
}

function parseMesh(value: unknown, path: string): MeshJson {
  const rec = asRecord(value, path);
  const vertices = asPointList(rec["vertices"], `${path}.vertices`, 3);
  const rawTriangles = rec["triangles"];
  if (!Array.isArray(rawTriangles)) {
    fail(`${path}.triangles`, "expected an array");
  }
  const triangles = rawTriangles.map((tri, i) => {
    if (!Array.isArray(tri) || tri.length !== 3) {
      fail(`${path}.triangles[${i}]`, "expected 3 vertex indices");
    }
    for (const idx of tri) {
      if (!Number.isInteger(idx) || idx < 0 || idx >= vertices.length) {
        fail(`${path}.triangles[${i}]`, `vertex index ${idx} out of range`);
      }
    }
    return tri as [number, number, number];
  });
  return {
    vertices,
    triangles,
    metadata: asStringMap(rec["metadata"] ?? {}, `${path}.metadata`),
  };
}

/** Validate a decoded JSON body as a scene document. Throws SceneFormatError. */
export function parseScene(data: unknown): SceneJson {
  const rec = asRecord(data, "scene");
  if (rec["version"] !== 1) {
    fail("scene.version", `unsupported version ${String(rec["version"])}`);
  }
  const rawCurves = rec["curves"];
  const rawMeshes = rec["meshes"];
  const rawPlanar = rec["planar"];
  if (!Array.isArray(rawCurves)) {
    fail("scene.curves", "expected an array");
  }
  if (!Array.isArray(rawMeshes)) {
    fail("scene.meshes", "expected an array");
  }
  if (!Array.isArray(rawPlanar)) {
    fail("scene.planar", "expected an array");
  }
  return {
    version: 1,
    curves: rawCurves.map((c, i) => parseCurve(c, `scene.curves[${i}]`)),
    meshes: rawMeshes.map((m, i) => parseMesh(m, `scene.meshes[${i}]`)),
    planar: rawPlanar,
    annotations: asStringMap(rec["annotations"] ?? {}, "scene.annotations"),
  };
}

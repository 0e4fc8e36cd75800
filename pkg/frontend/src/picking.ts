/**
 * Ray-sphere picking against the unit base sphere at the origin.
 */

import { add, dot, normalize, scale, type Vec3 } from "./geom.js";
import { cameraFrame, pickRay, type Viewport } from "./camera.js";
import type { OrbitCamera } from "./state.js";

/** Nearest positive intersection parameter of a ray with the unit sphere. */
export function intersectUnitSphere(origin: Vec3, dir: Vec3): number | null {
  const b = dot(origin, dir);
  const c = dot(origin, origin) - 1;
  const disc = b * b - c;
  if (disc < 0) {
    return null;
  }
  const root = Math.sqrt(disc);
  const tNear = -b - root;
  if (tNear > 1e-9) {
    return tNear;
  }
  const tFar = -b + root;
  return tFar > 1e-9 ? tFar : null;
}

/**
 * Pick a base point from canvas pixel coordinates.
 *
 * Returns the unit vector where the pick ray first meets the base sphere,
 * or null when the pointer misses it (callers treat a miss as a no-op).
 */
export function pickBasePoint(
  px: number,
  py: number,
  camera: OrbitCamera,
  viewport: Viewport,
): Vec3 | null {
  const frame = cameraFrame(camera);
  const ray = pickRay(px, py, frame, viewport);
  const t = intersectUnitSphere(ray.origin, ray.dir);
  if (t === null) {
    return null;
  }
  return normalize(add(ray.origin, scale(ray.dir, t)));
}

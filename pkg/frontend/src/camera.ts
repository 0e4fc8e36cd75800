/**
 * Orbit camera: spherical eye position looking at the origin, z-up, with a
 * simple perspective projection onto canvas pixels.  These transforms plus
 * the ray-sphere pick in picking.ts are the only geometry the explorer
 * computes; all displayed curves and meshes come from the service.
 */

import {
  add,
  cross,
  dot,
  normalize,
  scale,
  sub,
  type Vec3,
} from "./geom.js";
import type { OrbitCamera } from "./state.js";

export interface Viewport {
  width: number;
  height: number;
}

/** Vertical field of view in radians. */
export const FOV_Y = Math.PI / 5;

export interface CameraFrame {
  eye: Vec3;
  /** Unit right/up/forward axes of the camera. */
  right: Vec3;
  up: Vec3;
  forward: Vec3;
}

export function cameraEye(cam: OrbitCamera): Vec3 {
  const c = Math.cos(cam.phi);
  return [
    cam.distance * c * Math.cos(cam.theta),
    cam.distance * c * Math.sin(cam.theta),
    cam.distance * Math.sin(cam.phi),
  ];
}

export function cameraFrame(cam: OrbitCamera): CameraFrame {
  const eye = cameraEye(cam);
  const forward = normalize(scale(eye, -1));
  // z-up; cam.phi is clamped away from the poles so the cross is safe.
  const right = normalize(cross(forward, [0, 0, 1]));
  const up = cross(right, forward);
  return { eye, right, up, forward };
}

export interface Projected {
  x: number;
  y: number;
  /** Distance along the camera forward axis (positive in front). */
  depth: number;
}

export function focalLength(viewport: Viewport): number {
  return viewport.height / 2 / Math.tan(FOV_Y / 2);
}

/** Project a world point to canvas pixels; null when behind the camera. */
export function projectPoint(
  p: Vec3,
  frame: CameraFrame,
  viewport: Viewport,
): Projected | null {
  const rel = sub(p, frame.eye);
  const depth = dot(rel, frame.forward);
  if (depth <= 1e-9) {
    return null;
  }
  const f = focalLength(viewport);
  const x = viewport.width / 2 + (dot(rel, frame.right) / depth) * f;
  const y = viewport.height / 2 - (dot(rel, frame.up) / depth) * f;
  return { x, y, depth };
}

export interface Ray {
  origin: Vec3;
  dir: Vec3;
}

/** World-space ray through a canvas pixel. */
export function pickRay(
  px: number,
  py: number,
  frame: CameraFrame,
  viewport: Viewport,
): Ray {
  const f = focalLength(viewport);
  const sx = (px - viewport.width / 2) / f;
  const sy = (viewport.height / 2 - py) / f;
  const dir = normalize(
    add(frame.forward, add(scale(frame.right, sx), scale(frame.up, sy))),
  );
  return { origin: frame.eye, dir };
}

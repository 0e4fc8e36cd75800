/**
 * Explorer state and its pure update operations.
 *
 * The state is a plain immutable value: every operation returns a new state.
 * Base points are stored canonically (unit norm, coordinates snapped to the
 * 9-significant-digit wire grid) so that URL serialization is lossless and
 * the derived service request set is reproducible.
 */

import { colorForBase } from "./colors.js";
import { snap9 } from "./format.js";
import { distance, norm, normalize, type Vec3 } from "./geom.js";

export const VARIANTS = ["riemann", "quat-right", "quat-left"] as const;
export type Variant = (typeof VARIANTS)[number];

export interface SelectedBase {
  /** Unit vector on the base sphere, snapped to the wire grid. */
  point: Vec3;
  /** Deterministic color shared by the base marker and its fiber. */
  color: string;
}

export interface OrbitCamera {
  /** Azimuth in radians. */
  theta: number;
  /** Elevation in radians, clamped away from the poles. */
  phi: number;
  /** Distance from the origin. */
  distance: number;
}

export interface ExplorerState {
  bases: SelectedBase[];
  variant: Variant;
  latitudes: number[];
  camera: OrbitCamera;
  showTori: boolean;
  showLinks: boolean;
}

export const PHI_LIMIT = 1.45;
export const MIN_DISTANCE = 2.2;
export const MAX_DISTANCE = 40;

/** Two selections closer than this (chord length) count as the same point. */
const DUPLICATE_TOLERANCE = 1e-9;

/** Coordinates below this magnitude after normalization collapse to zero. */
const DUST = 1e-12;

export function defaultState(): ExplorerState {
  return {
    bases: [],
    variant: "riemann",
    latitudes: [0.5, 1, 2],
    camera: { theta: 0.65, phi: 0.35, distance: 7 },
    showTori: false,
    showLinks: true,
  };
}

/**
 * Normalize and snap a base point to its canonical stored form: unit norm
 * to within 1e-8, coordinates on the 9-significant-digit wire grid.  Points
 * already that close to unit length are snapped without renormalizing, so
 * the function is idempotent and decoded URL values pass through exactly.
 */
export function canonicalBase(p: Vec3): Vec3 {
  const n = norm(p);
  const unit = Math.abs(n - 1) < 1e-8 ? p : normalize(p);
  const snapped = unit.map((v) => {
    const w = Math.abs(v) < DUST ? 0 : v;
    return snap9(w);
  });
  return [snapped[0]!, snapped[1]!, snapped[2]!];
}

export function clampCamera(camera: OrbitCamera): OrbitCamera {
  return {
    theta: snap9(camera.theta),
    phi: snap9(Math.min(PHI_LIMIT, Math.max(-PHI_LIMIT, camera.phi))),
    distance: snap9(
      Math.min(MAX_DISTANCE, Math.max(MIN_DISTANCE, camera.distance)),
    ),
  };
}

/** Append a picked point; a re-pick of an existing base is a no-op. */
export function addBase(state: ExplorerState, p: Vec3): ExplorerState {
  const point = canonicalBase(p);
  if (state.bases.some((b) => distance(b.point, point) < DUPLICATE_TOLERANCE)) {
    return state;
  }
  const entry: SelectedBase = { point, color: colorForBase(point) };
  return { ...state, bases: [...state.bases, entry] };
}

/** Move an existing base to a new picked position (drag). */
export function moveBase(
  state: ExplorerState,
  index: number,
  p: Vec3,
): ExplorerState {
  if (index < 0 || index >= state.bases.length) {
    return state;
  }
  const point = canonicalBase(p);
  const bases = state.bases.slice();
  bases[index] = { point, color: colorForBase(point) };
  return { ...state, bases };
}

/** Index of the base nearest to a picked point, if within chord tolerance. */
export function findBaseNear(
  state: ExplorerState,
  p: Vec3,
  tolerance = 0.12,
): number {
  let best = -1;
  let bestDist = tolerance;
  state.bases.forEach((b, i) => {
    const d = distance(b.point, p);
    if (d < bestDist) {
      best = i;
      bestDist = d;
    }
  });
  return best;
}

/** Cycle riemann -> quat-right -> quat-left -> riemann. */
export function toggleVariant(state: ExplorerState): ExplorerState {
  const i = VARIANTS.indexOf(state.variant);
  const variant = VARIANTS[(i + 1) % VARIANTS.length]!;
  return { ...state, variant };
}

export function setVariant(state: ExplorerState, variant: Variant): ExplorerState {
  return { ...state, variant };
}

export function toggleTori(state: ExplorerState): ExplorerState {
  return { ...state, showTori: !state.showTori };
}

export function toggleLinks(state: ExplorerState): ExplorerState {
  return { ...state, showLinks: !state.showLinks };
}

/** Drop all selections but keep the viewpoint. */
export function clearBases(state: ExplorerState): ExplorerState {
  return { ...state, bases: [] };
}

/** Replace the latitude set; values are snapped, deduplicated and sorted. */
export function setLatitudes(
  state: ExplorerState,
  latitudes: number[],
): ExplorerState {
  const snapped = latitudes
    .filter((v) => Number.isFinite(v) && v > 0)
    .map(snap9);
  const unique = [...new Set(snapped)].sort((a, b) => a - b);
  return { ...state, latitudes: unique };
}

export function setCamera(
  state: ExplorerState,
  camera: OrbitCamera,
): ExplorerState {
  return { ...state, camera: clampCamera(camera) };
}

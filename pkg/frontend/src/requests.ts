/**
 * Derivation of the service request set from explorer state.
 *
 * The mapping is deterministic: canonical number formatting, fixed query
 * parameter order, fixed request order.  Serializing the state to a URL
 * fragment and decoding it back therefore reproduces the identical list.
 */

import { fmtNum } from "./format.js";
import type { Vec3 } from "./geom.js";
import type { ExplorerState, Variant } from "./state.js";

/** Sample count requested per fiber curve. */
export const FIBER_SAMPLES = 256;

/** Thread curves requested per torus. */
export const TORUS_FIBERS = 12;

export const BASE_SPHERE_PATH = "/api/base-sphere";

export function fiberPath(
  base: Vec3,
  variant: Variant,
  samples: number = FIBER_SAMPLES,
): string {
  const q = [
    `x=${fmtNum(base[0])}`,
    `y=${fmtNum(base[1])}`,
    `z=${fmtNum(base[2])}`,
    `variant=${variant}`,
    `samples=${samples}`,
  ];
  return `/api/fiber?${q.join("&")}`;
}

export function toriPath(
  latitudes: number[],
  fibers: number = TORUS_FIBERS,
): string {
  const lats = latitudes.map(fmtNum).join(",");
  return `/api/tori?latitudes=${lats}&fibers=${fibers}`;
}

/** Ordered list of service paths the current state needs rendered. */
export function requestSet(state: ExplorerState): string[] {
  const paths = [BASE_SPHERE_PATH];
  for (const base of state.bases) {
    paths.push(fiberPath(base.point, state.variant));
  }
  if (state.showTori && state.latitudes.length > 0) {
    paths.push(toriPath(state.latitudes));
  }
  return paths;
}

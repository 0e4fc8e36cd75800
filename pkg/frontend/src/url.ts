/**
 * URL-fragment codec for shareable sessions.
 *
 * The fragment is a flat key=value list with canonical ordering and number
 * formatting.  Because state values are already snapped to the wire grid,
 * encoding is lossless: decode(encode(state)) rebuilds identical numbers and
 * hence the identical service request set.  Colors are not serialized; they
 * are a deterministic function of the base point and are recomputed.
 *
 * Example:
 *   #v=riemann&b=0,0,-1;1,0,0&lat=0.5,1,2&cam=0.65,0.35,7&tori=0&links=1
 */

import { fmtNum, parseNum } from "./format.js";
import type { Vec3 } from "./geom.js";
import {
  VARIANTS,
  addBase,
  clampCamera,
  defaultState,
  setLatitudes,
  type ExplorerState,
  type Variant,
} from "./state.js";

function fmtVec(p: Vec3): string {
  return `${fmtNum(p[0])},${fmtNum(p[1])},${fmtNum(p[2])}`;
}

/** Encode state as a fragment string (without the leading '#'). */
export function encodeFragment(state: ExplorerState): string {
  const parts = [
    `v=${state.variant}`,
    `b=${state.bases.map((b) => fmtVec(b.point)).join(";")}`,
    `lat=${state.latitudes.map(fmtNum).join(",")}`,
    `cam=${fmtNum(state.camera.theta)},${fmtNum(state.camera.phi)},${fmtNum(
      state.camera.distance,
    )}`,
    `tori=${state.showTori ? 1 : 0}`,
    `links=${state.showLinks ? 1 : 0}`,
  ];
  return parts.join("&");
}

function parseTriple(text: string): [number, number, number] | null {
  const parts = text.split(",");
  if (parts.length !== 3) {
    return null;
  }
  try {
    const [a, b, c] = parts.map(parseNum);
    return [a!, b!, c!];
  } catch {
    return null;
  }
}

/**
 * Decode a fragment (with or without '#') into explorer state.
 *
 * Unknown keys are ignored and malformed fields fall back to defaults, so a
 * mangled shared link degrades gracefully instead of breaking the page.
 */
export function decodeFragment(fragment: string): ExplorerState {
  let state = defaultState();
  const text = fragment.startsWith("#") ? fragment.slice(1) : fragment;
  if (text === "") {
    return state;
  }
  const fields = new Map<string, string>();
  for (const part of text.split("&")) {
    const eq = part.indexOf("=");
    if (eq > 0) {
      fields.set(part.slice(0, eq), part.slice(eq + 1));
    }
  }

  const variant = fields.get("v");
  if (variant && (VARIANTS as readonly string[]).includes(variant)) {
    state = { ...state, variant: variant as Variant };
  }

  const bases = fields.get("b");
  if (bases !== undefined) {
    state = { ...state, bases: [] };
    if (bases !== "") {
      for (const chunk of bases.split(";")) {
        const p = parseTriple(chunk);
        if (p && Math.hypot(...p) > 0) {
          state = addBase(state, p);
        }
      }
    }
  }

  const lat = fields.get("lat");
  if (lat !== undefined) {
    if (lat === "") {
      state = { ...state, latitudes: [] };
    } else {
      try {
        state = setLatitudes(state, lat.split(",").map(parseNum));
      } catch {
        // keep defaults
      }
    }
  }

  const cam = fields.get("cam");
  if (cam !== undefined) {
    const c = parseTriple(cam);
    if (c) {
      state = {
        ...state,
        camera: clampCamera({ theta: c[0], phi: c[1], distance: c[2] }),
      };
    }
  }

  const tori = fields.get("tori");
  if (tori === "0" || tori === "1") {
    state = { ...state, showTori: tori === "1" };
  }
  const links = fields.get("links");
  if (links === "0" || links === "1") {
    state = { ...state, showLinks: links === "1" };
  }
  return state;
}

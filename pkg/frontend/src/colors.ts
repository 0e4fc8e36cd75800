/**
 * Deterministic color assignment.  A base point and the fiber fetched for it
 * share a color derived by hashing the point's canonical coordinates, so the
 * same selection always renders the same way (reproducible screenshots, and
 * colors survive URL round-trips without being serialized).
 */

import { fmtNum } from "./format.js";
import type { Vec3 } from "./geom.js";

/** FNV-1a 32-bit hash of a string. */
export function fnv1a(text: string): number {
  let h = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 0x01000193) >>> 0;
  }
  return h >>> 0;
}

/** hsl() color for a canonical (snapped) base point. */
export function colorForBase(base: Vec3): string {
  const key = `${fmtNum(base[0])},${fmtNum(base[1])},${fmtNum(base[2])}`;
  const h = fnv1a(key);
  const hue = h % 360;
  // Two lightness bands so nearby hues still separate visually.
  const light = 50 + ((h >>> 9) % 2) * 14;
  return `hsl(${hue}, 72%, ${light}%)`;
}

/** Muted color for torus thread curves, keyed by the latitude value. */
export function colorForLatitude(rho: number): string {
  const hue = fnv1a(`rho:${fmtNum(rho)}`) % 360;
  return `hsl(${hue}, 45%, 62%)`;
}

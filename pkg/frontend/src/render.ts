/**
 * Canvas 2D painter.  Points are perspective-projected with the orbit
 * camera; fibers can be drawn with per-segment depth sorting so that the
 * over/under weave of linked circles is visible.
 */

import {
  cameraFrame,
  projectPoint,
  type CameraFrame,
  type Projected,
  type Viewport,
} from "./camera.js";
import type { OrbitCamera } from "./state.js";
import type { Drawable } from "./scenemodel.js";
import type { Point3 } from "./types.js";

const BACKGROUND = "#10131a";

interface DepthSegment {
  a: Projected;
  b: Projected;
  depth: number;
  color: string;
  width: number;
}

function projectAll(
  points: Point3[],
  frame: CameraFrame,
  viewport: Viewport,
): (Projected | null)[] {
  return points.map((p) => projectPoint(p, frame, viewport));
}

function strokePolyline(
  ctx: CanvasRenderingContext2D,
  pts: (Projected | null)[],
  closed: boolean,
): void {
  ctx.beginPath();
  let started = false;
  const n = pts.length;
  const last = closed ? n + 1 : n;
  for (let i = 0; i < last; i++) {
    const p = pts[i % n];
    if (!p) {
      started = false;
      continue;
    }
    if (started) {
      ctx.lineTo(p.x, p.y);
    } else {
      ctx.moveTo(p.x, p.y);
      started = true;
    }
  }
  ctx.stroke();
}

function collectSegments(
  pts: (Projected | null)[],
  closed: boolean,
  color: string,
  width: number,
  out: DepthSegment[],
): void {
  const n = pts.length;
  const count = closed ? n : n - 1;
  for (let i = 0; i < count; i++) {
    const a = pts[i];
    const b = pts[(i + 1) % n];
    if (a && b) {
      out.push({ a, b, depth: (a.depth + b.depth) / 2, color, width });
    }
  }
}

export function drawScene(
  ctx: CanvasRenderingContext2D,
  drawables: Drawable[],
  camera: OrbitCamera,
  viewport: Viewport,
): void {
  const frame = cameraFrame(camera);
  ctx.fillStyle = BACKGROUND;
  ctx.fillRect(0, 0, viewport.width, viewport.height);
  ctx.lineJoin = "round";
  ctx.lineCap = "round";

  const sorted: DepthSegment[] = [];
  const markers: { p: Projected; color: string; radius: number }[] = [];

  for (const d of drawables) {
    if (d.kind === "segments") {
      ctx.globalAlpha = d.alpha;
      ctx.strokeStyle = d.color;
      ctx.lineWidth = d.width;
      ctx.beginPath();
      for (const [a, b] of d.segments) {
        const pa = projectPoint(a, frame, viewport);
        const pb = projectPoint(b, frame, viewport);
        if (pa && pb) {
          ctx.moveTo(pa.x, pa.y);
          ctx.lineTo(pb.x, pb.y);
        }
      }
      ctx.stroke();
    } else if (d.kind === "polyline") {
      const pts = projectAll(d.points, frame, viewport);
      if (d.depthSorted) {
        collectSegments(pts, d.closed, d.color, d.width, sorted);
      } else {
        ctx.globalAlpha = d.alpha;
        ctx.strokeStyle = d.color;
        ctx.lineWidth = d.width;
        strokePolyline(ctx, pts, d.closed);
      }
    } else {
      const p = projectPoint(d.at, frame, viewport);
      if (p) {
        markers.push({ p, color: d.color, radius: d.radius });
      }
    }
  }

  // Far-to-near segment pass: nearer strands paint over farther ones, which
  // is what makes two linked fibers visibly interlock.
  sorted.sort((s, t) => t.depth - s.depth);
  ctx.globalAlpha = 1;
  for (const s of sorted) {
    const cue = Math.min(1.8, camera.distance / s.depth);
    ctx.strokeStyle = s.color;
    ctx.lineWidth = s.width * cue;
    ctx.beginPath();
    ctx.moveTo(s.a.x, s.a.y);
    ctx.lineTo(s.b.x, s.b.y);
    ctx.stroke();
  }

  for (const m of markers) {
    ctx.globalAlpha = 1;
    ctx.fillStyle = m.color;
    ctx.strokeStyle = "#f5f6f8";
    ctx.lineWidth = 1.2;
    ctx.beginPath();
    ctx.arc(m.p.x, m.p.y, m.radius, 0, 2 * Math.PI);
    ctx.fill();
    ctx.stroke();
  }
  ctx.globalAlpha = 1;
}

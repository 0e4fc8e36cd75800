/**
 * End-to-end checks for the two explorer guarantees:
 *
 *  1. URL state round-trip reproduces the identical service request set.
 *  2. Picking the south pole renders the unit-circle fiber exactly as
 *     delivered by the service (fixture bytes captured from a live run).
 */

import { describe, expect, it } from "vitest";
import { cameraFrame, projectPoint, type Viewport } from "../src/camera.js";
import { SceneFetcher, ServiceClient } from "../src/client.js";
import { colorForBase } from "../src/colors.js";
import { distance } from "../src/geom.js";
import { pickBasePoint } from "../src/picking.js";
import { requestSet } from "../src/requests.js";
import { buildSceneModel } from "../src/scenemodel.js";
import {
  addBase,
  defaultState,
  toggleTori,
  type ExplorerState,
  type OrbitCamera,
} from "../src/state.js";
import { decodeFragment, encodeFragment } from "../src/url.js";
import { fixtureText, makeFetch } from "./helpers.js";

const BASE = "http://service.test";
const VIEW: Viewport = { width: 900, height: 700 };

describe("URL state round-trip", () => {
  it("reproduces the request set for a loaded session", () => {
    let s: ExplorerState = defaultState();
    s = addBase(s, [0, 0, -1]);
    s = addBase(s, [0.05, 0.1, -0.99]);
    s = toggleTori(s);

    const fragment = encodeFragment(s);
    const reloaded = decodeFragment(fragment);

    expect(requestSet(reloaded)).toEqual(requestSet(s));
    expect(encodeFragment(reloaded)).toBe(fragment);
    // the reloaded session also reproduces colors, so the scene renders
    // identically without any color state in the URL
    expect(reloaded.bases).toEqual(s.bases);
  });
});

describe("south pole pick", () => {
  it("renders the unit-circle fiber delivered by the service", async () => {
    // camera placed so the south pole sits on the visible hemisphere
    const camera: OrbitCamera = { theta: 0.3, phi: -0.9, distance: 7 };
    const frame = cameraFrame(camera);

    // locate the south pole on screen and pick at that pixel
    const onScreen = projectPoint([0, 0, -1], frame, VIEW);
    expect(onScreen).not.toBeNull();
    const hit = pickBasePoint(onScreen!.x, onScreen!.y, camera, VIEW);
    expect(hit).not.toBeNull();
    expect(distance(hit!, [0, 0, -1])).toBeLessThan(1e-9);

    // the pick canonicalizes to the exact pole and derives its request
    let state = { ...defaultState(), camera };
    state = addBase(state, hit!);
    expect(state.bases[0]!.point).toEqual([0, 0, -1]);
    const paths = requestSet(state);
    expect(paths).toEqual([
      "/api/base-sphere",
      "/api/fiber?x=0&y=0&z=-1&variant=riemann&samples=256",
    ]);

    // serve fixture bytes captured from the live service (the explicit
    // variant/samples defaults return the identical body)
    const { fetchFn } = makeFetch({
      [`${BASE}${paths[0]}`]: fixtureText("base_sphere.json"),
      [`${BASE}${paths[1]}`]: fixtureText("fiber_south.json"),
    });
    const fetcher = new SceneFetcher(new ServiceClient(BASE, fetchFn));
    const docs = await fetcher.refresh(paths);
    expect(docs).not.toBeNull();

    // the rendered fiber is the service curve, untouched: closed, 256
    // samples, colored like its base point
    const drawables = buildSceneModel(state, docs!);
    const fiber = drawables.find((d) => d.kind === "polyline");
    expect(fiber).toBeDefined();
    if (fiber?.kind !== "polyline") {
      throw new Error("unreachable");
    }
    expect(fiber.closed).toBe(true);
    expect(fiber.points).toHaveLength(256);
    expect(fiber.color).toBe(colorForBase([0, 0, -1]));

    // and it is the unit circle in the x1 x2 plane
    for (const [x, y, z] of fiber.points) {
      expect(Math.abs(z)).toBeLessThanOrEqual(1e-9);
      expect(Math.abs(Math.hypot(x, y) - 1)).toBeLessThanOrEqual(1e-6);
    }

    // sanity: the curve traverses the full circle rather than an arc
    const angles = fiber.points.map(([x, y]) => Math.atan2(y, x));
    const spread =
      Math.max(...angles.map(Math.cos)) - Math.min(...angles.map(Math.cos));
    expect(spread).toBeGreaterThan(1.9);
  });
});

/**
 * Browser entry point: wires DOM events to the pure state/fetch/render
 * modules.  All state changes funnel through commit(), which re-encodes the
 * URL fragment, redraws, and (when the request set changed) refreshes from
 * the service, cancelling any superseded in-flight round.
 */

import { SceneFetcher, ServiceClient, type SceneMap } from "./client.js";
import { loadConfig } from "./config.js";
import { pickBasePoint } from "./picking.js";
import { requestSet } from "./requests.js";
import { drawScene } from "./render.js";
import { buildSceneModel } from "./scenemodel.js";
import {
  addBase,
  clearBases,
  findBaseNear,
  moveBase,
  setCamera,
  setLatitudes,
  setVariant,
  toggleLinks,
  toggleTori,
  type ExplorerState,
  type Variant,
} from "./state.js";
import { decodeFragment, encodeFragment } from "./url.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

async function boot(): Promise<void> {
  const canvas = el<HTMLCanvasElement>("view");
  const ctx = canvas.getContext("2d");
  if (!ctx) {
    throw new Error("2d canvas context unavailable");
  }
  const variantSelect = el<HTMLSelectElement>("variant");
  const latitudesInput = el<HTMLInputElement>("latitudes");
  const toriBox = el<HTMLInputElement>("tori");
  const linksBox = el<HTMLInputElement>("links");
  const clearButton = el<HTMLButtonElement>("clear");
  const statusSpan = el<HTMLSpanElement>("status");

  const config = await loadConfig();
  const client = new ServiceClient(config.serviceUrl);
  const fetcher = new SceneFetcher(client);

  let state = decodeFragment(location.hash);
  let docs: SceneMap = new Map();

  function viewport(): { width: number; height: number } {
    return { width: canvas.clientWidth, height: canvas.clientHeight };
  }

  function resizeCanvas(): void {
    const dpr = window.devicePixelRatio || 1;
    const { width, height } = viewport();
    canvas.width = Math.round(width * dpr);
    canvas.height = Math.round(height * dpr);
    ctx!.setTransform(dpr, 0, 0, dpr, 0, 0);
  }

  function draw(): void {
    drawScene(ctx!, buildSceneModel(state, docs), state.camera, viewport());
  }

  function syncControls(): void {
    variantSelect.value = state.variant;
    latitudesInput.value = state.latitudes.join(", ");
    toriBox.checked = state.showTori;
    linksBox.checked = state.showLinks;
  }

  async function refresh(): Promise<void> {
    statusSpan.textContent = "fetching…";
    try {
      const result = await fetcher.refresh(requestSet(state));
      if (result === null) {
        return; // superseded by a newer round
      }
      docs = result;
      statusSpan.textContent = `${state.bases.length} base(s), variant ${state.variant}`;
      draw();
    } catch (err) {
      statusSpan.textContent = String(err);
    }
  }

  function commit(next: ExplorerState, refetch: boolean): void {
    state = next;
    history.replaceState(null, "", `#${encodeFragment(state)}`);
    syncControls();
    draw();
    if (refetch) {
      void refresh();
    }
  }

  // --- pointer interaction ------------------------------------------------
  type PointerMode =
    | { kind: "idle" }
    | { kind: "maybe-click"; x: number; y: number }
    | { kind: "orbit"; x: number; y: number }
    | { kind: "drag-base"; index: number };
  let mode: PointerMode = { kind: "idle" };

  canvas.addEventListener("pointerdown", (ev) => {
    canvas.setPointerCapture(ev.pointerId);
    const pick = pickBasePoint(ev.offsetX, ev.offsetY, state.camera, viewport());
    if (pick) {
      const near = findBaseNear(state, pick);
      if (near >= 0) {
        mode = { kind: "drag-base", index: near };
        return;
      }
    }
    mode = { kind: "maybe-click", x: ev.offsetX, y: ev.offsetY };
  });

  canvas.addEventListener("pointermove", (ev) => {
    if (mode.kind === "drag-base") {
      const pick = pickBasePoint(
        ev.offsetX,
        ev.offsetY,
        state.camera,
        viewport(),
      );
      if (pick) {
        commit(moveBase(state, mode.index, pick), true);
      }
      return;
    }
    if (mode.kind === "maybe-click") {
      const moved = Math.hypot(ev.offsetX - mode.x, ev.offsetY - mode.y);
      if (moved > 3) {
        mode = { kind: "orbit", x: ev.offsetX, y: ev.offsetY };
      }
      return;
    }
    if (mode.kind === "orbit") {
      const dx = ev.offsetX - mode.x;
      const dy = ev.offsetY - mode.y;
      mode = { kind: "orbit", x: ev.offsetX, y: ev.offsetY };
      commit(
        setCamera(state, {
          theta: state.camera.theta - dx * 0.008,
          phi: state.camera.phi + dy * 0.008,
          distance: state.camera.distance,
        }),
        false,
      );
    }
  });

  canvas.addEventListener("pointerup", (ev) => {
    if (mode.kind === "maybe-click") {
      const pick = pickBasePoint(
        ev.offsetX,
        ev.offsetY,
        state.camera,
        viewport(),
      );
      if (pick) {
        commit(addBase(state, pick), true);
      }
    }
    mode = { kind: "idle" };
  });

  canvas.addEventListener("wheel", (ev) => {
    ev.preventDefault();
    commit(
      setCamera(state, {
        ...state.camera,
        distance: state.camera.distance * Math.exp(ev.deltaY * 0.0012),
      }),
      false,
    );
  });

  // --- toolbar ------------------------------------------------------------
  variantSelect.addEventListener("change", () => {
    commit(setVariant(state, variantSelect.value as Variant), true);
  });
  latitudesInput.addEventListener("change", () => {
    const values = latitudesInput.value
      .split(",")
      .map((s) => Number(s.trim()))
      .filter((v) => Number.isFinite(v));
    commit(setLatitudes(state, values), true);
  });
  toriBox.addEventListener("change", () => {
    commit(toggleTori(state), true);
  });
  linksBox.addEventListener("change", () => {
    commit(toggleLinks(state), false);
  });
  clearButton.addEventListener("click", () => {
    commit(clearBases(state), true);
  });

  window.addEventListener("hashchange", () => {
    const incoming = location.hash.replace(/^#/, "");
    if (incoming !== encodeFragment(state)) {
      commit(decodeFragment(incoming), true);
    }
  });
  window.addEventListener("resize", () => {
    resizeCanvas();
    draw();
  });

  resizeCanvas();
  syncControls();
  draw();
  await refresh();
}

void boot();

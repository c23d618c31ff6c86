/**
 * Page wiring: sliders feed the scheduler, the scheduler feeds the views.
 * Every control movement goes through one debounced single-flight fetch, so
 * the rendered surface always matches the last settled slider values.
 */

import * as THREE from "three";
import { OrbitControls } from "three/addons/controls/OrbitControls.js";

import { fetchSurface, fetchSwapDiff } from "./api.js";
import { colorAt, cssColor, keyTicks } from "./colormap.js";
import { buildSurfaceGeometry, differenceGrid, originValue } from "./geometry.js";
import { paintHeatmap } from "./heatmap.js";
import { FetchScheduler } from "./scheduler.js";
import {
  ExplorerState,
  NU_RANGE,
  PARAMETRIZATIONS,
  Parametrization,
  SCALE_RANGE,
  colorBoundsOf,
  initialState,
  sliderToValue,
  valueToSlider,
  withNu,
  withParametrization,
  withScale,
  withSwapMode,
} from "./state.js";
import type { SurfaceResponse, SwapDiffResponse } from "./types.js";

type Payload =
  | { kind: "surface"; surface: SurfaceResponse }
  | { kind: "swap"; swap: SwapDiffResponse };

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

class SurfaceView {
  private renderer: THREE.WebGLRenderer;
  private scene = new THREE.Scene();
  private camera: THREE.PerspectiveCamera;
  private mesh: THREE.Mesh | null = null;

  constructor(canvas: HTMLCanvasElement) {
    this.renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
    this.renderer.setSize(canvas.clientWidth, canvas.clientHeight, false);
    this.camera = new THREE.PerspectiveCamera(
      45,
      canvas.clientWidth / canvas.clientHeight,
      0.01,
      1000,
    );
    this.camera.position.set(8, 6, 10);
    this.scene.background = new THREE.Color(0x10141a);
    this.scene.add(new THREE.AmbientLight(0xffffff, 0.9));
    const sun = new THREE.DirectionalLight(0xffffff, 1.2);
    sun.position.set(5, 10, 7);
    this.scene.add(sun);
    const controls = new OrbitControls(this.camera, canvas);
    controls.addEventListener("change", () => this.draw());
  }

  show(surface: SurfaceResponse, bounds: readonly [number, number]): void {
    if (this.mesh) {
      this.mesh.geometry.dispose();
      this.scene.remove(this.mesh);
    }
    const geometry = buildSurfaceGeometry(surface, bounds);
    const material = new THREE.MeshStandardMaterial({
      vertexColors: true,
      side: THREE.DoubleSide,
      flatShading: false,
    });
    this.mesh = new THREE.Mesh(geometry, material);
    const span = surface.x[surface.x.length - 1] - surface.x[0] || 1;
    this.mesh.scale.setScalar(10 / span);
    this.scene.add(this.mesh);
    this.draw();
  }

  private draw(): void {
    this.renderer.render(this.scene, this.camera);
  }
}

function drawColorKey(bounds: readonly [number, number]): void {
  const canvas = $<HTMLCanvasElement>("color-key");
  canvas.width = 24;
  canvas.height = 180;
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  for (let row = 0; row < canvas.height; row++) {
    ctx.fillStyle = cssColor(colorAt(1 - row / (canvas.height - 1)));
    ctx.fillRect(0, row, canvas.width, 1);
  }
  const labels = $<HTMLDivElement>("color-key-labels");
  labels.replaceChildren(
    ...keyTicks(bounds).map((t) => {
      const div = document.createElement("div");
      div.textContent = t.toPrecision(4);
      return div;
    }),
  );
}

function main(): void {
  let state: ExplorerState = initialState();
  const backendInput = $<HTMLInputElement>("backend-url");
  backendInput.value = new URLSearchParams(location.search).get("backend") ?? "http://127.0.0.1:8571";

  const nuSlider = $<HTMLInputElement>("nu-slider");
  const scaleSlider = $<HTMLInputElement>("scale-slider");
  const paramSelect = $<HTMLSelectElement>("param-select");
  const swapToggle = $<HTMLInputElement>("swap-toggle");
  const banner = $<HTMLDivElement>("error-banner");
  const readout = $<HTMLDivElement>("readout");
  const mainView = new SurfaceView($<HTMLCanvasElement>("view-main"));
  const swapView = new SurfaceView($<HTMLCanvasElement>("view-swapped"));

  for (const p of PARAMETRIZATIONS) {
    const option = document.createElement("option");
    option.value = p;
    option.textContent = p.replace(/_/g, " ");
    paramSelect.appendChild(option);
  }
  nuSlider.value = String(1000 * valueToSlider(state.nu, NU_RANGE));
  scaleSlider.value = String(1000 * valueToSlider(state.scale, SCALE_RANGE));

  const apply = (s: ExplorerState, payload: Payload): void => {
    banner.hidden = true;
    document.body.classList.toggle("swap", payload.kind === "swap");
    if (payload.kind === "surface") {
      const bounds = colorBoundsOf(payload.surface.z);
      mainView.show(payload.surface, bounds);
      paintHeatmap($<HTMLCanvasElement>("heatmap-main"), payload.surface.z, bounds);
      drawColorKey(bounds);
      readout.textContent =
        `nu=${s.nu.toPrecision(3)}, scale=${s.scale.toPrecision(3)} (${s.parametrization}); ` +
        `origin cell ${originValue(payload.surface).toFixed(3)}`;
    } else {
      const { swap } = payload;
      const bounds = colorBoundsOf(swap.surface.z);
      mainView.show(swap.surface, bounds);
      swapView.show(swap.surface_swapped, bounds);
      paintHeatmap(
        $<HTMLCanvasElement>("heatmap-main"),
        differenceGrid(swap.surface, swap.surface_swapped),
        [swap.surface_min_diff, swap.surface_max_diff],
      );
      drawColorKey(bounds);
      readout.textContent =
        `(nu=${swap.nu.toPrecision(3)}, rho=${swap.rho.toPrecision(3)}) vs swapped; ` +
        `difference extremes [${swap.min_diff.toFixed(3)}, ${swap.max_diff.toFixed(3)}]; ` +
        `origin cell ${originValue(swap.surface).toFixed(3)}`;
    }
  };

  const scheduler = new FetchScheduler<ExplorerState, Payload>(
    {
      load: async (s) => {
        const opts = { baseUrl: backendInput.value, resolution: 81 };
        if (s.swapMode) return { kind: "swap", swap: await fetchSwapDiff(s, opts) };
        return { kind: "surface", surface: await fetchSurface(s, opts) };
      },
      apply,
      fail: (_s, error) => {
        // non-blocking: previous surface stays up, controls stay live
        banner.hidden = false;
        banner.textContent = `backend error: ${error instanceof Error ? error.message : error}`;
      },
    },
    150,
  );

  nuSlider.addEventListener("input", () => {
    state = withNu(state, sliderToValue(Number(nuSlider.value) / 1000, NU_RANGE));
    scheduler.request(state);
  });
  scaleSlider.addEventListener("input", () => {
    state = withScale(state, sliderToValue(Number(scaleSlider.value) / 1000, SCALE_RANGE));
    scheduler.request(state);
  });
  paramSelect.addEventListener("change", () => {
    state = withParametrization(state, paramSelect.value as Parametrization);
    scheduler.request(state);
  });
  swapToggle.addEventListener("change", () => {
    state = withSwapMode(state, swapToggle.checked);
    // the swap study is a (nu, rho) statement; the parametrization choice
    // applies to the plain surface only
    paramSelect.disabled = state.swapMode;
    scheduler.request(state);
  });
  backendInput.addEventListener("change", () => scheduler.request(state));

  scheduler.flush(state);
}

main();

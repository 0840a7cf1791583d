/**
 * DOM shell: builds one panel per configured view on a 12-column grid and
 * wires every panel through the coordination store. Canvas 2D only.
 */
import { AvcsStore, NdArray } from "./avcs.js";
import { continuousScale, labelColor, rgbCss } from "./colormap.js";
import { filesByRole, selectionsUrlFor } from "./config.js";
import { CoordinationStore } from "./coordination.js";
import { dotplotGrid } from "./dotplot.js";
import { clickFeature, toggleLayer, toggleObsSet } from "./lists.js";
import {
  LassoSession,
  makeSelectionPoster,
  pointColors,
  ScatterPoint,
} from "./scatterplot.js";
import { dotplotStats } from "./stats.js";
import {
  Camera,
  fitCamera,
  pyramidLevelForZoom,
  worldToScreen,
  zoomAbout,
} from "./spatial.js";
import type {
  CoordinationTypeName,
  SpatialLayerDescriptor,
  ViewConfig,
  ViewDecl,
} from "./types.js";

const CELL = 60; // grid cell height in px

interface ViewContext {
  config: ViewConfig;
  store: CoordinationStore;
  stores: Map<string, AvcsStore>;
  selectionsUrl: string | null;
}

function scopeOf(view: ViewDecl, ctype: CoordinationTypeName): string | undefined {
  return view.coordination[ctype];
}

function readScope(ctx: ViewContext, view: ViewDecl, ctype: CoordinationTypeName): unknown {
  const scope = scopeOf(view, ctype);
  return scope === undefined ? undefined : ctx.store.get(ctype, scope);
}

function onScope(
  ctx: ViewContext,
  view: ViewDecl,
  ctype: CoordinationTypeName,
  fn: () => void,
): void {
  const scope = scopeOf(view, ctype);
  if (scope !== undefined) {
    ctx.store.subscribe(ctype, scope, fn);
  }
}

async function openStore(ctx: ViewContext, roleKey: string): Promise<AvcsStore | null> {
  const files = filesByRole(ctx.config);
  const file = files.get(roleKey);
  if (!file) return null;
  let store = ctx.stores.get(file.url);
  if (!store) {
    store = await AvcsStore.open(file.url);
    ctx.stores.set(file.url, store);
  }
  return store;
}

function panel(view: ViewDecl, title: string): HTMLElement {
  const el = document.createElement("div");
  el.className = `panel panel-${view.component}`;
  el.style.gridColumn = `${view.x + 1} / span ${view.w}`;
  el.style.gridRow = `${view.y + 1} / span ${view.h}`;
  const header = document.createElement("div");
  header.className = "panel-title";
  header.textContent = title;
  el.appendChild(header);
  return el;
}

function canvasIn(el: HTMLElement, view: ViewDecl): HTMLCanvasElement {
  const canvas = document.createElement("canvas");
  canvas.width = view.w * 90;
  canvas.height = view.h * CELL - 24;
  el.appendChild(canvas);
  return canvas;
}

function grayscaleImage(level: NdArray): HTMLCanvasElement {
  const [channels, height, width] = level.shape;
  const canvas = document.createElement("canvas");
  canvas.width = width;
  canvas.height = height;
  const ctx2d = canvas.getContext("2d")!;
  const image = ctx2d.createImageData(width, height);
  let min = Infinity;
  let max = -Infinity;
  for (const v of level.data as Float32Array) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  const span = max > min ? max - min : 1;
  const plane = width * height;
  for (let i = 0; i < plane; i++) {
    const r = (level.data[i] - min) / span;
    const g = channels >= 3 ? (level.data[plane + i] - min) / span : r;
    const b = channels >= 3 ? (level.data[2 * plane + i] - min) / span : r;
    image.data[i * 4] = Math.round(r * 255);
    image.data[i * 4 + 1] = Math.round(g * 255);
    image.data[i * 4 + 2] = Math.round(b * 255);
    image.data[i * 4 + 3] = 255;
  }
  ctx2d.putImageData(image, 0, 0);
  return canvas;
}

// -- scatterplot ------------------------------------------------------------

async function mountScatterplot(ctx: ViewContext, view: ViewDecl): Promise<HTMLElement> {
  const embeddingType = String(readScope(ctx, view, "embeddingType") ?? "embedding");
  const el = panel(view, `scatterplot · ${embeddingType}`);
  const canvas = canvasIn(el, view);
  const embStore = await openStore(ctx, "embedding");
  if (!embStore) {
    el.appendChild(document.createTextNode("no embedding store"));
    return el;
  }
  const coords = await embStore.loadArray("embedding");
  const obsIds = (embStore.attribute<string[]>("obs_ids") ?? []).map(String);
  const points: ScatterPoint[] = [];
  const d = coords.shape[1];
  for (let i = 0; i < coords.shape[0]; i++) {
    points.push({ id: obsIds[i] ?? String(i), x: coords.data[i * d], y: coords.data[i * d + 1] });
  }

  let categories: string[] | undefined;
  const obsStore = await openStore(ctx, "obsColumn");
  if (obsStore && obsStore.manifest.arrays["codes"]) {
    const codes = await obsStore.loadArray("codes");
    categories = (obsStore.attribute<string[]>("labels") ?? []).map(String);
    points.forEach((p, i) => (p.code = Number(codes.data[i])));
  }

  const matrixStore = await openStore(ctx, "matrix");
  let varIds: string[] = [];
  let matrix: NdArray | null = null;
  if (matrixStore) {
    varIds = (matrixStore.attribute<string[]>("var_ids") ?? []).map(String);
    matrix = await matrixStore.loadArray("X");
  }

  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const minX = Math.min(...xs);
  const minY = Math.min(...ys);
  let camera = fitCamera(
    Math.max(...xs) - minX || 1,
    Math.max(...ys) - minY || 1,
    canvas.width,
    canvas.height,
  );
  camera = { ...camera, targetX: camera.targetX + minX, targetY: camera.targetY + minY };

  const lasso = new LassoSession();
  let lassoActive = false;
  let highlighted = new Set<string>();
  const poster = ctx.selectionsUrl ? makeSelectionPoster(ctx.selectionsUrl) : undefined;

  const draw = () => {
    const g = canvas.getContext("2d")!;
    g.clearRect(0, 0, canvas.width, canvas.height);
    const encoding = String(readScope(ctx, view, "obsColorEncoding") ?? "none");
    if (encoding === "geneSelection" && matrix && varIds.length) {
      const selection = (readScope(ctx, view, "featureSelection") as string[]) ?? [];
      const feature = selection[0];
      const col = feature ? varIds.indexOf(feature) : -1;
      const nVar = matrix.shape[1];
      points.forEach((p, i) => (p.value = col >= 0 ? Number(matrix!.data[i * nVar + col]) : 0));
    }
    const visible = readScope(ctx, view, "obsSetSelection");
    const colors = pointColors(points, {
      encoding: encoding as never,
      categories,
      visibleSets: Array.isArray(visible) ? new Set(visible as string[]) : undefined,
    });
    points.forEach((p, i) => {
      const [sx, sy] = worldToScreen(camera, p.x, p.y);
      g.fillStyle = rgbCss(colors[i], highlighted.size === 0 || highlighted.has(p.id) ? 1 : 0.25);
      g.beginPath();
      g.arc(sx, sy, 2.5, 0, Math.PI * 2);
      g.fill();
    });
    if (lassoActive) {
      const path = lasso.path();
      if (path.length > 1) {
        g.strokeStyle = "#333";
        g.setLineDash([4, 3]);
        g.beginPath();
        path.forEach((p, i) => {
          const [sx, sy] = worldToScreen(camera, p.x, p.y);
          if (i === 0) g.moveTo(sx, sy);
          else g.lineTo(sx, sy);
        });
        g.stroke();
        g.setLineDash([]);
      }
    }
  };

  canvas.addEventListener("wheel", (e) => {
    e.preventDefault();
    camera = zoomAbout(camera, e.deltaY < 0 ? 1.2 : 1 / 1.2, e.offsetX, e.offsetY);
    draw();
  });
  canvas.addEventListener("pointerdown", (e) => {
    if (e.shiftKey) return; // shift+drag pans
    lassoActive = true;
    canvas.setPointerCapture(e.pointerId);
  });
  canvas.addEventListener("pointermove", (e) => {
    if (lassoActive) {
      const [wx, wy] = [
        (e.offsetX - camera.viewportWidth / 2) / camera.zoom + camera.targetX,
        (e.offsetY - camera.viewportHeight / 2) / camera.zoom + camera.targetY,
      ];
      lasso.add({ x: wx, y: wy });
      draw();
    } else if (e.buttons === 1 && e.shiftKey) {
      camera = {
        ...camera,
        targetX: camera.targetX - e.movementX / camera.zoom,
        targetY: camera.targetY - e.movementY / camera.zoom,
      };
      draw();
    }
  });
  canvas.addEventListener("pointerup", () => {
    if (!lassoActive) return;
    lassoActive = false;
    void lasso.finish(points, poster).then((ids) => {
      highlighted = new Set(ids);
      draw();
    });
  });

  onScope(ctx, view, "featureSelection", draw);
  onScope(ctx, view, "obsColorEncoding", draw);
  onScope(ctx, view, "obsSetSelection", draw);
  draw();
  return el;
}

// -- spatial ---------------------------------------------------------------

async function mountSpatial(ctx: ViewContext, view: ViewDecl): Promise<HTMLElement> {
  const el = panel(view, "spatial");
  const canvas = canvasIn(el, view);
  const layers = (readScope(ctx, view, "spatialLayers") ?? []) as SpatialLayerDescriptor[];

  const pyramids = new Map<string, { store: AvcsStore; levels: number }>();
  const vectors = new Map<string, NdArray>();
  const labelArrays = new Map<string, NdArray>();
  let obsIds: string[] = [];
  let extentW = 1;
  let extentH = 1;

  for (const layer of layers) {
    if (layer.kind === "image") {
      const store = await openStore(ctx, `imagePyramid:${layer.element}`);
      if (!store) continue;
      const meta = store.attribute<{ levels: number; base_shape: number[] }>("pyramid");
      pyramids.set(layer.element, { store, levels: meta?.levels ?? 1 });
      if (meta) {
        extentW = Math.max(extentW, meta.base_shape[2]);
        extentH = Math.max(extentH, meta.base_shape[1]);
      }
    } else if (layer.kind === "shapes") {
      const store = await openStore(ctx, `circles:${layer.element}`);
      if (!store) continue;
      vectors.set(layer.element, await store.loadArray("circles"));
      obsIds = (store.attribute<string[]>("obs_ids") ?? obsIds).map(String);
    } else if (layer.kind === "points") {
      const store = await openStore(ctx, `points:${layer.element}`);
      if (!store) continue;
      vectors.set(layer.element, await store.loadArray("points"));
    } else {
      const store = await openStore(ctx, `labels:${layer.element}`);
      if (!store) continue;
      const mask = await store.loadArray("labels");
      labelArrays.set(layer.element, mask);
      extentW = Math.max(extentW, mask.shape[1]);
      extentH = Math.max(extentH, mask.shape[0]);
    }
  }

  const matrixStore = await openStore(ctx, "matrix");
  let featureValues: Float32Array | null = null;
  const loadFeatureValues = async () => {
    featureValues = null;
    const selection = (readScope(ctx, view, "featureSelection") as string[]) ?? [];
    if (!matrixStore || !selection.length) return;
    const varIds = (matrixStore.attribute<string[]>("var_ids") ?? []).map(String);
    const col = varIds.indexOf(selection[0]);
    if (col < 0) return;
    const nObs = matrixStore.manifest.arrays["X"].shape[0];
    const column = await matrixStore.loadArray("X", [
      [0, nObs],
      [col, col + 1],
    ]);
    featureValues = column.data as Float32Array;
  };

  let camera = fitCamera(extentW, extentH, canvas.width, canvas.height);
  const levelCanvases = new Map<string, HTMLCanvasElement>();

  const draw = async () => {
    const zoomScope = scopeOf(view, "spatialZoom");
    if (zoomScope !== undefined) {
      const stored = ctx.store.get("spatialZoom", zoomScope);
      if (typeof stored === "number" && stored > 0 && stored !== camera.zoom) {
        camera = { ...camera, zoom: stored };
      }
    }
    const g = canvas.getContext("2d")!;
    g.clearRect(0, 0, canvas.width, canvas.height);
    const currentLayers = (readScope(ctx, view, "spatialLayers") ??
      layers) as SpatialLayerDescriptor[];

    for (const layer of currentLayers) {
      if (!layer.visible) continue;
      g.globalAlpha = layer.opacity ?? 1;
      if (layer.kind === "image") {
        const pyramid = pyramids.get(layer.element);
        if (!pyramid) continue;
        const level = pyramidLevelForZoom(camera.zoom, pyramid.levels);
        const key = `${layer.element}/${level}`;
        let levelCanvas = levelCanvases.get(key);
        if (!levelCanvas) {
          levelCanvas = grayscaleImage(await pyramid.store.loadArray(`levels/${level}`));
          levelCanvases.set(key, levelCanvas);
        }
        const scale = camera.zoom * 2 ** level;
        const [ox, oy] = worldToScreen(camera, 0, 0);
        g.imageSmoothingEnabled = camera.zoom < 1;
        g.drawImage(levelCanvas, ox, oy, levelCanvas.width * scale, levelCanvas.height * scale);
      } else if (layer.kind === "shapes") {
        const circles = vectors.get(layer.element);
        if (!circles) continue;
        let scale: ((v: number) => [number, number, number]) | null = null;
        if (layer.color && featureValues) {
          let min = Infinity;
          let max = -Infinity;
          for (const v of featureValues) {
            if (v < min) min = v;
            if (v > max) max = v;
          }
          scale = continuousScale(min, max);
        }
        for (let i = 0; i < circles.shape[0]; i++) {
          const [sx, sy] = worldToScreen(camera, circles.data[i * 3], circles.data[i * 3 + 1]);
          const radius = Math.max(1, circles.data[i * 3 + 2] * camera.zoom);
          g.fillStyle =
            scale && featureValues ? rgbCss(scale(featureValues[i])) : "rgba(60,90,200,0.8)";
          g.beginPath();
          g.arc(sx, sy, radius, 0, Math.PI * 2);
          g.fill();
        }
      } else if (layer.kind === "points") {
        const pts = vectors.get(layer.element);
        if (!pts) continue;
        g.fillStyle = "rgba(20,20,20,0.9)";
        for (let i = 0; i < pts.shape[0]; i++) {
          const [sx, sy] = worldToScreen(camera, pts.data[i * 2], pts.data[i * 2 + 1]);
          g.fillRect(sx - 1, sy - 1, 2, 2);
        }
      } else {
        const mask = labelArrays.get(layer.element);
        if (!mask) continue;
        const [h, w] = mask.shape;
        for (let y = 0; y < h; y++) {
          for (let x = 0; x < w; x++) {
            const color = labelColor(Number(mask.data[y * w + x]));
            if (!color) continue; // id 0 is transparent background
            const [sx, sy] = worldToScreen(camera, x, y);
            g.fillStyle = rgbCss(color, 0.6);
            g.fillRect(sx, sy, Math.max(1, camera.zoom), Math.max(1, camera.zoom));
          }
        }
      }
      g.globalAlpha = 1;
    }
  };

  canvas.addEventListener("wheel", (e) => {
    e.preventDefault();
    camera = zoomAbout(camera, e.deltaY < 0 ? 1.2 : 1 / 1.2, e.offsetX, e.offsetY);
    const zoomScope = scopeOf(view, "spatialZoom");
    if (zoomScope !== undefined) ctx.store.set("spatialZoom", zoomScope, camera.zoom);
    const tx = scopeOf(view, "spatialTargetX");
    if (tx !== undefined) ctx.store.set("spatialTargetX", tx, camera.targetX);
    const ty = scopeOf(view, "spatialTargetY");
    if (ty !== undefined) ctx.store.set("spatialTargetY", ty, camera.targetY);
    void draw();
  });
  canvas.addEventListener("pointermove", (e) => {
    if (e.buttons === 1) {
      camera = {
        ...camera,
        targetX: camera.targetX - e.movementX / camera.zoom,
        targetY: camera.targetY - e.movementY / camera.zoom,
      };
      void draw();
    }
  });

  onScope(ctx, view, "spatialLayers", () => void draw());
  onScope(ctx, view, "spatialZoom", () => void draw());
  onScope(ctx, view, "featureSelection", () => void loadFeatureValues().then(draw));

  await loadFeatureValues();
  await draw();
  return el;
}

// -- dot plot -----------------------------------------------------------------

async function mountDotPlot(ctx: ViewContext, view: ViewDecl): Promise<HTMLElement> {
  const el = panel(view, "dot plot");
  const canvas = canvasIn(el, view);
  const matrixStore = await openStore(ctx, "matrix");
  const obsStore = await openStore(ctx, "obsColumn");
  if (!matrixStore || !obsStore) {
    el.appendChild(document.createTextNode("missing stores"));
    return el;
  }
  const matrix = await matrixStore.loadArray("X");
  const varIds = (matrixStore.attribute<string[]>("var_ids") ?? []).map(String);
  const codes = await obsStore.loadArray("codes");
  const categories = (obsStore.attribute<string[]>("labels") ?? []).map(String);

  const draw = () => {
    const selection = (readScope(ctx, view, "featureSelection") as string[]) ?? [];
    const features = selection.filter((f) => varIds.includes(f));
    const g = canvas.getContext("2d")!;
    g.clearRect(0, 0, canvas.width, canvas.height);
    if (!features.length) return;
    const stats = dotplotStats(matrix, varIds, codes.data as Int32Array, categories, features);
    const grid = dotplotGrid(stats, 28);
    const left = 70;
    const top = 28;
    g.font = "11px sans-serif";
    g.fillStyle = "#222";
    grid.rows.forEach((feature, i) => {
      g.fillText(feature, 4, top + i * grid.cellSize + grid.cellSize / 2 + 4);
    });
    grid.cols.forEach((group, j) => {
      g.fillText(group, left + j * grid.cellSize + grid.cellSize / 2 - 4, 16);
    });
    for (const cell of grid.cells) {
      const cx = left + cell.col * grid.cellSize + grid.cellSize / 2;
      const cy = top + cell.row * grid.cellSize + grid.cellSize / 2;
      if (cell.radius <= 0) continue; // fraction 0 draws nothing
      g.fillStyle = rgbCss(cell.color);
      g.beginPath();
      g.arc(cx, cy, cell.radius, 0, Math.PI * 2);
      g.fill();
    }
  };

  onScope(ctx, view, "featureSelection", draw);
  draw();
  return el;
}

// -- static summaries (heatmap, violin) ------------------------------------------

async function mountHeatmap(ctx: ViewContext, view: ViewDecl): Promise<HTMLElement> {
  const el = panel(view, "heatmap");
  const canvas = canvasIn(el, view);
  const g = canvas.getContext("2d")!;
  const files = filesByRole(ctx.config);
  let values: NdArray | null = null;
  if (files.has("aggregateMeans")) {
    const store = await openStore(ctx, "aggregateMeans");
    values = store ? await store.loadArray("means") : null;
  } else if (files.has("matrixSlice")) {
    const store = await openStore(ctx, "matrixSlice");
    values = store ? await store.loadArray("X") : null;
  }
  if (!values) return el;
  const [rows, cols] = values.shape;
  let min = Infinity;
  let max = -Infinity;
  for (const v of values.data as Float32Array) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  const scale = continuousScale(min, max);
  const cw = canvas.width / cols;
  const ch = canvas.height / rows;
  for (let r = 0; r < rows; r++) {
    for (let c = 0; c < cols; c++) {
      g.fillStyle = rgbCss(scale(Number(values.data[r * cols + c])));
      g.fillRect(c * cw, r * ch, Math.ceil(cw), Math.ceil(ch));
    }
  }
  return el;
}

async function mountViolin(ctx: ViewContext, view: ViewDecl): Promise<HTMLElement> {
  const el = panel(view, "violin");
  const canvas = canvasIn(el, view);
  const store = await openStore(ctx, "violinSummary");
  if (!store) return el;
  const features = (store.attribute<string[]>("features") ?? []).map(String);
  const groups = (store.attribute<string[]>("groups") ?? []).map(String);
  if (!features.length || !groups.length) return el;
  const summary = await store.loadArray(`summary/${features[0]}`);
  const g = canvas.getContext("2d")!;
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of summary.data as Float32Array) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  const span = hi > lo ? hi - lo : 1;
  const yFor = (v: number) => canvas.height - 20 - ((v - lo) / span) * (canvas.height - 40);
  const step = canvas.width / groups.length;
  g.font = "11px sans-serif";
  groups.forEach((group, i) => {
    const x = step * i + step / 2;
    const [mn, q1, med, q3, mx] = [0, 1, 2, 3, 4].map((k) => Number(summary.data[i * 5 + k]));
    g.strokeStyle = "#555";
    g.beginPath();
    g.moveTo(x, yFor(mn));
    g.lineTo(x, yFor(mx));
    g.stroke();
    g.fillStyle = "rgba(60,90,200,0.5)";
    g.fillRect(x - step * 0.2, yFor(q3), step * 0.4, Math.max(1, yFor(q1) - yFor(q3)));
    g.strokeStyle = "#111";
    g.beginPath();
    g.moveTo(x - step * 0.2, yFor(med));
    g.lineTo(x + step * 0.2, yFor(med));
    g.stroke();
    g.fillStyle = "#222";
    g.fillText(group, x - 8, canvas.height - 4);
  });
  return el;
}

// -- side panels ----------------------------------------------------------------

async function mountFeatureList(ctx: ViewContext, view: ViewDecl): Promise<HTMLElement> {
  const el = panel(view, "features");
  const store = (await openStore(ctx, "matrix")) ?? (await openStore(ctx, "matrixSlice"));
  const varIds = (store?.attribute<string[]>("var_ids") ?? []).map(String);
  const list = document.createElement("ul");
  list.className = "clickable-list";
  const scope = scopeOf(view, "featureSelection");
  const encodingScope = scopeOf(view, "obsColorEncoding");
  const refresh = () => {
    const selection = scope === undefined ? [] : ((ctx.store.get("featureSelection", scope) as string[]) ?? []);
    for (const item of list.children) {
      const li = item as HTMLLIElement;
      li.classList.toggle("selected", selection.includes(li.dataset.feature ?? ""));
    }
  };
  for (const feature of varIds) {
    const li = document.createElement("li");
    li.textContent = feature;
    li.dataset.feature = feature;
    li.addEventListener("click", () => {
      if (scope !== undefined) clickFeature(ctx.store, scope, feature, encodingScope);
    });
    list.appendChild(li);
  }
  el.appendChild(list);
  if (scope !== undefined) ctx.store.subscribe("featureSelection", scope, refresh);
  refresh();
  return el;
}

async function mountObsSetList(ctx: ViewContext, view: ViewDecl): Promise<HTMLElement> {
  const el = panel(view, "observation sets");
  const store = await openStore(ctx, "obsColumn");
  const labels = (store?.attribute<string[]>("labels") ?? []).map(String);
  const list = document.createElement("ul");
  list.className = "clickable-list";
  const scope = scopeOf(view, "obsSetSelection");
  for (const label of labels) {
    const li = document.createElement("li");
    li.textContent = label;
    li.classList.add("selected");
    li.addEventListener("click", () => {
      if (scope === undefined) return;
      const visible = toggleObsSet(ctx.store, scope, label, labels);
      li.classList.toggle("selected", visible.includes(label));
    });
    list.appendChild(li);
  }
  el.appendChild(list);
  return el;
}

async function mountLayerController(ctx: ViewContext, view: ViewDecl): Promise<HTMLElement> {
  const el = panel(view, "layers");
  const scope = scopeOf(view, "spatialLayers");
  const layers = (readScope(ctx, view, "spatialLayers") ?? []) as SpatialLayerDescriptor[];
  const list = document.createElement("ul");
  list.className = "clickable-list";
  for (const layer of layers) {
    const li = document.createElement("li");
    li.textContent = `${layer.kind}: ${layer.element}`;
    li.classList.toggle("selected", layer.visible);
    li.addEventListener("click", () => {
      if (scope === undefined) return;
      const next = toggleLayer(ctx.store, scope, layer.element);
      const mine = next.find((l) => l.element === layer.element);
      li.classList.toggle("selected", Boolean(mine?.visible));
    });
    list.appendChild(li);
  }
  el.appendChild(list);
  return el;
}

function mountPlaceholder(view: ViewDecl): HTMLElement {
  const el = panel(view, view.component);
  const note = document.createElement("div");
  note.className = "placeholder";
  note.textContent = `component "${view.component}" is not supported by this viewer`;
  el.appendChild(note);
  return el;
}

// -- entry ------------------------------------------------------------------------

export async function mountViewer(config: ViewConfig, container: HTMLElement): Promise<void> {
  const ctx: ViewContext = {
    config,
    store: CoordinationStore.fromConfig(config),
    stores: new Map(),
    selectionsUrl: selectionsUrlFor(config),
  };
  container.innerHTML = "";
  container.className = "viewer-grid";
  const title = document.createElement("h1");
  title.textContent = config.name;
  document.title = `${config.name} · plotmorph`;

  for (const view of config.layout) {
    let el: HTMLElement;
    switch (view.component) {
      case "scatterplot":
        el = await mountScatterplot(ctx, view);
        break;
      case "spatial":
        el = await mountSpatial(ctx, view);
        break;
      case "dotPlot":
        el = await mountDotPlot(ctx, view);
        break;
      case "heatmap":
        el = await mountHeatmap(ctx, view);
        break;
      case "violin":
        el = await mountViolin(ctx, view);
        break;
      case "featureList":
        el = await mountFeatureList(ctx, view);
        break;
      case "obsSetList":
        el = await mountObsSetList(ctx, view);
        break;
      case "layerController":
        el = await mountLayerController(ctx, view);
        break;
      default:
        el = mountPlaceholder(view);
    }
    container.appendChild(el);
  }
}

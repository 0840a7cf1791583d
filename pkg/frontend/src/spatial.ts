/**
 * Spatial view math: pyramid level selection for the current zoom and the
 * world-to-screen transform shared by image, circle, point, and label layers.
 */

/**
 * Pick the pyramid level to draw at a given zoom (screen pixels per level-0
 * pixel): level = clamp(floor(log2(1 / zoom)), 0, levels - 1).
 */
export function pyramidLevelForZoom(zoom: number, levels: number): number {
  if (!(zoom > 0) || levels < 1) {
    return 0;
  }
  const raw = Math.floor(Math.log2(1 / zoom));
  return Math.min(Math.max(raw, 0), levels - 1);
}

export interface Camera {
  /** screen pixels per level-0 data pixel */
  zoom: number;
  /** data coordinates at the viewport center */
  targetX: number;
  targetY: number;
  viewportWidth: number;
  viewportHeight: number;
}

export function worldToScreen(camera: Camera, x: number, y: number): [number, number] {
  return [
    (x - camera.targetX) * camera.zoom + camera.viewportWidth / 2,
    (y - camera.targetY) * camera.zoom + camera.viewportHeight / 2,
  ];
}

export function screenToWorld(camera: Camera, sx: number, sy: number): [number, number] {
  return [
    (sx - camera.viewportWidth / 2) / camera.zoom + camera.targetX,
    (sy - camera.viewportHeight / 2) / camera.zoom + camera.targetY,
  ];
}

/** Fit a (width x height) extent into the viewport with a small margin. */
export function fitCamera(
  width: number,
  height: number,
  viewportWidth: number,
  viewportHeight: number,
): Camera {
  const zoom = Math.min(viewportWidth / width, viewportHeight / height) * 0.95;
  return {
    zoom: zoom > 0 ? zoom : 1,
    targetX: width / 2,
    targetY: height / 2,
    viewportWidth,
    viewportHeight,
  };
}

/** Zoom about a fixed screen point (wheel zoom), returning the new camera. */
export function zoomAbout(camera: Camera, factor: number, sx: number, sy: number): Camera {
  const [wx, wy] = screenToWorld(camera, sx, sy);
  const zoom = Math.min(64, Math.max(1 / 4096, camera.zoom * factor));
  const targetX = wx - (sx - camera.viewportWidth / 2) / zoom;
  const targetY = wy - (sy - camera.viewportHeight / 2) / zoom;
  return { ...camera, zoom, targetX, targetY };
}

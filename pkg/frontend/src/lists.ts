/**
 * Interaction handlers for the side-panel views. Each writes into the
 * coordination store; bound views re-render from the shared scope values.
 */
import { CoordinationStore } from "./coordination.js";
import type { SpatialLayerDescriptor } from "./types.js";

/** Clicking a feature selects exactly that feature. */
export function clickFeature(
  store: CoordinationStore,
  scope: string,
  feature: string,
  encodingScope?: string,
): void {
  store.set("featureSelection", scope, [feature]);
  if (encodingScope !== undefined) {
    store.set("obsColorEncoding", encodingScope, "geneSelection");
  }
}

/**
 * Toggle one observation set's visibility. The scope holds the list of
 * visible set names (null/undefined = all visible).
 */
export function toggleObsSet(
  store: CoordinationStore,
  scope: string,
  setName: string,
  allSets: string[],
): string[] {
  const current = store.get("obsSetSelection", scope);
  const visible = new Set(Array.isArray(current) ? (current as string[]) : allSets);
  if (visible.has(setName)) {
    visible.delete(setName);
  } else {
    visible.add(setName);
  }
  const next = allSets.filter((name) => visible.has(name));
  store.set("obsSetSelection", scope, next);
  return next;
}

/** Flip one layer's visibility inside the spatialLayers scope value. */
export function toggleLayer(
  store: CoordinationStore,
  scope: string,
  element: string,
): SpatialLayerDescriptor[] {
  const current = (store.get("spatialLayers", scope) ?? []) as SpatialLayerDescriptor[];
  const next = current.map((layer) =>
    layer.element === element ? { ...layer, visible: !layer.visible } : layer,
  );
  store.set("spatialLayers", scope, next);
  return next;
}

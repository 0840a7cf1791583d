/**
 * Scatterplot model: embedding points colored by categorical sets or by the
 * selected feature's expression, with lasso selection over data coordinates.
 * A completed lasso highlights the enclosed cells and posts their ids to the
 * selection endpoint so the kernel can pick them up.
 */
import { categoricalColor, continuousScale, desaturate, Rgb } from "./colormap.js";
import { lassoSelect, Point, Polygon } from "./geometry.js";

export interface ScatterPoint extends Point {
  id: string;
  /** categorical code, when set coloring is active */
  code?: number;
  /** expression value, when feature coloring is active */
  value?: number;
}

export type SelectionPoster = (ids: string[]) => Promise<void>;

export interface ColorOptions {
  encoding: "cellSetSelection" | "geneSelection" | "none";
  categories?: string[];
  /** names of currently visible sets; others render desaturated */
  visibleSets?: Set<string>;
}

const NEUTRAL: Rgb = [120, 120, 120];

export function pointColors(points: ScatterPoint[], options: ColorOptions): Rgb[] {
  if (options.encoding === "geneSelection") {
    const values = points.map((p) => p.value ?? 0);
    const scale = continuousScale(Math.min(...values), Math.max(...values));
    return values.map(scale);
  }
  if (options.encoding === "cellSetSelection" && options.categories) {
    return points.map((p) => {
      if (p.code === undefined) return NEUTRAL;
      const color = categoricalColor(p.code);
      const name = options.categories![p.code];
      if (options.visibleSets && !options.visibleSets.has(name)) {
        return desaturate(color);
      }
      return color;
    });
  }
  return points.map(() => NEUTRAL);
}

export class LassoSession {
  private polygon: Polygon = [];

  add(point: Point): void {
    this.polygon.push({ ...point });
  }

  path(): Polygon {
    return [...this.polygon];
  }

  /**
   * Close the polygon and select enclosed points. A degenerate lasso
   * (fewer than 3 vertices) selects nothing and posts nothing; otherwise
   * the selected ids are posted (even when the subset is empty, so the
   * kernel sees deselection).
   */
  async finish(points: ScatterPoint[], post?: SelectionPoster): Promise<string[]> {
    const polygon = this.polygon;
    this.polygon = [];
    if (polygon.length < 3) {
      return [];
    }
    const ids = lassoSelect(points, polygon).map((p) => p.id);
    if (post) {
      await post(ids);
    }
    return ids;
  }
}

export function makeSelectionPoster(
  selectionsUrl: string,
  fetchImpl: typeof fetch = fetch,
): SelectionPoster {
  return async (ids: string[]) => {
    const response = await fetchImpl(selectionsUrl, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(ids),
    });
    if (!response.ok && response.status !== 204) {
      throw new Error(`selection POST failed: ${response.status}`);
    }
  };
}

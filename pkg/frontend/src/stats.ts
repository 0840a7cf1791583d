/**
 * Client-side grouped expression summaries for the dot plot, computed live
 * from fetched matrix chunks. Semantics mirror the kernel: "expressing"
 * means strictly greater than the threshold, means include zeros, empty
 * groups are omitted.
 */
import type { NdArray } from "./avcs.js";

export interface DotPlotStats {
  groups: string[];
  features: string[];
  /** row-major (groups x features) */
  fraction: Float64Array;
  mean: Float64Array;
  counts: Int32Array;
}

export function dotplotStats(
  matrix: NdArray,
  varIds: string[],
  codes: Int32Array | number[],
  categories: string[],
  features: string[],
  threshold = 0,
): DotPlotStats {
  const [nObs, nVar] = matrix.shape;
  const cols = features.map((f) => {
    const j = varIds.indexOf(f);
    if (j < 0) throw new Error(`unknown feature ${JSON.stringify(f)}`);
    return j;
  });
  const nCats = categories.length;
  const sums = new Float64Array(nCats * features.length);
  const expressing = new Float64Array(nCats * features.length);
  const sizes = new Int32Array(nCats);
  for (let i = 0; i < nObs; i++) {
    const g = codes[i];
    sizes[g] += 1;
    for (let fi = 0; fi < cols.length; fi++) {
      const value = matrix.data[i * nVar + cols[fi]];
      sums[g * features.length + fi] += value;
      if (value > threshold) expressing[g * features.length + fi] += 1;
    }
  }
  const keep: number[] = [];
  for (let g = 0; g < nCats; g++) {
    if (sizes[g] > 0) keep.push(g);
  }
  const fraction = new Float64Array(keep.length * features.length);
  const mean = new Float64Array(keep.length * features.length);
  const counts = new Int32Array(keep.length);
  keep.forEach((g, row) => {
    counts[row] = sizes[g];
    for (let fi = 0; fi < features.length; fi++) {
      fraction[row * features.length + fi] =
        expressing[g * features.length + fi] / sizes[g];
      mean[row * features.length + fi] = sums[g * features.length + fi] / sizes[g];
    }
  });
  return {
    groups: keep.map((g) => categories[g]),
    features: [...features],
    fraction,
    mean,
    counts,
  };
}

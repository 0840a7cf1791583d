/**
 * Dot plot geometry: genes as rows, groups as columns (transposed relative
 * to the host's static orientation). Dot radius grows linearly with the
 * fraction expressing; dot color encodes the mean on a plasma scale whose
 * domain spans the whole table.
 */
import { continuousScale, Rgb } from "./colormap.js";
import type { DotPlotStats } from "./stats.js";

export interface DotCell {
  row: number; // gene index
  col: number; // group index
  feature: string;
  group: string;
  fraction: number;
  mean: number;
  radius: number;
  color: Rgb;
}

export interface DotGrid {
  rows: string[]; // features
  cols: string[]; // groups
  cellSize: number;
  cells: DotCell[];
}

/** fraction 0 -> radius 0; fraction 1 -> the cell-max radius. */
export function dotRadius(fraction: number, cellSize: number): number {
  const clamped = Math.min(1, Math.max(0, fraction));
  return clamped * (cellSize / 2);
}

export function dotplotGrid(stats: DotPlotStats, cellSize = 28): DotGrid {
  const means = Array.from(stats.mean);
  const min = means.length ? Math.min(...means) : 0;
  const max = means.length ? Math.max(...means) : 0;
  const scale = continuousScale(min, max);
  const cells: DotCell[] = [];
  const nFeatures = stats.features.length;
  for (let fi = 0; fi < nFeatures; fi++) {
    for (let gi = 0; gi < stats.groups.length; gi++) {
      const fraction = stats.fraction[gi * nFeatures + fi];
      const mean = stats.mean[gi * nFeatures + fi];
      cells.push({
        row: fi,
        col: gi,
        feature: stats.features[fi],
        group: stats.groups[gi],
        fraction,
        mean,
        radius: dotRadius(fraction, cellSize),
        color: scale(mean),
      });
    }
  }
  return { rows: [...stats.features], cols: [...stats.groups], cellSize, cells };
}

import { beforeAll, describe, expect, it } from "vitest";

import { AvcsStore } from "../src/avcs.js";
import { plasma } from "../src/colormap.js";
import { dotplotGrid, dotRadius } from "../src/dotplot.js";
import { dotplotStats, DotPlotStats } from "../src/stats.js";
import { diskFetcher, Fixture, makeFixture } from "./helpers/fixture.js";

let fixture: Fixture;
let stats: DotPlotStats;

beforeAll(async () => {
  fixture = makeFixture();
  const store = await AvcsStore.open("matrix/manifest.json", diskFetcher(fixture.dir));
  const matrix = await store.loadArray("X");
  const codes = await store.loadArray("codes");
  stats = dotplotStats(
    matrix,
    store.attribute<string[]>("var_ids")!,
    codes.data as Int32Array,
    store.attribute<string[]>("labels")!,
    fixture.expected.dotplot.features,
  );
});

describe("client dotplot stats", () => {
  it("matches the kernel-computed table within 1e-9", () => {
    const expected = fixture.expected.dotplot;
    expect(stats.groups).toEqual(expected.groups);
    const nF = stats.features.length;
    expected.groups.forEach((_, g) => {
      expected.features.forEach((_, f) => {
        expect(Math.abs(stats.fraction[g * nF + f] - expected.fraction[g][f])).toBeLessThan(1e-9);
        expect(Math.abs(stats.mean[g * nF + f] - expected.mean[g][f])).toBeLessThan(1e-9);
      });
    });
  });
});

describe("dot plot grid", () => {
  it("grid dimensions are genes x groups (genes as rows)", () => {
    const grid = dotplotGrid(stats);
    expect(grid.rows).toEqual(fixture.expected.dotplot.features);
    expect(grid.cols).toEqual(fixture.expected.dotplot.groups);
    expect(grid.cells).toHaveLength(grid.rows.length * grid.cols.length);
  });

  it("radius is linear in the fraction: 0 -> 0, 1 -> cell max", () => {
    expect(dotRadius(0, 28)).toBe(0);
    expect(dotRadius(1, 28)).toBe(14);
    expect(dotRadius(0.5, 28)).toBeCloseTo(7, 12);
    expect(dotRadius(-0.5, 28)).toBe(0);
    expect(dotRadius(2, 28)).toBe(14);
  });

  it("color domain spans the table; extremes map to the LUT ends", () => {
    const grid = dotplotGrid(stats);
    const means = grid.cells.map((c) => c.mean);
    const min = Math.min(...means);
    const max = Math.max(...means);
    const minCell = grid.cells.find((c) => c.mean === min)!;
    const maxCell = grid.cells.find((c) => c.mean === max)!;
    expect(minCell.color).toEqual(plasma(0));
    expect(maxCell.color).toEqual(plasma(1));
  });

  it("all-equal means render a single color", () => {
    const degenerate: DotPlotStats = {
      groups: ["a", "b"],
      features: ["g"],
      fraction: new Float64Array([0.5, 0.5]),
      mean: new Float64Array([3, 3]),
      counts: new Int32Array([2, 2]),
    };
    const grid = dotplotGrid(degenerate);
    expect(grid.cells[0].color).toEqual(grid.cells[1].color);
    expect(grid.cells[0].color).toEqual(plasma(0.5));
  });
});

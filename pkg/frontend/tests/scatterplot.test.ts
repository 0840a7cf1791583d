import { describe, expect, it } from "vitest";

import { categoricalColor, desaturate, plasma } from "../src/colormap.js";
import {
  LassoSession,
  makeSelectionPoster,
  pointColors,
  ScatterPoint,
} from "../src/scatterplot.js";

function gridPoints(): ScatterPoint[] {
  const points: ScatterPoint[] = [];
  for (let y = 0; y < 3; y++) {
    for (let x = 0; x < 3; x++) {
      points.push({ id: `cell_${y * 3 + x}`, x, y });
    }
  }
  return points;
}

describe("lasso selection", () => {
  it("posts exactly the 4 ids inside a square around the lower-left 2x2", async () => {
    const lasso = new LassoSession();
    for (const vertex of [
      { x: -0.5, y: -0.5 },
      { x: 1.5, y: -0.5 },
      { x: 1.5, y: 1.5 },
      { x: -0.5, y: 1.5 },
    ]) {
      lasso.add(vertex);
    }
    const posted: string[][] = [];
    const ids = await lasso.finish(gridPoints(), async (sel) => {
      posted.push(sel);
    });
    expect(ids.sort()).toEqual(["cell_0", "cell_1", "cell_3", "cell_4"]);
    expect(posted).toHaveLength(1);
    expect([...posted[0]].sort()).toEqual(["cell_0", "cell_1", "cell_3", "cell_4"]);
  });

  it("degenerate lasso selects nothing and never posts", async () => {
    const lasso = new LassoSession();
    lasso.add({ x: 0, y: 0 });
    lasso.add({ x: 1, y: 1 });
    let posts = 0;
    const ids = await lasso.finish(gridPoints(), async () => {
      posts += 1;
    });
    expect(ids).toEqual([]);
    expect(posts).toBe(0);
  });

  it("clears its path after finishing", async () => {
    const lasso = new LassoSession();
    lasso.add({ x: -1, y: -1 });
    lasso.add({ x: 9, y: -1 });
    lasso.add({ x: 9, y: 9 });
    await lasso.finish(gridPoints());
    expect(lasso.path()).toEqual([]);
  });

  it("posts through the wire format the selection endpoint expects", async () => {
    const calls: { url: string; body: string; method: string }[] = [];
    const fakeFetch = (async (url: string, init?: RequestInit) => {
      calls.push({
        url: String(url),
        body: String(init?.body),
        method: init?.method ?? "GET",
      });
      return { ok: true, status: 204 } as Response;
    }) as typeof fetch;
    const poster = makeSelectionPoster("http://127.0.0.1:9/api/selections/m0", fakeFetch);
    await poster(["cell_1", "cell_9"]);
    expect(calls).toEqual([
      {
        url: "http://127.0.0.1:9/api/selections/m0",
        body: '["cell_1","cell_9"]',
        method: "POST",
      },
    ]);
  });
});

describe("point coloring", () => {
  it("feature coloring maps values onto the continuous scale", () => {
    const points: ScatterPoint[] = [
      { id: "a", x: 0, y: 0, value: 0 },
      { id: "b", x: 1, y: 0, value: 5 },
      { id: "c", x: 2, y: 0, value: 10 },
    ];
    const colors = pointColors(points, { encoding: "geneSelection" });
    expect(colors[0]).toEqual(plasma(0));
    expect(colors[1]).toEqual(plasma(0.5));
    expect(colors[2]).toEqual(plasma(1));
  });

  it("set coloring uses categorical colors and desaturates hidden sets", () => {
    const points: ScatterPoint[] = [
      { id: "a", x: 0, y: 0, code: 0 },
      { id: "b", x: 1, y: 0, code: 1 },
    ];
    const all = pointColors(points, {
      encoding: "cellSetSelection",
      categories: ["s0", "s1"],
    });
    expect(all[0]).toEqual(categoricalColor(0));
    expect(all[1]).toEqual(categoricalColor(1));

    const oneHidden = pointColors(points, {
      encoding: "cellSetSelection",
      categories: ["s0", "s1"],
      visibleSets: new Set(["s0"]),
    });
    expect(oneHidden[0]).toEqual(categoricalColor(0));
    expect(oneHidden[1]).toEqual(desaturate(categoricalColor(1)));
  });
});

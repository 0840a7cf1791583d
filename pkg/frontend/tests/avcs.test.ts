import { beforeAll, describe, expect, it } from "vitest";

import { AvcsStore, chunkGrid } from "../src/avcs.js";
import { diskFetcher, Fixture, makeFixture, sha256Of } from "./helpers/fixture.js";

let fixture: Fixture;
let matrix: AvcsStore;
let pyramid: AvcsStore;

beforeAll(async () => {
  fixture = makeFixture();
  const fetcher = diskFetcher(fixture.dir);
  matrix = await AvcsStore.open("matrix/manifest.json", fetcher);
  pyramid = await AvcsStore.open("pyramid/manifest.json", fetcher);
});

describe("AvcsStore", () => {
  it("reads the manifest", () => {
    expect(matrix.manifest.format_version).toBe("0.1.0");
    expect(matrix.arrayPaths().sort()).toEqual(["X", "codes", "embedding"]);
    expect(chunkGrid(matrix.manifest.arrays["X"])).toEqual([3, 1]);
    expect(matrix.attribute<string[]>("labels")).toEqual(["0", "1", "2"]);
  });

  it("reassembles arrays identical to the kernel loader (checksums)", async () => {
    const x = await matrix.loadArray("X");
    expect(x.shape).toEqual(fixture.expected.matrix["X"].shape);
    expect(sha256Of(x.data)).toBe(fixture.expected.matrix["X"].sha256);

    const embedding = await matrix.loadArray("embedding");
    expect(sha256Of(embedding.data)).toBe(fixture.expected.matrix["embedding"].sha256);

    const codes = await matrix.loadArray("codes");
    expect(codes.data).toBeInstanceOf(Int32Array);
    expect(sha256Of(codes.data)).toBe(fixture.expected.matrix["codes"].sha256);
  });

  it("region reads cross chunk boundaries correctly", async () => {
    const region = await matrix.loadArray("X", [
      [120, 130],
      [0, 7],
    ]);
    expect(region.shape).toEqual([10, 7]);
    expect(sha256Of(region.data)).toBe(
      fixture.expected.matrix["X_region_120_130"].sha256,
    );
    const expectedValues = fixture.expected.matrix["X_region_120_130"].values!;
    expect(Array.from(region.data)).toEqual(
      expectedValues.map((v) => Math.fround(v)),
    );
  });

  it("region reads touch only covering chunks", async () => {
    const touched: string[] = [];
    const spy = diskFetcher(fixture.dir);
    const counting = async (url: string) => {
      if (url.endsWith(".bin")) touched.push(url);
      return spy(url);
    };
    const store = await AvcsStore.open("matrix/manifest.json", counting);
    await store.loadArray("X", [
      [60, 90],
      [0, 7],
    ]);
    // rows 60..90 live entirely in the middle 50-row chunk
    expect(touched).toEqual(["matrix/X/c1_0.bin"]);
  });

  it("loads every pyramid level bit-identically", async () => {
    const meta = pyramid.attribute<{ levels: number }>("pyramid");
    expect(meta?.levels).toBe(3);
    for (let k = 0; k < 3; k++) {
      const level = await pyramid.loadArray(`levels/${k}`);
      expect(level.shape).toEqual(fixture.expected.pyramid.levels[k].shape);
      expect(sha256Of(level.data)).toBe(fixture.expected.pyramid.levels[k].sha256);
    }
  });

  it("rejects unknown paths, bad regions, and truncated chunks", async () => {
    await expect(matrix.loadArray("nope")).rejects.toThrow(/no array/);
    await expect(
      matrix.loadArray("X", [
        [0, 999],
        [0, 7],
      ]),
    ).rejects.toThrow(/out of bounds/);

    const truncating = async (url: string) => {
      const buffer = await diskFetcher(fixture.dir)(url);
      return url.endsWith(".bin") ? buffer.slice(0, buffer.byteLength - 4) : buffer;
    };
    const store = await AvcsStore.open("matrix/manifest.json", truncating);
    await expect(store.loadArray("codes")).rejects.toThrow(/corrupt chunk/);
  });

  it("empty regions come back empty without fetching", async () => {
    const region = await matrix.loadArray("X", [
      [10, 10],
      [0, 7],
    ]);
    expect(region.shape).toEqual([0, 7]);
    expect(region.data).toHaveLength(0);
  });
});

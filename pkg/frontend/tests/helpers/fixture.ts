/** Shared-fixture plumbing: generate stores with the kernel package and read
 * them back from disk through the injectable fetcher. */
import { execFileSync } from "node:child_process";
import { createHash } from "node:crypto";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { Fetcher, TypedArray } from "../../src/avcs.js";

const HERE = dirname(fileURLToPath(import.meta.url));

export interface FixtureExpected {
  matrix: Record<string, { shape?: number[]; sha256: string; values?: number[] }>;
  pyramid: { levels: { shape: number[]; sha256: string }[] };
  dotplot: {
    features: string[];
    groups: string[];
    fraction: number[][];
    mean: number[][];
  };
}

export interface Fixture {
  dir: string;
  expected: FixtureExpected;
}

let cached: Fixture | null = null;

export function makeFixture(): Fixture {
  if (cached) return cached;
  const dir = mkdtempSync(join(tmpdir(), "plotmorph-fixture-"));
  execFileSync("python3", [join(HERE, "make_store_fixture.py"), dir], {
    stdio: ["ignore", "pipe", "inherit"],
  });
  const expected = JSON.parse(
    readFileSync(join(dir, "expected.json"), "utf-8"),
  ) as FixtureExpected;
  cached = { dir, expected };
  return cached;
}

/** Fetcher that resolves file-like urls against the local filesystem. */
export function diskFetcher(root: string): Fetcher {
  return async (url: string) => {
    const buffer = readFileSync(join(root, url));
    return buffer.buffer.slice(
      buffer.byteOffset,
      buffer.byteOffset + buffer.byteLength,
    ) as ArrayBuffer;
  };
}

export function sha256Of(data: TypedArray): string {
  return createHash("sha256")
    .update(new Uint8Array(data.buffer, data.byteOffset, data.byteLength))
    .digest("hex");
}

/**
 * Chunked-store client: reads the JSON manifest and reassembles arrays from
 * raw little-endian chunk files, mirroring the kernel-side layout bit for
 * bit. The fetcher is injectable so tests can serve from memory or disk.
 */
import type { ArraySpec, DtypeName, StoreManifest } from "./types.js";

export type Fetcher = (url: string) => Promise<ArrayBuffer>;

export type TypedArray = Float32Array | Int32Array | Uint16Array | Uint8Array;

export interface NdArray {
  shape: number[];
  dtype: DtypeName;
  data: TypedArray;
}

const DTYPE_CTORS = {
  f32: Float32Array,
  i32: Int32Array,
  u16: Uint16Array,
  u8: Uint8Array,
} as const;

export const defaultFetcher: Fetcher = async (url) => {
  const response = await fetch(url);
  if (!response.ok) {
    throw new Error(`GET ${url} failed: ${response.status}`);
  }
  return response.arrayBuffer();
};

export function chunkFileName(index: number[]): string {
  return `c${index.join("_")}.bin`;
}

export function chunkGrid(spec: ArraySpec): number[] {
  return spec.shape.map((s, d) => Math.ceil(s / spec.chunk_shape[d]));
}

function product(values: number[]): number {
  return values.reduce((a, b) => a * b, 1);
}

function* gridIndices(grid: number[]): Generator<number[]> {
  if (grid.some((g) => g === 0)) return;
  const index = grid.map(() => 0);
  while (true) {
    yield [...index];
    let d = grid.length - 1;
    while (d >= 0) {
      index[d] += 1;
      if (index[d] < grid[d]) break;
      index[d] = 0;
      d -= 1;
    }
    if (d < 0) return;
  }
}

/** Row-major flat offset of `coords` inside an array with `shape`. */
export function flatOffset(coords: number[], shape: number[]): number {
  let offset = 0;
  for (let d = 0; d < shape.length; d++) {
    offset = offset * shape[d] + coords[d];
  }
  return offset;
}

export class AvcsStore {
  constructor(
    readonly baseUrl: string,
    readonly manifest: StoreManifest,
    private fetcher: Fetcher = defaultFetcher,
  ) {}

  /** Open a store given the url of its manifest.json. */
  static async open(manifestUrl: string, fetcher: Fetcher = defaultFetcher): Promise<AvcsStore> {
    const buffer = await fetcher(manifestUrl);
    const manifest = JSON.parse(new TextDecoder().decode(buffer)) as StoreManifest;
    const baseUrl = manifestUrl.replace(/manifest\.json$/, "");
    return new AvcsStore(baseUrl, manifest, fetcher);
  }

  attribute<T = unknown>(path: string): T | undefined {
    return this.manifest.attributes[path] as T | undefined;
  }

  arrayPaths(): string[] {
    return Object.keys(this.manifest.arrays);
  }

  /**
   * Reassemble one array, or a rectangular region of it given as
   * [start, stop) pairs per dimension. Only covering chunks are fetched.
   */
  async loadArray(path: string, region?: [number, number][]): Promise<NdArray> {
    const spec = this.manifest.arrays[path];
    if (!spec) {
      throw new Error(`no array ${JSON.stringify(path)} in store`);
    }
    const { shape, chunk_shape: chunkShape, dtype } = spec;
    const bounds = region ?? shape.map((s) => [0, s] as [number, number]);
    if (bounds.length !== shape.length) {
      throw new Error("region rank mismatch");
    }
    bounds.forEach(([a, b], d) => {
      if (!(0 <= a && a <= b && b <= shape[d])) {
        throw new Error(`region out of bounds in dim ${d}`);
      }
    });
    const outShape = bounds.map(([a, b]) => b - a);
    const ctor = DTYPE_CTORS[dtype];
    const out = new ctor(product(outShape));
    if (out.length === 0) {
      return { shape: outShape, dtype, data: out };
    }

    const firstChunk = bounds.map(([a], d) => Math.floor(a / chunkShape[d]));
    const covering = bounds.map(
      ([, b], d) => Math.floor((b - 1) / chunkShape[d]) - firstChunk[d] + 1,
    );

    for (const offsetIndex of gridIndices(covering)) {
      const chunkIndex = offsetIndex.map((o, d) => firstChunk[d] + o);
      const chunkStart = chunkIndex.map((i, d) => i * chunkShape[d]);
      const chunkStop = chunkIndex.map((i, d) =>
        Math.min((i + 1) * chunkShape[d], shape[d]),
      );
      const extent = chunkStop.map((stop, d) => stop - chunkStart[d]);
      const buffer = await this.fetcher(
        `${this.baseUrl}${path}/${chunkFileName(chunkIndex)}`,
      );
      const expected = product(extent) * ctor.BYTES_PER_ELEMENT;
      if (buffer.byteLength !== expected) {
        throw new Error(
          `corrupt chunk ${path}/${chunkFileName(chunkIndex)}: ` +
            `expected ${expected} bytes, got ${buffer.byteLength}`,
        );
      }
      const block = new ctor(buffer);

      // intersection of chunk with the requested region, copied in
      // contiguous last-dimension runs
      const lo = bounds.map(([a], d) => Math.max(a, chunkStart[d]));
      const hi = bounds.map(([, b], d) => Math.min(b, chunkStop[d]));
      const span = lo.map((l, d) => hi[d] - l);
      const last = span.length - 1;
      const runLength = span[last];
      // gridIndices([]) yields one empty coord, covering the 1-D case
      for (const coord of gridIndices(span.slice(0, last))) {
        const blockCoord = [...coord.map((c, d) => lo[d] + c - chunkStart[d]), lo[last] - chunkStart[last]];
        const outCoord = [...coord.map((c, d) => lo[d] + c - bounds[d][0]), lo[last] - bounds[last][0]];
        const src = flatOffset(blockCoord, extent);
        out.set(
          block.subarray(src, src + runLength) as never,
          flatOffset(outCoord, outShape),
        );
      }
    }
    return { shape: outShape, dtype, data: out };
  }
}

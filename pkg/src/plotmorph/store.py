"""Chunked on-disk array container ("AVCS") plus image pyramid generation.

Layout, bit-exact by contract:

    <dir>/manifest.json                     UTF-8 JSON manifest
    <dir>/<array path>/c<i0>_<i1>[_...].bin raw C-order little-endian chunks

Edge chunks are truncated to the actual extent; there is no compression.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
from scipy import sparse

from .data import AnnotatedMatrix, Categorical
from .errors import CorruptChunk, OverwriteError, UnknownPath

FORMAT_VERSION = "0.1.0"
MANIFEST_NAME = "manifest.json"

DTYPES = {
    "f32": np.dtype("<f4"),
    "i32": np.dtype("<i4"),
    "u16": np.dtype("<u2"),
    "u8": np.dtype("u1"),
}

ROW_CHUNK = 1000
TILE = 256
MAX_PYRAMID_POOLINGS = 8


@dataclass
class ArraySpec:
    shape: list[int]
    dtype: str
    chunk_shape: list[int]
    order: str = "C"

    def chunk_grid(self) -> list[int]:
        return [math.ceil(s / c) for s, c in zip(self.shape, self.chunk_shape)]

    def n_chunks(self) -> int:
        return int(np.prod(self.chunk_grid())) if all(self.shape) else 0


@dataclass
class StoreManifest:
    arrays: dict[str, ArraySpec] = field(default_factory=dict)
    attributes: dict[str, Any] = field(default_factory=dict)
    format_version: str = FORMAT_VERSION

    def to_document(self) -> dict:
        return {
            "format_version": self.format_version,
            "arrays": {
                path: {
                    "shape": spec.shape,
                    "dtype": spec.dtype,
                    "chunk_shape": spec.chunk_shape,
                    "order": spec.order,
                }
                for path, spec in self.arrays.items()
            },
            "attributes": self.attributes,
        }

    @classmethod
    def from_document(cls, doc: dict) -> "StoreManifest":
        return cls(
            arrays={
                path: ArraySpec(
                    shape=list(raw["shape"]),
                    dtype=raw["dtype"],
                    chunk_shape=list(raw["chunk_shape"]),
                    order=raw.get("order", "C"),
                )
                for path, raw in doc["arrays"].items()
            },
            attributes=doc.get("attributes", {}),
            format_version=doc.get("format_version", FORMAT_VERSION),
        )

    def save(self, directory: Path) -> None:
        text = json.dumps(self.to_document(), indent=2, ensure_ascii=False)
        (directory / MANIFEST_NAME).write_text(text, encoding="utf-8")

    @classmethod
    def load(cls, directory) -> "StoreManifest":
        path = Path(directory) / MANIFEST_NAME
        return cls.from_document(json.loads(path.read_text(encoding="utf-8")))


def _dtype_name(dtype: np.dtype) -> str:
    for name, dt in DTYPES.items():
        if dt == dtype.newbyteorder("<"):
            return name
    raise ValueError(f"unsupported dtype {dtype}")


def _chunk_slices(index, chunk_shape, shape):
    return tuple(
        slice(i * c, min((i + 1) * c, s))
        for i, c, s in zip(index, chunk_shape, shape)
    )


def chunk_file_name(index: Sequence[int]) -> str:
    return "c" + "_".join(str(i) for i in index) + ".bin"


class StoreBuilder:
    """Accumulates arrays and attributes, then writes one AVCS store."""

    def __init__(self, directory, overwrite: bool = False):
        self.directory = Path(directory)
        if (self.directory / MANIFEST_NAME).exists() and not overwrite:
            raise OverwriteError(f"{self.directory} already holds a store")
        self.manifest = StoreManifest()

    def add_array(self, path: str, array, dtype: str, chunk_shape=None) -> None:
        """Write one array's chunk files. ``array`` may be dense or CSR;
        CSR blocks are densified per chunk."""
        dt = DTYPES[dtype]
        shape = list(array.shape)
        if chunk_shape is None:
            chunk_shape = shape
        # zero-extent dims keep a chunk of 1 so the grid math stays defined
        chunk_shape = [
            max(1, min(int(c), s)) if s > 0 else 1
            for c, s in zip(chunk_shape, shape)
        ]
        spec = ArraySpec(shape=shape, dtype=dtype, chunk_shape=chunk_shape)
        self.manifest.arrays[path] = spec
        array_dir = self.directory / path
        array_dir.mkdir(parents=True, exist_ok=True)
        if spec.n_chunks() == 0:
            return
        for index in itertools.product(*(range(n) for n in spec.chunk_grid())):
            block = array[_chunk_slices(index, chunk_shape, shape)]
            if sparse.issparse(block):
                block = block.toarray()
            block = np.ascontiguousarray(np.asarray(block), dtype=dt)
            (array_dir / chunk_file_name(index)).write_bytes(block.tobytes(order="C"))

    def set_attribute(self, path: str, value: Any) -> None:
        self.manifest.attributes[path] = value

    def finish(self) -> StoreManifest:
        self.directory.mkdir(parents=True, exist_ok=True)
        self.manifest.save(self.directory)
        return self.manifest


# -- exporters ------------------------------------------------------------------


def export_matrix(am: AnnotatedMatrix, directory, overwrite: bool = False) -> StoreManifest:
    """Write X (row-chunked), every embedding, categorical obs columns
    (codes as arrays, labels as attributes), and obs/var ids."""
    b = StoreBuilder(directory, overwrite=overwrite)
    row_chunk = min(am.n_obs, ROW_CHUNK)
    b.add_array("X", am.X, "f32", (row_chunk, am.n_var))
    for name, emb in am.embeddings.items():
        b.add_array(f"embeddings/{name}", emb, "f32", (row_chunk, emb.shape[1]))
    for name, col in am.obs_columns.items():
        if isinstance(col, Categorical):
            b.add_array(f"obs/{name}", col.codes, "i32", (row_chunk,))
            b.set_attribute(f"obs/{name}", {"labels": col.categories})
    b.set_attribute("obs_ids", am.obs_ids)
    b.set_attribute("var_ids", am.var_ids)
    return b.finish()


def pool2x2(level: np.ndarray) -> np.ndarray:
    """Mean-pool a (c, y, x) array over 2x2 blocks; odd edges pool the
    remaining 1x2 / 2x1 / 1x1 block."""
    c, y, x = level.shape
    out_y, out_x = (y + 1) // 2, (x + 1) // 2
    acc = np.zeros((c, out_y, out_x), dtype=np.float64)
    count = np.zeros((out_y, out_x), dtype=np.float64)
    for dy in (0, 1):
        for dx in (0, 1):
            sub = level[:, dy::2, dx::2]
            acc[:, : sub.shape[1], : sub.shape[2]] += sub
            count[: sub.shape[1], : sub.shape[2]] += 1
    return acc / count


def build_pyramid(image: np.ndarray, min_dim: int = 512) -> list[np.ndarray]:
    """Level 0 is the input (as float32); each next level halves both spatial
    dims (ceil) by mean pooling, stopping once max(y, x) <= min_dim or after
    MAX_PYRAMID_POOLINGS halvings."""
    image = np.asarray(image)
    if image.ndim != 3:
        raise ValueError("image must be (c, y, x)")
    levels = [np.ascontiguousarray(image, dtype=np.float32)]
    while (
        max(levels[-1].shape[1:]) > min_dim
        and len(levels) <= MAX_PYRAMID_POOLINGS
    ):
        levels.append(pool2x2(levels[-1].astype(np.float64)).astype(np.float32))
    return levels


def export_image_pyramid(
    image: np.ndarray, directory, min_dim: int = 512, overwrite: bool = False
) -> StoreManifest:
    levels = build_pyramid(image, min_dim=min_dim)
    b = StoreBuilder(directory, overwrite=overwrite)
    for k, level in enumerate(levels):
        _, y, x = level.shape
        b.add_array(f"levels/{k}", level, "f32", (1, min(y, TILE), min(x, TILE)))
    b.set_attribute(
        "pyramid",
        {"levels": len(levels), "base_shape": list(levels[0].shape)},
    )
    return b.finish()


def export_circles(
    circles: np.ndarray, directory, ids: Optional[list[str]] = None, overwrite: bool = False
) -> StoreManifest:
    circles = np.asarray(circles, dtype=np.float32)
    b = StoreBuilder(directory, overwrite=overwrite)
    b.add_array("circles", circles, "f32", (min(len(circles), ROW_CHUNK), 3))
    if ids is not None:
        b.set_attribute("obs_ids", list(ids))
    return b.finish()


def export_points(
    points: np.ndarray, directory, ids: Optional[list[str]] = None, overwrite: bool = False
) -> StoreManifest:
    points = np.asarray(points, dtype=np.float32)
    b = StoreBuilder(directory, overwrite=overwrite)
    b.add_array("points", points, "f32", (min(len(points), ROW_CHUNK), 2))
    if ids is not None:
        b.set_attribute("obs_ids", list(ids))
    return b.finish()


def export_labels(
    mask: np.ndarray, directory, names: Optional[dict] = None, overwrite: bool = False
) -> StoreManifest:
    mask = np.asarray(mask, dtype=np.int32)
    y, x = mask.shape
    b = StoreBuilder(directory, overwrite=overwrite)
    b.add_array("labels", mask, "i32", (min(y, TILE), min(x, TILE)))
    if names is not None:
        b.set_attribute("label_names", names)
    return b.finish()


# -- loading ---------------------------------------------------------------------


def load_manifest(directory) -> StoreManifest:
    return StoreManifest.load(directory)


def load_array(directory, path: str, region=None) -> np.ndarray:
    """Reassemble an array (or a rectangular region of it) from its chunks.

    ``region`` is an optional per-dimension sequence of (start, stop) pairs;
    only chunks overlapping the region are read.
    """
    directory = Path(directory)
    manifest = StoreManifest.load(directory)
    if path not in manifest.arrays:
        raise UnknownPath(f"no array {path!r} in {directory}")
    spec = manifest.arrays[path]
    dt = DTYPES[spec.dtype]
    shape, chunk_shape = spec.shape, spec.chunk_shape

    if region is None:
        region = [(0, s) for s in shape]
    region = [(int(a), int(b)) for a, b in region]
    if len(region) != len(shape):
        raise ValueError("region rank mismatch")
    for (a, bnd), s in zip(region, shape):
        if not (0 <= a <= bnd <= s):
            raise ValueError(f"region {region} out of bounds for shape {shape}")

    out_shape = [b - a for a, b in region]
    out = np.empty(out_shape, dtype=dt)
    if 0 in out_shape:
        return out

    covering = [
        range(a // c, (b - 1) // c + 1) for (a, b), c in zip(region, chunk_shape)
    ]
    for index in itertools.product(*covering):
        slices = _chunk_slices(index, chunk_shape, shape)
        extent = [s.stop - s.start for s in slices]
        file = directory / path / chunk_file_name(index)
        expected = int(np.prod(extent)) * dt.itemsize
        if not file.exists():
            raise CorruptChunk(f"missing chunk file {file}")
        raw = file.read_bytes()
        if len(raw) != expected:
            raise CorruptChunk(
                f"{file}: expected {expected} bytes, found {len(raw)}"
            )
        block = np.frombuffer(raw, dtype=dt).reshape(extent)
        # intersection of this chunk with the requested region
        out_slices, block_slices = [], []
        for (a, b), s in zip(region, slices):
            lo, hi = max(a, s.start), min(b, s.stop)
            out_slices.append(slice(lo - a, hi - a))
            block_slices.append(slice(lo - s.start, hi - s.start))
        out[tuple(out_slices)] = block[tuple(block_slices)]
    return out

"""In-memory data containers: annotated expression matrices and spatial elements.

These are deliberately small, dependency-light stand-ins for the host
ecosystem's containers. The matrix may be dense (ndarray) or sparse CSR;
all statistics and exports treat the two identically.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

import numpy as np
from scipy import sparse

MatrixLike = Union[np.ndarray, sparse.csr_matrix]


@dataclass
class Categorical:
    """Integer-coded categorical column: ``codes[i]`` indexes ``categories``."""

    codes: np.ndarray
    categories: list[str]

    def __post_init__(self):
        self.codes = np.asarray(self.codes, dtype=np.int32)
        self.categories = [str(c) for c in self.categories]
        if self.codes.ndim != 1:
            raise ValueError("categorical codes must be 1-D")
        if self.codes.size and (self.codes.min() < 0 or self.codes.max() >= len(self.categories)):
            raise ValueError("categorical codes out of range")

    def __len__(self):
        return self.codes.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, Categorical)
            and self.categories == other.categories
            and np.array_equal(self.codes, other.codes)
        )


Column = Union[Categorical, np.ndarray]


@dataclass
class AnnotatedMatrix:
    """Observations x features expression values plus per-obs annotations.

    X is float32, dense or CSR. ``obs_columns`` maps names to either a
    :class:`Categorical` or a 1-D numeric array; ``embeddings`` maps names
    (e.g. ``"X_pca"``) to per-observation coordinate arrays.
    """

    X: MatrixLike
    obs_ids: list[str]
    var_ids: list[str]
    obs_columns: dict[str, Column] = field(default_factory=dict)
    embeddings: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if sparse.issparse(self.X):
            self.X = sparse.csr_matrix(self.X, dtype=np.float32)
            self.X.sort_indices()
        else:
            self.X = np.asarray(self.X, dtype=np.float32)
            if self.X.ndim != 2:
                raise ValueError("X must be 2-D")
        self.obs_ids = [str(i) for i in self.obs_ids]
        self.var_ids = [str(i) for i in self.var_ids]
        n_obs, n_var = self.X.shape
        if len(self.obs_ids) != n_obs:
            raise ValueError(f"obs_ids length {len(self.obs_ids)} != n_obs {n_obs}")
        if len(self.var_ids) != n_var:
            raise ValueError(f"var_ids length {len(self.var_ids)} != n_var {n_var}")
        if len(set(self.obs_ids)) != n_obs:
            raise ValueError("obs_ids must be unique")
        if len(set(self.var_ids)) != n_var:
            raise ValueError("var_ids must be unique")
        for name, col in self.obs_columns.items():
            if isinstance(col, Categorical):
                if len(col) != n_obs:
                    raise ValueError(f"obs column {name!r} length mismatch")
            else:
                arr = np.asarray(col)
                if arr.shape != (n_obs,):
                    raise ValueError(f"obs column {name!r} must be 1-D of length n_obs")
                self.obs_columns[name] = arr
        for name, emb in self.embeddings.items():
            emb = np.asarray(emb, dtype=np.float32)
            if emb.ndim != 2 or emb.shape[0] != n_obs:
                raise ValueError(f"embedding {name!r} must be n_obs x d")
            self.embeddings[name] = emb

    @property
    def n_obs(self) -> int:
        return self.X.shape[0]

    @property
    def n_var(self) -> int:
        return self.X.shape[1]

    # -- lookups ---------------------------------------------------------

    def has_obs_column(self, name: str) -> bool:
        return name in self.obs_columns

    def is_categorical(self, name: str) -> bool:
        return isinstance(self.obs_columns.get(name), Categorical)

    def has_feature(self, feature_id: str) -> bool:
        return feature_id in self._var_index()

    def feature_index(self, feature_id: str) -> int:
        try:
            return self._var_index()[feature_id]
        except KeyError:
            raise KeyError(feature_id) from None

    def _var_index(self) -> Mapping[str, int]:
        idx = getattr(self, "_var_index_cache", None)
        if idx is None:
            idx = {v: i for i, v in enumerate(self.var_ids)}
            object.__setattr__(self, "_var_index_cache", idx)
        return idx

    def feature_values(self, feature_id: str) -> np.ndarray:
        """Dense (n_obs,) float32 column for one feature."""
        j = self.feature_index(feature_id)
        col = self.X[:, [j]]
        if sparse.issparse(col):
            col = col.toarray()
        return np.asarray(col, dtype=np.float32).ravel()

    def dense_X(self) -> np.ndarray:
        if sparse.issparse(self.X):
            return self.X.toarray()
        return self.X


@dataclass
class SpatialElements:
    """Named spatial elements of one sample plus the linked expression table.

    images: channel-first ``(c, y, x)`` arrays; circles: ``(n, 3)`` columns
    ``x, y, radius``; points: ``(n, 2)``; labels: integer ``(y, x)`` masks
    with 0 meaning background.
    """

    images: dict[str, np.ndarray] = field(default_factory=dict)
    circles: dict[str, np.ndarray] = field(default_factory=dict)
    points: dict[str, np.ndarray] = field(default_factory=dict)
    labels: dict[str, np.ndarray] = field(default_factory=dict)
    table: Optional[AnnotatedMatrix] = None

    def __post_init__(self):
        for name, img in self.images.items():
            img = np.asarray(img)
            if img.ndim != 3:
                raise ValueError(f"image {name!r} must be (c, y, x)")
            self.images[name] = img
        for name, circ in self.circles.items():
            circ = np.asarray(circ, dtype=np.float32)
            if circ.ndim != 2 or circ.shape[1] != 3:
                raise ValueError(f"circles {name!r} must be (n, 3)")
            self.circles[name] = circ
        for name, pts in self.points.items():
            pts = np.asarray(pts, dtype=np.float32)
            if pts.ndim != 2 or pts.shape[1] != 2:
                raise ValueError(f"points {name!r} must be (n, 2)")
            self.points[name] = pts
        for name, mask in self.labels.items():
            mask = np.asarray(mask, dtype=np.int32)
            if mask.ndim != 2:
                raise ValueError(f"labels {name!r} must be (y, x)")
            self.labels[name] = mask

    def element_names(self, kind: str) -> Sequence[str]:
        return list(getattr(self, kind).keys())

"""Grouped expression summaries backing dot plot, heatmap, and violin views.

All functions are pure over read-only inputs. Means always include zeros
(arithmetic mean over every cell of the group); "expressing" means strictly
greater than the threshold. Groups with no members are omitted.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .data import AnnotatedMatrix, Categorical
from .errors import UnknownFeature, UnknownGroupColumn

__all__ = [
    "AnnotatedMatrix",
    "DotPlotStats",
    "FiveNumberSummary",
    "AggregateMeans",
    "dotplot_stats",
    "group_summary",
    "aggregate_means",
]


@dataclass
class DotPlotStats:
    """Per (group, feature) fraction of expressing cells and mean expression.

    ``fraction_expressing`` and ``mean_expression`` are (n_groups, n_features)
    float64 arrays aligned with ``groups`` x ``features``.
    """

    groups: list[str]
    features: list[str]
    fraction_expressing: np.ndarray
    mean_expression: np.ndarray

    def entry(self, group: str, feature: str) -> dict[str, float]:
        g = self.groups.index(group)
        f = self.features.index(feature)
        return {
            "fraction_expressing": float(self.fraction_expressing[g, f]),
            "mean_expression": float(self.mean_expression[g, f]),
        }


@dataclass
class FiveNumberSummary:
    min: float
    q1: float
    median: float
    q3: float
    max: float
    n: int


@dataclass
class AggregateMeans:
    groups: list[str]
    features: list[str]
    means: np.ndarray


def _categorical(am: AnnotatedMatrix, group_col: str) -> Categorical:
    col = am.obs_columns.get(group_col)
    if not isinstance(col, Categorical):
        raise UnknownGroupColumn(
            f"{group_col!r} is not a categorical observation column"
        )
    return col


def _feature_indices(am: AnnotatedMatrix, features: list[str]) -> list[int]:
    if not features:
        raise UnknownFeature("empty feature selection")
    missing = [f for f in features if not am.has_feature(f)]
    if missing:
        raise UnknownFeature(f"unknown feature(s): {', '.join(missing)}")
    return [am.feature_index(f) for f in features]


def _nonempty_groups(cat: Categorical) -> list[tuple[int, str, np.ndarray]]:
    """(code, label, row mask) for every group with at least one member,
    in category-label declaration order."""
    out = []
    for code, label in enumerate(cat.categories):
        mask = cat.codes == code
        if mask.any():
            out.append((code, label, mask))
    return out


def _group_sums_and_counts(am, cat, cols):
    """Per nonempty group: sum, count-above-zero-threshold placeholder and size.

    Returns (labels, sums GxF, positive counts GxF float64, sizes G) using a
    single pass over the column-sliced matrix.
    """
    sub = am.X[:, cols]
    if sparse.issparse(sub):
        sub = sub.toarray()
    sub = np.asarray(sub, dtype=np.float64)
    labels, sums, sizes, blocks = [], [], [], []
    for _, label, mask in _nonempty_groups(cat):
        block = sub[mask]
        labels.append(label)
        sums.append(block.sum(axis=0))
        sizes.append(block.shape[0])
        blocks.append(block)
    return labels, np.vstack(sums), np.asarray(sizes, dtype=np.int64), blocks


def dotplot_stats(
    am: AnnotatedMatrix,
    group_col: str,
    features: list[str],
    threshold: float = 0.0,
) -> DotPlotStats:
    """Fraction of cells with value > threshold and mean over all group cells."""
    cat = _categorical(am, group_col)
    cols = _feature_indices(am, features)
    labels, sums, sizes, blocks = _group_sums_and_counts(am, cat, cols)
    fraction = np.vstack(
        [(b > threshold).sum(axis=0) / b.shape[0] for b in blocks]
    ).astype(np.float64)
    means = sums / sizes[:, None]
    return DotPlotStats(
        groups=labels,
        features=list(features),
        fraction_expressing=fraction,
        mean_expression=means,
    )


def group_summary(
    am: AnnotatedMatrix, group_col: str, feature: str
) -> dict[str, FiveNumberSummary]:
    """Five-number summary per group; quantiles use linear interpolation
    between order statistics (position = (n-1) * p)."""
    cat = _categorical(am, group_col)
    values = am.feature_values(feature) if am.has_feature(feature) else None
    if values is None:
        raise UnknownFeature(f"unknown feature: {feature!r}")
    values = values.astype(np.float64)
    out: dict[str, FiveNumberSummary] = {}
    for _, label, mask in _nonempty_groups(cat):
        v = values[mask]
        q = np.quantile(v, [0.0, 0.25, 0.5, 0.75, 1.0], method="linear")
        out[label] = FiveNumberSummary(
            min=float(q[0]),
            q1=float(q[1]),
            median=float(q[2]),
            q3=float(q[3]),
            max=float(q[4]),
            n=int(v.size),
        )
    return out


def aggregate_means(
    am: AnnotatedMatrix, group_col: str, features: list[str]
) -> AggregateMeans:
    """Groups x features mean matrix, rows in category-label order."""
    cat = _categorical(am, group_col)
    cols = _feature_indices(am, features)
    labels, sums, sizes, _ = _group_sums_and_counts(am, cat, cols)
    return AggregateMeans(
        groups=labels, features=list(features), means=sums / sizes[:, None]
    )

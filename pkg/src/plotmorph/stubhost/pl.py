"""Matrix plotting namespace of the stub host (scatter/embedding/grid plots).

Signatures mirror the host library shapes closely enough for interception
tests; the static implementations just record the call.
"""
from __future__ import annotations

from . import StaticPlot


def _static(function, /, **params):
    return StaticPlot(function, {k: v for k, v in params.items() if v is not None})


def embedding(adata, basis=None, color=None, ncols=1, **kwds):
    return _static("embedding", basis=basis, color=color, ncols=ncols, **kwds)


def pca(adata, color=None, **kwds):
    return _static("pca", color=color, **kwds)


def umap(adata, color=None, **kwds):
    return _static("umap", color=color, **kwds)


def tsne(adata, color=None, **kwds):
    return _static("tsne", color=color, **kwds)


def scatter(adata, x=None, y=None, color=None, **kwds):
    return _static("scatter", x=x, y=y, color=color, **kwds)


def spatial(adata, color=None, **kwds):
    return _static("spatial", color=color, **kwds)


def dotplot(adata, var_names=None, groupby=None, **kwds):
    return _static("dotplot", var_names=var_names, groupby=groupby, **kwds)


def heatmap(adata, var_names=None, groupby=None, **kwds):
    return _static("heatmap", var_names=var_names, groupby=groupby, **kwds)


def violin(adata, keys=None, groupby=None, **kwds):
    return _static("violin", keys=keys, groupby=groupby, **kwds)


def dendrogram(adata, groupby=None, **kwds):
    # intentionally unsupported by the interactive path
    return _static("dendrogram", groupby=groupby, **kwds)

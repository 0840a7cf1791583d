"""Notebook/environment integration: turn a translation into a served,
displayable interactive plot, or export its config for use elsewhere."""
from __future__ import annotations

import sys
import tempfile
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional, Union
from urllib.parse import quote, urlsplit

import numpy as np

from . import serve, store
from .data import AnnotatedMatrix, Categorical, SpatialElements
from .errors import InvalidConfig, InvalidOverride, UnknownBasis
from .stats import aggregate_means, group_summary
from .translate import ExportItem, TranslationResult, store_name_for
from .viewmodel import ViewConfig, deserialize, serialize, validate

DataSource = Union[AnnotatedMatrix, SpatialElements]

DEFAULT_FRAME = (900, 600)


class Environment(Enum):
    NOTEBOOK = "notebook"
    PLAIN = "plain"


@dataclass
class InteractivePlotHandle:
    """Return value of every patched plotting call on the interactive path."""

    result: TranslationResult
    mount_uid: str
    config_url: str
    viewer_url: str

    def _repr_html_(self):
        return _iframe_html(self.viewer_url, *DEFAULT_FRAME)

    def __repr__(self):
        return f"InteractivePlotHandle({self.viewer_url})"


def _iframe_html(url: str, width: int, height: int) -> str:
    return (
        f'<iframe src="{url}" width="{width}" height="{height}" '
        f'frameborder="0" allowfullscreen></iframe>'
    )


def detect_environment(shell=None) -> Environment:
    """NOTEBOOK when an interactive display hook is present; ``shell`` is
    injectable for tests (an object with or without a ``kernel``)."""
    if shell is None:
        if "marimo" in sys.modules:
            try:
                if sys.modules["marimo"].running_in_notebook():
                    return Environment.NOTEBOOK
            except Exception:
                pass
        try:
            from IPython import get_ipython
        except ImportError:
            return Environment.PLAIN
        shell = get_ipython()
    if shell is None:
        return Environment.PLAIN
    if getattr(shell, "kernel", None) is not None:
        return Environment.NOTEBOOK
    return Environment.PLAIN


# -- export-plan execution -----------------------------------------------------


def _table_of(data: DataSource) -> AnnotatedMatrix:
    if isinstance(data, AnnotatedMatrix):
        return data
    if data.table is None:
        raise ValueError("spatial elements carry no linked table")
    return data.table


def _write_item(item: ExportItem, data: DataSource, directory: Path) -> None:
    role = item.role
    if role == "matrix":
        am = _table_of(data)
        b = store.StoreBuilder(directory)
        b.add_array("X", am.X, "f32", (min(am.n_obs, store.ROW_CHUNK), am.n_var))
        b.set_attribute("obs_ids", am.obs_ids)
        b.set_attribute("var_ids", am.var_ids)
        b.finish()
    elif role == "embedding":
        am = _table_of(data)
        if item.source not in am.embeddings:
            raise UnknownBasis(f"no embedding named {item.source!r}")
        emb = am.embeddings[item.source]
        b = store.StoreBuilder(directory)
        b.add_array(
            "embedding", emb, "f32", (min(len(emb), store.ROW_CHUNK), emb.shape[1])
        )
        b.set_attribute("obs_ids", am.obs_ids)
        b.finish()
    elif role == "synthetic_embedding":
        am = _table_of(data)
        cols = [np.asarray(am.obs_columns[k], dtype=np.float32) for k in
                (item.params["x"], item.params["y"])]
        emb = np.stack(cols, axis=1)
        b = store.StoreBuilder(directory)
        b.add_array(
            "embedding", emb, "f32", (min(len(emb), store.ROW_CHUNK), 2)
        )
        b.set_attribute("obs_ids", am.obs_ids)
        b.finish()
    elif role == "obs_column":
        am = _table_of(data)
        col = am.obs_columns[item.source]
        b = store.StoreBuilder(directory)
        if isinstance(col, Categorical):
            b.add_array("codes", col.codes, "i32", (min(len(col), store.ROW_CHUNK),))
            b.set_attribute("labels", col.categories)
        else:
            values = np.asarray(col, dtype=np.float32)
            b.add_array("values", values, "f32", (min(len(values), store.ROW_CHUNK),))
        b.set_attribute("obs_ids", am.obs_ids)
        b.finish()
    elif role == "matrix_slice":
        am = _table_of(data)
        features = item.params["features"]
        cols = [am.feature_index(f) for f in features]
        sub = am.X[:, cols]
        b = store.StoreBuilder(directory)
        b.add_array("X", sub, "f32", (min(am.n_obs, store.ROW_CHUNK), len(cols)))
        b.set_attribute("obs_ids", am.obs_ids)
        b.set_attribute("var_ids", features)
        b.finish()
    elif role == "aggregate_means":
        am = _table_of(data)
        agg = aggregate_means(am, item.source, item.params["features"])
        b = store.StoreBuilder(directory)
        b.add_array("means", agg.means.astype(np.float32), "f32")
        b.set_attribute("groups", agg.groups)
        b.set_attribute("features", agg.features)
        b.finish()
    elif role == "violin_summary":
        am = _table_of(data)
        features = item.params["features"]
        b = store.StoreBuilder(directory)
        groups: list[str] = []
        for feature in features:
            summary = group_summary(am, item.source, feature)
            groups = list(summary.keys())
            table = np.array(
                [
                    [s.min, s.q1, s.median, s.q3, s.max]
                    for s in summary.values()
                ],
                dtype=np.float32,
            )
            b.add_array(f"summary/{feature}", table, "f32")
        if groups:
            counts = np.array(
                [
                    group_summary(am, item.source, features[0])[g].n
                    for g in groups
                ],
                dtype=np.int32,
            )
            b.add_array("counts", counts, "i32")
        b.set_attribute("groups", groups)
        b.set_attribute("features", features)
        b.finish()
    elif role == "image_pyramid":
        elements: SpatialElements = data
        store.export_image_pyramid(elements.images[item.source], directory)
    elif role == "circles":
        elements = data
        circles = elements.circles[item.source]
        ids = None
        if elements.table is not None and elements.table.n_obs == len(circles):
            ids = elements.table.obs_ids
        store.export_circles(circles, directory, ids=ids)
    elif role == "points":
        elements = data
        store.export_points(elements.points[item.source], directory)
    elif role == "labels":
        elements = data
        store.export_labels(elements.labels[item.source], directory)
    else:
        raise ValueError(f"unknown export role {role!r}")


def execute_export_plan(result: TranslationResult, data: DataSource, root) -> None:
    root = Path(root)
    for item in result.export_plan:
        _write_item(item, data, root / store_name_for(item))


# -- url rewriting ----------------------------------------------------------------


def rewrite_urls(cfg: ViewConfig, prefix: str) -> ViewConfig:
    """Return a deep copy of ``cfg`` with every relative file url joined onto
    ``prefix`` (which must end with "/")."""
    out = deserialize(serialize(cfg))
    for ds in out.datasets:
        for f in ds.files:
            f.url = prefix + f.url
    return out


def substitute_base(cfg: ViewConfig, old_base: str, new_base: str) -> ViewConfig:
    out = deserialize(serialize(cfg))
    for ds in out.datasets:
        for f in ds.files:
            if f.url.startswith(old_base):
                f.url = new_base + f.url[len(old_base):]
    return out


# -- main entry points ---------------------------------------------------------------


def materialize(result: TranslationResult, data: DataSource) -> InteractivePlotHandle:
    """Execute the export plan into a fresh served directory and return a
    handle whose config_url serves the rewritten, validated config."""
    serve.start()
    root = Path(tempfile.mkdtemp(prefix="plotmorph-"))
    execute_export_plan(result, data, root)
    prefix = serve.register_dir(root)
    mount_uid = prefix.rstrip("/").rsplit("/", 1)[-1]
    served = rewrite_urls(result.config, prefix)
    violations = validate(served)
    if violations:
        raise InvalidConfig("; ".join(violations))
    (root / "config.json").write_text(serialize(served), encoding="utf-8")
    config_url = prefix + "config.json"
    viewer_url = (
        f"{serve.base_url()}/viewer/index.html?config={quote(config_url, safe='')}"
    )
    return InteractivePlotHandle(
        result=result,
        mount_uid=mount_uid,
        config_url=config_url,
        viewer_url=viewer_url,
    )


def display(
    handle: InteractivePlotHandle,
    width: int = DEFAULT_FRAME[0],
    height: int = DEFAULT_FRAME[1],
    environment: Optional[Environment] = None,
) -> str:
    """In a notebook, show and return an inline frame; otherwise return the
    viewer url as plain text."""
    env = environment or detect_environment()
    if env is Environment.NOTEBOOK:
        html = _iframe_html(handle.viewer_url, width, height)
        try:
            from IPython.display import IFrame, display as ipy_display

            ipy_display(IFrame(handle.viewer_url, width, height))
        except ImportError:
            pass
        return html
    return handle.viewer_url


def served_config(handle: InteractivePlotHandle) -> ViewConfig:
    prefix = handle.config_url[: -len("config.json")]
    return rewrite_urls(handle.result.config, prefix)


def export_config(
    handle: InteractivePlotHandle,
    path,
    base_url_override: Optional[str] = None,
) -> str:
    """Write the handle's config; with an override, every file url has the
    local base url replaced by the override prefix."""
    cfg = served_config(handle)
    if base_url_override is not None:
        split = urlsplit(base_url_override)
        if split.scheme not in ("http", "https") or not split.netloc:
            raise InvalidOverride(
                f"{base_url_override!r} is not an absolute http(s) url"
            )
        local = urlsplit(handle.config_url)
        local_base = f"{local.scheme}://{local.netloc}"
        cfg = substitute_base(cfg, local_base, base_url_override.rstrip("/"))
    violations = validate(cfg)
    if violations:
        raise InvalidConfig("; ".join(violations))
    path = Path(path)
    path.write_text(serialize(cfg), encoding="utf-8")
    return str(path)

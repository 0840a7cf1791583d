"""Compile intercepted plot calls into view configs plus export plans.

Each supported plotting function maps to a translator producing a
:class:`TranslationResult`; anything the interactive path cannot express
falls back to the original static function (``PASS_THROUGH``).
"""
from __future__ import annotations

import hashlib
import re
import warnings
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

from .data import AnnotatedMatrix, SpatialElements
from .errors import (
    AmbiguousColor,
    EmptyStack,
    InvalidLayerOrder,
    UnknownBasis,
    UnknownFeature,
    UnknownGroupColumn,
    UnsupportedArgumentWarning,
)
from .viewmodel import (
    ComponentKind,
    CoordinationType,
    DatasetFile,
    FileKind,
    ViewConfig,
    add_dataset,
    add_view,
    link_views,
    validate,
)


class _PassThrough:
    """Sentinel: run the original static function instead."""

    def __repr__(self):
        return "PASS_THROUGH"


PASS_THROUGH = _PassThrough()

UPPERCASE_BASES = ("pca", "umap", "tsne")

# spatial element kinds
IMAGE = "image"
SHAPES = "shapes"
POINTS = "points"
LABELS = "labels"


@dataclass
class PlotCall:
    function: str
    data_handle: Any
    args: dict[str, Any] = field(default_factory=dict)


@dataclass
class ExportItem:
    """One array bundle to write at materialization time."""

    role: str
    source: str = ""
    params: dict[str, Any] = field(default_factory=dict)


@dataclass
class TranslationResult:
    config: ViewConfig
    export_plan: list[ExportItem]
    warnings: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    kind: str  # "matrix" | "spatial"
    params: tuple[str, ...]
    required: tuple[str, ...] = ()


REGISTRY: dict[str, RegistryEntry] = {
    e.name: e
    for e in (
        RegistryEntry("embedding", "matrix", ("basis", "color"), ("basis",)),
        RegistryEntry("pca", "matrix", ("color",)),
        RegistryEntry("umap", "matrix", ("color",)),
        RegistryEntry("tsne", "matrix", ("color",)),
        RegistryEntry("scatter", "matrix", ("x", "y", "color"), ("x", "y")),
        RegistryEntry("spatial", "matrix", ("color",)),
        RegistryEntry("dotplot", "matrix", ("var_names", "groupby"), ("var_names", "groupby")),
        RegistryEntry("heatmap", "matrix", ("var_names", "groupby"), ("var_names",)),
        RegistryEntry("violin", "matrix", ("keys", "groupby"), ("keys", "groupby")),
        RegistryEntry("render_images", "spatial", ("element", "opacity")),
        RegistryEntry("render_shapes", "spatial", ("element", "color", "palette", "opacity")),
        RegistryEntry("render_points", "spatial", ("element", "color", "palette", "opacity")),
        RegistryEntry("render_labels", "spatial", ("element", "palette", "opacity")),
    )
}

RENDER_KINDS = {
    "render_images": IMAGE,
    "render_shapes": SHAPES,
    "render_points": POINTS,
    "render_labels": LABELS,
}


def registry_names() -> list[str]:
    return list(REGISTRY.keys())


def unsupported_args(function: str, args: Mapping[str, Any]) -> list[str]:
    """Argument names this function's interactive path cannot honor
    (unknown names, plus required ones that are absent or None)."""
    entry = REGISTRY[function]
    bad = sorted(set(args) - set(entry.params))
    bad += [p for p in entry.required if args.get(p) is None and p not in bad]
    return bad


def dispatch(call: PlotCall):
    """Translate a plot call, or decide it must run the original function.

    Unregistered functions pass through silently; registered ones with
    unsupported arguments (or a foreign data handle) pass through with one
    warning. A registered spatial render call dispatched directly is treated
    as a single-layer plot shown immediately.
    """
    entry = REGISTRY.get(call.function)
    if entry is None:
        return PASS_THROUGH
    bad = unsupported_args(call.function, call.args)
    if bad:
        warnings.warn(
            UnsupportedArgumentWarning(
                f"{call.function}: falling back to the static plot "
                f"(unsupported argument(s): {', '.join(bad)})"
            ),
            stacklevel=2,
        )
        return PASS_THROUGH
    args = {k: v for k, v in call.args.items() if v is not None}

    if entry.kind == "matrix":
        if not isinstance(call.data_handle, AnnotatedMatrix):
            warnings.warn(
                UnsupportedArgumentWarning(
                    f"{call.function}: falling back to the static plot "
                    f"(unsupported data argument)"
                ),
                stacklevel=2,
            )
            return PASS_THROUGH
        return _MATRIX_TRANSLATORS[call.function](call.data_handle, args)

    handle = call.data_handle
    if isinstance(handle, SpatialLayerStack):
        stack = handle
    elif isinstance(handle, SpatialElements):
        stack = SpatialLayerStack(handle)
    else:
        warnings.warn(
            UnsupportedArgumentWarning(
                f"{call.function}: falling back to the static plot "
                f"(unsupported data argument)"
            ),
            stacklevel=2,
        )
        return PASS_THROUGH
    element = args.pop("element", None)
    stack = push_spatial_layer(stack, RENDER_KINDS[call.function], element, args)
    return translate_spatial_show(stack)


# -- store naming ------------------------------------------------------------


def _sanitize(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", name)


def _short(name: str) -> str:
    if len(name) <= 40:
        return name
    digest = hashlib.sha1(name.encode("utf-8")).hexdigest()[:8]
    return f"{name[:24]}-{digest}"


def store_name_for(item: ExportItem) -> str:
    """Deterministic store subdirectory name for one export item."""
    role, src = item.role, _sanitize(item.source)
    if role == "matrix":
        return "matrix"
    if role == "embedding":
        return f"embedding-{src}"
    if role == "synthetic_embedding":
        return _short(f"scatter-{src.replace(':', '-')}")
    if role == "obs_column":
        return f"obs-{src}"
    if role == "matrix_slice":
        return _short("slice-" + _sanitize("_".join(item.params["features"])))
    if role == "aggregate_means":
        return f"means-{src}"
    if role == "violin_summary":
        return f"violin-{src}"
    if role == "image_pyramid":
        return f"image-{src}"
    if role == "circles":
        return f"circles-{src}"
    if role == "points":
        return f"points-{src}"
    if role == "labels":
        return f"labels-{src}"
    raise ValueError(f"unknown export role {role!r}")


def placeholder_url(item: ExportItem) -> str:
    return f"{store_name_for(item)}/manifest.json"


# -- shared building blocks ----------------------------------------------------


class _Builder:
    """Keeps the file list and export plan aligned one-to-one."""

    def __init__(self, plot_name: str):
        self.cfg = ViewConfig(name=plot_name)
        self.plan: list[ExportItem] = []
        self.files: list[DatasetFile] = []

    def add_item(self, item: ExportItem, kind: FileKind, options: dict) -> None:
        self.plan.append(item)
        self.files.append(
            DatasetFile(url=placeholder_url(item), kind=kind, options=options)
        )

    def finish(self, views_main_first: list) -> TranslationResult:
        uid = add_dataset(self.cfg, "data", self.files)
        link_views(self.cfg, self.cfg.layout, CoordinationType.DATASET, uid)
        self._place(views_main_first)
        violations = validate(self.cfg)
        if violations:
            raise AssertionError(
                "translator produced an invalid config: " + "; ".join(violations)
            )
        return TranslationResult(config=self.cfg, export_plan=self.plan)

    def _place(self, views_main_first):
        main, aux = views_main_first[0], views_main_first[1:]
        main.grid.x, main.grid.y, main.grid.w, main.grid.h = 0, 0, 8, 12
        if not aux:
            return
        step = 12 // len(aux)
        y = 0
        for i, view in enumerate(aux):
            h = 12 - y if i == len(aux) - 1 else step
            view.grid.x, view.grid.y, view.grid.w, view.grid.h = 8, y, 4, h
            y += h


def _matrix_item() -> tuple[ExportItem, FileKind, dict]:
    item = ExportItem(role="matrix", source="X")
    return item, FileKind.MATRIX_STORE, {"role": "matrix"}


def _obs_column_item(am: AnnotatedMatrix, name: str) -> tuple[ExportItem, FileKind, dict]:
    item = ExportItem(role="obs_column", source=name)
    options = {
        "role": "obsColumn",
        "key": name,
        "categorical": am.is_categorical(name),
    }
    return item, FileKind.MATRIX_STORE, options


def _classify_color(am: AnnotatedMatrix, color: str) -> str:
    """"sets" for a categorical obs column, "feature" for a feature id."""
    in_obs = am.has_obs_column(color)
    in_var = am.has_feature(color)
    if in_obs and in_var:
        raise AmbiguousColor(
            f"{color!r} names both an observation column and a feature"
        )
    if in_obs:
        if not am.is_categorical(color):
            raise UnknownFeature(
                f"{color!r} is a numeric observation column; only categorical "
                f"columns or feature ids can drive coloring"
            )
        return "sets"
    if in_var:
        return "feature"
    raise UnknownFeature(f"unknown color key {color!r}")


def _finish_scatter_like(
    b: _Builder, am: AnnotatedMatrix, embedding_type: str, color: Optional[str]
) -> TranslationResult:
    """Shared tail for embedding- and obs-column-backed scatterplots:
    wire the color views, scopes, and color-source export items."""
    scatter = add_view(b.cfg, ComponentKind.SCATTERPLOT, 0, 0, 8, 12)
    views = [scatter]
    mode = _classify_color(am, color) if color is not None else "none"
    if mode == "sets":
        b.add_item(*_obs_column_item(am, color))
        views.append(add_view(b.cfg, ComponentKind.OBS_SET_LIST, 8, 0, 4, 12))
    elif mode == "feature":
        b.add_item(*_matrix_item())
        views.append(add_view(b.cfg, ComponentKind.FEATURE_LIST, 8, 0, 4, 12))
    link_views(b.cfg, [scatter], CoordinationType.EMBEDDING_TYPE, embedding_type)
    if mode == "sets":
        link_views(b.cfg, views, CoordinationType.OBS_COLOR_ENCODING, "cellSetSelection")
    elif mode == "feature":
        link_views(b.cfg, views, CoordinationType.FEATURE_SELECTION, [color])
        link_views(b.cfg, views, CoordinationType.OBS_COLOR_ENCODING, "geneSelection")
    return b.finish(views)


# -- matrix translators ----------------------------------------------------------


def embedding_type_for(basis: str) -> str:
    stem = basis[2:] if basis.startswith("X_") else basis
    return stem.upper() if stem.lower() in UPPERCASE_BASES else stem


def _resolve_basis(am: AnnotatedMatrix, basis: str) -> str:
    for key in (basis, f"X_{basis}"):
        if key in am.embeddings:
            if am.embeddings[key].shape[1] < 2:
                raise UnknownBasis(f"embedding {key!r} has fewer than 2 dimensions")
            return key
    raise UnknownBasis(f"no embedding named {basis!r}")


def translate_embedding(
    am: AnnotatedMatrix, basis: str, color: Optional[str] = None, args=None
) -> TranslationResult:
    key = _resolve_basis(am, basis)
    b = _Builder("embedding")
    b.add_item(
        ExportItem(role="embedding", source=key),
        FileKind.MATRIX_STORE,
        {"role": "embedding", "key": key},
    )
    return _finish_scatter_like(b, am, embedding_type_for(key), color)


def translate_scatter(
    am: AnnotatedMatrix, x: str, y: str, color: Optional[str] = None, args=None
) -> TranslationResult:
    for name in (x, y):
        if not am.has_obs_column(name) or am.is_categorical(name):
            raise UnknownFeature(f"{name!r} is not a numeric observation column")
    b = _Builder("scatter")
    b.add_item(
        ExportItem(role="synthetic_embedding", source=f"{x}:{y}", params={"x": x, "y": y}),
        FileKind.MATRIX_STORE,
        {"role": "embedding", "key": f"scatter:{x}:{y}"},
    )
    return _finish_scatter_like(b, am, f"scatter:{x}:{y}", color)


def translate_dotplot(
    am: AnnotatedMatrix, var_names, groupby: str, args=None
) -> TranslationResult:
    var_names = _feature_list(am, var_names)
    _require_categorical(am, groupby)
    b = _Builder("dotplot")
    b.add_item(*_matrix_item())
    b.add_item(*_obs_column_item(am, groupby))
    dot = add_view(b.cfg, ComponentKind.DOT_PLOT, 0, 0, 8, 12)
    features = add_view(b.cfg, ComponentKind.FEATURE_LIST, 8, 0, 4, 6)
    sets = add_view(b.cfg, ComponentKind.OBS_SET_LIST, 8, 6, 4, 6)
    link_views(b.cfg, [dot, features], CoordinationType.FEATURE_SELECTION, var_names)
    return b.finish([dot, features, sets])


def translate_heatmap(
    am: AnnotatedMatrix, var_names, groupby: Optional[str] = None, args=None
) -> TranslationResult:
    var_names = _feature_list(am, var_names)
    b = _Builder("heatmap")
    if groupby is None:
        b.add_item(
            ExportItem(role="matrix_slice", source="X", params={"features": var_names}),
            FileKind.MATRIX_STORE,
            {"role": "matrixSlice", "features": var_names},
        )
    else:
        _require_categorical(am, groupby)
        b.add_item(
            ExportItem(
                role="aggregate_means", source=groupby, params={"features": var_names}
            ),
            FileKind.MATRIX_STORE,
            {"role": "aggregateMeans", "key": groupby, "features": var_names},
        )
    heat = add_view(b.cfg, ComponentKind.HEATMAP, 0, 0, 8, 12)
    link_views(b.cfg, [heat], CoordinationType.FEATURE_SELECTION, var_names)
    return b.finish([heat])


def translate_violin(am: AnnotatedMatrix, keys, groupby: str, args=None) -> TranslationResult:
    keys = _feature_list(am, keys)
    _require_categorical(am, groupby)
    b = _Builder("violin")
    b.add_item(
        ExportItem(role="violin_summary", source=groupby, params={"features": keys}),
        FileKind.MATRIX_STORE,
        {"role": "violinSummary", "key": groupby, "features": keys},
    )
    b.add_item(*_obs_column_item(am, groupby))
    violin = add_view(b.cfg, ComponentKind.VIOLIN, 0, 0, 8, 12)
    link_views(b.cfg, [violin], CoordinationType.FEATURE_SELECTION, keys)
    return b.finish([violin])


def _feature_list(am: AnnotatedMatrix, names) -> list[str]:
    if names is None:
        names = []
    if isinstance(names, str):
        names = [names]
    names = list(names)
    if not names:
        raise UnknownFeature("empty feature selection")
    missing = [n for n in names if not am.has_feature(n)]
    if missing:
        raise UnknownFeature(f"unknown feature(s): {', '.join(missing)}")
    return names


def _require_categorical(am: AnnotatedMatrix, groupby: str) -> None:
    if not am.is_categorical(groupby):
        raise UnknownGroupColumn(
            f"{groupby!r} is not a categorical observation column"
        )


def _fixed_basis(basis):
    def translator(am, args):
        return translate_embedding(am, basis, color=args.get("color"), args=args)

    return translator


_MATRIX_TRANSLATORS = {
    "embedding": lambda am, args: translate_embedding(
        am, args["basis"], color=args.get("color"), args=args
    ),
    "pca": _fixed_basis("pca"),
    "umap": _fixed_basis("umap"),
    "tsne": _fixed_basis("tsne"),
    "spatial": _fixed_basis("spatial"),
    "scatter": lambda am, args: translate_scatter(
        am, args["x"], args["y"], color=args.get("color"), args=args
    ),
    "dotplot": lambda am, args: translate_dotplot(
        am, args["var_names"], args["groupby"], args=args
    ),
    "heatmap": lambda am, args: translate_heatmap(
        am, args["var_names"], groupby=args.get("groupby"), args=args
    ),
    "violin": lambda am, args: translate_violin(
        am, args["keys"], args["groupby"], args=args
    ),
}


# -- spatial layer stack ----------------------------------------------------------


@dataclass(frozen=True)
class SpatialLayer:
    kind: str
    element: str
    style: tuple[tuple[str, Any], ...] = ()

    def style_dict(self) -> dict[str, Any]:
        return dict(self.style)


@dataclass(frozen=True)
class SpatialLayerStack:
    elements: SpatialElements
    layers: tuple[SpatialLayer, ...] = ()


_KIND_TO_FIELD = {IMAGE: "images", SHAPES: "circles", POINTS: "points", LABELS: "labels"}


def push_spatial_layer(
    stack: SpatialLayerStack,
    element_kind: str,
    element: Optional[str] = None,
    style: Optional[Mapping[str, Any]] = None,
) -> SpatialLayerStack:
    """Return a new stack with one layer appended (bottom-up order).

    ``element=None`` picks the sole element of that kind. An image layer may
    appear once and only at the bottom.
    """
    if element_kind not in _KIND_TO_FIELD:
        raise ValueError(f"unknown element kind {element_kind!r}")
    available = getattr(stack.elements, _KIND_TO_FIELD[element_kind])
    if element is None:
        if len(available) != 1:
            raise KeyError(
                f"cannot pick a default {element_kind} element among "
                f"{sorted(available)}"
            )
        element = next(iter(available))
    elif element not in available:
        raise KeyError(f"no {element_kind} element named {element!r}")
    if element_kind == IMAGE and stack.layers:
        raise InvalidLayerOrder("an image layer must be the first layer")
    style_items = tuple(sorted((style or {}).items()))
    layer = SpatialLayer(kind=element_kind, element=element, style=style_items)
    return SpatialLayerStack(elements=stack.elements, layers=stack.layers + (layer,))


def _layer_color(stack: SpatialLayerStack, layer: SpatialLayer) -> Optional[str]:
    color = layer.style_dict().get("color")
    if color is None:
        return None
    table = stack.elements.table
    if table is None or not table.has_feature(color):
        raise UnknownFeature(
            f"layer {layer.element!r}: color {color!r} is not a feature of the "
            f"linked table"
        )
    return color


def translate_spatial_show(stack: SpatialLayerStack) -> TranslationResult:
    """Emit one spatial view plus a layer controller (and a feature list when
    any layer is colored by expression), with the export plan covering every
    layer bottom-up."""
    if not stack.layers:
        raise EmptyStack("show() on an empty spatial layer stack")
    b = _Builder("spatial")

    layer_descriptors = []
    selected_features: list[str] = []
    for layer in stack.layers:
        style = layer.style_dict()
        descriptor = {
            "kind": layer.kind,
            "element": layer.element,
            "visible": True,
            "opacity": style.get("opacity", 1.0),
        }
        color = _layer_color(stack, layer)
        if color is not None:
            descriptor["color"] = color
            if color not in selected_features:
                selected_features.append(color)
        if "palette" in style:
            descriptor["palette"] = style["palette"]
        layer_descriptors.append(descriptor)

        role = {IMAGE: "image_pyramid", SHAPES: "circles", POINTS: "points", LABELS: "labels"}[
            layer.kind
        ]
        kind = {
            IMAGE: FileKind.IMAGE_PYRAMID,
            SHAPES: FileKind.CIRCLES,
            POINTS: FileKind.POINTS,
            LABELS: FileKind.LABELS,
        }[layer.kind]
        b.add_item(
            ExportItem(role=role, source=layer.element),
            kind,
            {"role": kind.value, "key": layer.element},
        )
    if selected_features:
        b.add_item(*_matrix_item())

    spatial = add_view(b.cfg, ComponentKind.SPATIAL, 0, 0, 8, 12)
    views = [spatial]
    if selected_features:
        views.append(add_view(b.cfg, ComponentKind.FEATURE_LIST, 8, 0, 4, 6))
    controller = add_view(b.cfg, ComponentKind.LAYER_CONTROLLER, 8, 0, 4, 6)
    views.append(controller)

    link_views(b.cfg, [spatial, controller], CoordinationType.SPATIAL_ZOOM, None)
    link_views(b.cfg, [spatial, controller], CoordinationType.SPATIAL_TARGET_X, None)
    link_views(b.cfg, [spatial, controller], CoordinationType.SPATIAL_TARGET_Y, None)
    link_views(
        b.cfg, [spatial, controller], CoordinationType.SPATIAL_LAYERS, layer_descriptors
    )
    if selected_features:
        feature_list = views[1]
        link_views(
            b.cfg,
            [spatial, feature_list],
            CoordinationType.FEATURE_SELECTION,
            selected_features,
        )
        link_views(
            b.cfg, [spatial, feature_list], CoordinationType.OBS_COLOR_ENCODING, "geneSelection"
        )
    return b.finish(views)


# -- documentation -----------------------------------------------------------------


def render_supported_table() -> str:
    """Markdown table of every supported function and its parameters."""
    lines = [
        "# Supported plotting functions",
        "",
        "Calls using any parameter outside the supported set fall back to the",
        "original static function with a warning.",
        "",
        "| function | kind | supported parameters | required |",
        "| --- | --- | --- | --- |",
    ]
    for entry in REGISTRY.values():
        params = ", ".join(entry.params) or "-"
        required = ", ".join(entry.required) or "-"
        lines.append(f"| {entry.name} | {entry.kind} | {params} | {required} |")
    return "\n".join(lines) + "\n"

"""Declarative multi-view configuration: datasets, coordination scopes, layout.

Every intercepted plot call compiles into one :class:`ViewConfig`. The model
is deliberately small: a flat dataset list, a coordination space mapping
(type, scope) pairs to JSON values, and a grid layout of typed views.
Serialization is canonical JSON so identical configs are byte-identical.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable

from .errors import DuplicateName, InvalidConfig, ParseError, UnknownView

CONFIG_VERSION = "0.1.0"
GRID_COLUMNS = 12


class CoordinationType(Enum):
    DATASET = "dataset"
    EMBEDDING_TYPE = "embeddingType"
    FEATURE_SELECTION = "featureSelection"
    OBS_COLOR_ENCODING = "obsColorEncoding"
    OBS_SET_SELECTION = "obsSetSelection"
    SPATIAL_ZOOM = "spatialZoom"
    SPATIAL_TARGET_X = "spatialTargetX"
    SPATIAL_TARGET_Y = "spatialTargetY"
    SPATIAL_LAYERS = "spatialLayers"


class ComponentKind(Enum):
    SCATTERPLOT = "scatterplot"
    SPATIAL = "spatial"
    DOT_PLOT = "dotPlot"
    HEATMAP = "heatmap"
    VIOLIN = "violin"
    FEATURE_LIST = "featureList"
    OBS_SET_LIST = "obsSetList"
    LAYER_CONTROLLER = "layerController"


class FileKind(Enum):
    MATRIX_STORE = "matrixStore"
    IMAGE_PYRAMID = "imagePyramid"
    CIRCLES = "circles"
    POINTS = "points"
    LABELS = "labels"


OBS_COLOR_ENCODING_VALUES = ("cellSetSelection", "geneSelection")


def scope_name(index: int) -> str:
    """0 -> "A", 25 -> "Z", 26 -> "AA", 27 -> "AB", ... (spreadsheet order)."""
    if index < 0:
        raise ValueError("index must be >= 0")
    name = ""
    index += 1
    while index > 0:
        index, rem = divmod(index - 1, 26)
        name = chr(ord("A") + rem) + name
    return name


@dataclass
class DatasetFile:
    url: str
    kind: FileKind
    options: dict[str, Any] = field(default_factory=dict)


@dataclass
class DatasetDecl:
    uid: str
    name: str
    files: list[DatasetFile]


@dataclass
class Grid:
    x: int
    y: int
    w: int
    h: int


@dataclass
class View:
    component: ComponentKind
    coordination: dict[CoordinationType, str] = field(default_factory=dict)
    grid: Grid = field(default_factory=lambda: Grid(0, 0, 6, 6))


@dataclass
class ViewConfig:
    name: str = ""
    version: str = CONFIG_VERSION
    datasets: list[DatasetDecl] = field(default_factory=list)
    coordination_space: dict[CoordinationType, dict[str, Any]] = field(
        default_factory=dict
    )
    layout: list[View] = field(default_factory=list)


# -- building ----------------------------------------------------------------


def add_dataset(cfg: ViewConfig, name: str, files: Iterable[DatasetFile]) -> str:
    """Append a dataset; uids are assigned "A", "B", ... in insertion order."""
    files = list(files)
    if not files:
        raise ValueError("a dataset needs at least one file")
    if any(d.name == name for d in cfg.datasets):
        raise DuplicateName(f"dataset named {name!r} already present")
    uid = scope_name(len(cfg.datasets))
    cfg.datasets.append(DatasetDecl(uid=uid, name=name, files=files))
    return uid


def add_view(
    cfg: ViewConfig, component: ComponentKind, x: int, y: int, w: int, h: int
) -> View:
    view = View(component=component, grid=Grid(x, y, w, h))
    cfg.layout.append(view)
    return view


def link_views(
    cfg: ViewConfig,
    views: Iterable[View],
    ctype: CoordinationType,
    value: Any,
) -> str:
    """Create a fresh scope of ``ctype`` holding ``value`` and point every
    listed view at it. Scope names count up per coordination type."""
    views = list(views)
    for v in views:
        if not any(v is w for w in cfg.layout):
            raise UnknownView(f"view {v.component.value!r} is not in this config's layout")
    scopes = cfg.coordination_space.setdefault(ctype, {})
    name = scope_name(len(scopes))
    scopes[name] = value
    for v in views:
        v.coordination[ctype] = name
    return name


# -- validation ----------------------------------------------------------------

_REQUIRED_SCOPES = {
    ComponentKind.SCATTERPLOT: (CoordinationType.EMBEDDING_TYPE,),
    ComponentKind.SPATIAL: (
        CoordinationType.SPATIAL_ZOOM,
        CoordinationType.SPATIAL_TARGET_X,
        CoordinationType.SPATIAL_TARGET_Y,
    ),
}


def validate(cfg: ViewConfig) -> list[str]:
    """Return one message per broken invariant; an empty list means valid."""
    violations: list[str] = []
    seen_uids: set[str] = set()
    for i, ds in enumerate(cfg.datasets):
        if ds.uid in seen_uids:
            violations.append(f"datasets[{i}]: duplicate uid {ds.uid!r}")
        seen_uids.add(ds.uid)

    for ctype, scopes in cfg.coordination_space.items():
        for scope, value in scopes.items():
            if ctype is CoordinationType.OBS_COLOR_ENCODING:
                if value not in OBS_COLOR_ENCODING_VALUES:
                    violations.append(
                        f"coordinationSpace.{ctype.value}[{scope!r}]: "
                        f"invalid value {value!r}"
                    )
            if ctype is CoordinationType.DATASET and value not in seen_uids:
                violations.append(
                    f"coordinationSpace.{ctype.value}[{scope!r}]: "
                    f"unknown dataset uid {value!r}"
                )

    for i, view in enumerate(cfg.layout):
        label = f"layout[{i}] ({view.component.value})"
        for ctype, scope in view.coordination.items():
            if scope not in cfg.coordination_space.get(ctype, {}):
                violations.append(
                    f"{label}: coordination {ctype.value!r} references "
                    f"undefined scope {scope!r}"
                )
        for ctype in _REQUIRED_SCOPES.get(view.component, ()):
            if ctype not in view.coordination:
                violations.append(
                    f"{label}: missing required coordination {ctype.value!r}"
                )
        g = view.grid
        if g.x < 0:
            violations.append(f"{label}: grid x={g.x} must be >= 0")
        if g.w < 1:
            violations.append(f"{label}: grid w={g.w} must be >= 1")
        if g.h < 1:
            violations.append(f"{label}: grid h={g.h} must be >= 1")
        if g.x + g.w > GRID_COLUMNS:
            violations.append(
                f"{label}: grid x+w={g.x + g.w} exceeds the {GRID_COLUMNS}-column grid"
            )
    return violations


# -- serialization --------------------------------------------------------------


def _to_document(cfg: ViewConfig) -> dict[str, Any]:
    return {
        "version": cfg.version,
        "name": cfg.name,
        "datasets": [
            {
                "uid": ds.uid,
                "name": ds.name,
                "files": [
                    {"url": f.url, "kind": f.kind.value, "options": f.options}
                    for f in ds.files
                ],
            }
            for ds in cfg.datasets
        ],
        # coordination types in declaration order, scopes in insertion order
        "coordinationSpace": {
            ctype.value: dict(cfg.coordination_space[ctype])
            for ctype in CoordinationType
            if ctype in cfg.coordination_space
        },
        "layout": [
            {
                "component": v.component.value,
                "coordination": {
                    ctype.value: v.coordination[ctype]
                    for ctype in CoordinationType
                    if ctype in v.coordination
                },
                "x": v.grid.x,
                "y": v.grid.y,
                "w": v.grid.w,
                "h": v.grid.h,
            }
            for v in cfg.layout
        ],
    }


def serialize(cfg: ViewConfig) -> str:
    violations = validate(cfg)
    if violations:
        raise InvalidConfig(
            "refusing to serialize an invalid config:\n" + "\n".join(violations)
        )
    return json.dumps(_to_document(cfg), indent=2, ensure_ascii=False)


def _expect(doc: Any, key: str, types, where: str):
    if not isinstance(doc, dict):
        raise ParseError(f"expected an object", location=where)
    if key not in doc:
        raise ParseError(f"missing key {key!r}", location=where)
    value = doc[key]
    if not isinstance(value, types):
        raise ParseError(f"wrong type for {key!r}", location=f"{where}.{key}")
    return value


def _enum_value(enum_cls, raw: str, where: str):
    for member in enum_cls:
        if member.value == raw:
            return member
    raise ParseError(f"unknown {enum_cls.__name__} {raw!r}", location=where)


def deserialize(text: str) -> ViewConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, location=f"line {e.lineno} column {e.colno}") from None

    version = _expect(doc, "version", str, "$")
    name = _expect(doc, "name", str, "$")

    datasets = []
    for i, raw in enumerate(_expect(doc, "datasets", list, "$")):
        where = f"$.datasets[{i}]"
        files = []
        for j, rawf in enumerate(_expect(raw, "files", list, where)):
            fwhere = f"{where}.files[{j}]"
            files.append(
                DatasetFile(
                    url=_expect(rawf, "url", str, fwhere),
                    kind=_enum_value(
                        FileKind, _expect(rawf, "kind", str, fwhere), f"{fwhere}.kind"
                    ),
                    options=_expect(rawf, "options", dict, fwhere),
                )
            )
        datasets.append(
            DatasetDecl(
                uid=_expect(raw, "uid", str, where),
                name=_expect(raw, "name", str, where),
                files=files,
            )
        )

    coordination_space: dict[CoordinationType, dict[str, Any]] = {}
    raw_space = _expect(doc, "coordinationSpace", dict, "$")
    for raw_ctype, scopes in raw_space.items():
        ctype = _enum_value(CoordinationType, raw_ctype, f"$.coordinationSpace.{raw_ctype}")
        if not isinstance(scopes, dict):
            raise ParseError(
                "scope map must be an object", location=f"$.coordinationSpace.{raw_ctype}"
            )
        coordination_space[ctype] = dict(scopes)

    layout = []
    for i, raw in enumerate(_expect(doc, "layout", list, "$")):
        where = f"$.layout[{i}]"
        coordination = {}
        for raw_ctype, scope in _expect(raw, "coordination", dict, where).items():
            ctype = _enum_value(CoordinationType, raw_ctype, f"{where}.coordination")
            if not isinstance(scope, str):
                raise ParseError(
                    f"scope reference for {raw_ctype!r} must be a string",
                    location=f"{where}.coordination",
                )
            coordination[ctype] = scope
        layout.append(
            View(
                component=_enum_value(
                    ComponentKind,
                    _expect(raw, "component", str, where),
                    f"{where}.component",
                ),
                coordination=coordination,
                grid=Grid(
                    x=_expect(raw, "x", int, where),
                    y=_expect(raw, "y", int, where),
                    w=_expect(raw, "w", int, where),
                    h=_expect(raw, "h", int, where),
                ),
            )
        )

    return ViewConfig(
        name=name,
        version=version,
        datasets=datasets,
        coordination_space=coordination_space,
        layout=layout,
    )

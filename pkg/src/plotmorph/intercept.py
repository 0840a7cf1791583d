"""Runtime substitution of host plotting functions.

A PatchSet maps dotted target paths (e.g. ``"plotmorph.stubhost.pl.dotplot"``)
to signature-compatible interactive replacements. Activation swaps namespace
entries in place; deactivation restores the identical original objects.
Activation and deactivation are main-thread control-plane operations.
"""
from __future__ import annotations

import functools
import importlib
import inspect
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Mapping, Optional

from . import bridge, translate
from .data import SpatialElements
from .errors import (
    MissingTargetWarning,
    TargetVanishedWarning,
    UnsupportedArgumentWarning,
)


class PatchState(Enum):
    ACTIVE = "active"
    INACTIVE = "inactive"


@dataclass
class PatchRecord:
    target_path: str
    original: Callable
    replacement: Callable
    applied: bool = False


@dataclass
class PatchSet:
    records: list[PatchRecord] = field(default_factory=list)

    @property
    def state(self) -> PatchState:
        return (
            PatchState.ACTIVE
            if all(r.applied for r in self.records)
            else PatchState.INACTIVE
        )

    def __len__(self):
        return len(self.records)


# -- path resolution -------------------------------------------------------------


def _resolve_namespace(path: str):
    """Import the longest module prefix of ``path`` and getattr the rest."""
    parts = path.split(".")
    module = None
    split = 0
    for i in range(len(parts), 0, -1):
        try:
            module = importlib.import_module(".".join(parts[:i]))
            split = i
            break
        except ImportError:
            continue
    if module is None:
        raise LookupError(f"no importable module prefix in {path!r}")
    obj = module
    for name in parts[split:]:
        try:
            obj = getattr(obj, name)
        except AttributeError:
            raise LookupError(f"{path!r}: no attribute {name!r}") from None
    return obj


def _resolve_target(target_path: str):
    """(parent namespace, attribute name) for a dotted target path."""
    parent_path, _, attr = target_path.rpartition(".")
    if not parent_path:
        raise LookupError(f"{target_path!r} is not a dotted path")
    parent = _resolve_namespace(parent_path)
    if not hasattr(parent, attr):
        raise LookupError(f"{target_path!r}: attribute vanished")
    return parent, attr


# -- replacement construction ------------------------------------------------------

# original render functions per accessor class, for static fallback replay
_SPATIAL_ORIGINALS: dict[tuple[type, str], Callable] = {}


def _spatial_original(accessor_cls: type, name: str) -> Callable:
    for cls in accessor_cls.__mro__:
        fn = _SPATIAL_ORIGINALS.get((cls, name))
        if fn is not None:
            return fn
    raise RuntimeError(f"no recorded original for {accessor_cls.__name__}.{name}")


def _bind_call(name: str, original: Callable, args, kwargs) -> Optional[translate.PlotCall]:
    """Map a concrete invocation onto the original's named parameters.
    Returns None when the arguments don't bind (the original will raise
    its own natural error on pass-through)."""
    try:
        sig = inspect.signature(original)
        bound = sig.bind(*args, **kwargs)
    except (TypeError, ValueError):
        return None
    params = list(sig.parameters.values())
    if not params or params[0].name not in bound.arguments:
        return None
    handle_name = params[0].name
    call_args: dict[str, Any] = {}
    for pname, value in bound.arguments.items():
        if pname == handle_name:
            continue
        kind = sig.parameters[pname].kind
        if kind is inspect.Parameter.VAR_KEYWORD:
            call_args.update(value)
        elif kind is inspect.Parameter.VAR_POSITIONAL:
            return None
        else:
            call_args[pname] = value
    return translate.PlotCall(name, bound.arguments[handle_name], call_args)


def _make_matrix_replacement(name: str, original: Callable) -> Callable:
    @functools.wraps(original)
    def replacement(*args, **kwargs):
        call = _bind_call(name, original, args, kwargs)
        if call is None:
            return original(*args, **kwargs)
        result = translate.dispatch(call)
        if result is translate.PASS_THROUGH:
            return original(*args, **kwargs)
        return bridge.materialize(result, call.data_handle)

    replacement.__plotmorph_original__ = original
    return replacement


def _compact(**kwargs) -> dict:
    return {k: v for k, v in kwargs.items() if v is not None}


class InteractiveSpatialChain:
    """Accumulates render calls started by a patched accessor method.

    ``.pl`` returns the chain itself so host-style chained calls
    (``...pl.render_shapes(...).pl.show()``) stay on the interactive path.
    Any unsupported argument replays the whole chain on the originals,
    handing control back to the static host."""

    def __init__(self, origin_accessor, elements: SpatialElements):
        self._origin_accessor = origin_accessor
        self._elements = elements
        self._stack = translate.SpatialLayerStack(elements)
        self._log: list[tuple[str, dict]] = []

    @property
    def pl(self) -> "InteractiveSpatialChain":
        return self

    def render_images(self, element=None, **style):
        return self._render("render_images", _compact(element=element, **style))

    def render_shapes(self, element=None, **style):
        return self._render("render_shapes", _compact(element=element, **style))

    def render_points(self, element=None, **style):
        return self._render("render_points", _compact(element=element, **style))

    def render_labels(self, element=None, **style):
        return self._render("render_labels", _compact(element=element, **style))

    def _render(self, name: str, args: dict):
        self._log.append((name, dict(args)))
        bad = translate.unsupported_args(name, args)
        if bad:
            warnings.warn(
                UnsupportedArgumentWarning(
                    f"{name}: falling back to the static plot "
                    f"(unsupported argument(s): {', '.join(bad)})"
                ),
                stacklevel=3,
            )
            return self._replay_static()
        style = {k: v for k, v in args.items() if k != "element"}
        self._stack = translate.push_spatial_layer(
            self._stack, translate.RENDER_KINDS[name], args.get("element"), style
        )
        return self

    def show(self, **kwds):
        if kwds:
            warnings.warn(
                UnsupportedArgumentWarning(
                    f"show: falling back to the static plot "
                    f"(unsupported argument(s): {', '.join(sorted(kwds))})"
                ),
                stacklevel=2,
            )
            return self._replay_static().pl.show(**kwds)
        result = translate.translate_spatial_show(self._stack)
        return bridge.materialize(result, self._elements)

    def _replay_static(self):
        obj = None
        for fn_name, kwargs in self._log:
            accessor = self._origin_accessor if obj is None else obj.pl
            original = _spatial_original(type(accessor), fn_name)
            obj = original(accessor, **kwargs)
        return obj

    def __repr__(self):
        return f"InteractiveSpatialChain({[n for n, _ in self._log]})"


def _make_spatial_replacement(name: str, original: Callable) -> Callable:
    @functools.wraps(original)
    def replacement(accessor, *args, **kwargs):
        elements = getattr(accessor, "_plotmorph_elements", None)
        if not isinstance(elements, SpatialElements) or getattr(
            accessor, "_static_pending", True
        ):
            return original(accessor, *args, **kwargs)
        call = _bind_call(name, original, (accessor, *args), kwargs)
        if call is None:
            return original(accessor, *args, **kwargs)
        chain = InteractiveSpatialChain(accessor, elements)
        return chain._render(name, call.args)

    replacement.__plotmorph_original__ = original
    return replacement


# -- patchset construction -----------------------------------------------------------


def build_default_patchset(host_namespaces: Mapping[str, Any]) -> PatchSet:
    """One record per supported function found in any given namespace.

    ``host_namespaces`` maps dotted namespace paths to live handles (modules,
    classes, or namespace objects). Supported functions absent from every
    namespace are skipped with a warning so partial hosts still work."""
    records: list[PatchRecord] = []
    found: set[str] = set()
    for ns_path, ns in host_namespaces.items():
        for fn_name in translate.registry_names():
            if not hasattr(ns, fn_name):
                continue
            original = getattr(ns, fn_name)
            # see through an already-applied replacement so rebuilding a
            # patchset over a patched namespace never double-wraps
            original = getattr(original, "__plotmorph_original__", original)
            entry = translate.REGISTRY[fn_name]
            if entry.kind == "matrix":
                replacement = _make_matrix_replacement(fn_name, original)
            else:
                replacement = _make_spatial_replacement(fn_name, original)
                if isinstance(ns, type):
                    _SPATIAL_ORIGINALS[(ns, fn_name)] = original
            records.append(
                PatchRecord(
                    target_path=f"{ns_path}.{fn_name}",
                    original=original,
                    replacement=replacement,
                )
            )
            found.add(fn_name)
    for fn_name in translate.registry_names():
        if fn_name not in found:
            warnings.warn(
                MissingTargetWarning(
                    f"supported function {fn_name!r} not found in any host namespace"
                ),
                stacklevel=2,
            )
    return PatchSet(records=records)


# -- activation ---------------------------------------------------------------------


def _swap(record: PatchRecord, value: Callable, applied: bool) -> bool:
    try:
        parent, attr = _resolve_target(record.target_path)
    except LookupError as e:
        warnings.warn(TargetVanishedWarning(str(e)), stacklevel=3)
        return False
    setattr(parent, attr, value)
    record.applied = applied
    return True


def activate(ps: PatchSet) -> int:
    """Apply every unapplied record; returns how many were newly applied."""
    count = 0
    for record in ps.records:
        if record.applied:
            continue
        if _swap(record, record.replacement, True):
            count += 1
    return count


def deactivate(ps: PatchSet) -> int:
    """Restore the identical original object for every applied record."""
    count = 0
    for record in ps.records:
        if not record.applied:
            continue
        if _swap(record, record.original, False):
            count += 1
    return count


def run_static(ps: PatchSet, body: Callable, *args, **kwargs):
    """Run ``body`` with patches off, restoring the prior per-record state
    afterwards even if it raises. Not safe across threads."""
    prior = [r.applied for r in ps.records]
    deactivate(ps)
    try:
        return body(*args, **kwargs)
    finally:
        for record, was_applied in zip(ps.records, prior):
            if was_applied and not record.applied:
                _swap(record, record.replacement, True)


# -- process-default patchset -----------------------------------------------------------

DEFAULT_HOST_PATHS = (
    # real hosts, when installed (thin path-table adapters)
    "scanpy.pl",
    "spatialdata_plot.pl.basic.PlotAccessor",
    # bundled hermetic host
    "plotmorph.stubhost.pl",
    "plotmorph.stubhost.PlotAccessor",
)

_default_patchset: Optional[PatchSet] = None


def default_host_namespaces() -> dict[str, Any]:
    out: dict[str, Any] = {}
    for path in DEFAULT_HOST_PATHS:
        try:
            out[path] = _resolve_namespace(path)
        except LookupError:
            continue
    return out


def default_patchset() -> PatchSet:
    global _default_patchset
    if _default_patchset is None:
        _default_patchset = build_default_patchset(default_host_namespaces())
    return _default_patchset


def enable() -> int:
    """Patch every supported host function; idempotent."""
    return activate(default_patchset())


def disable() -> int:
    """Restore every patched host function; idempotent."""
    return deactivate(default_patchset())


def is_enabled() -> bool:
    ps = _default_patchset
    return ps is not None and len(ps) > 0 and ps.state is PatchState.ACTIVE


def run_static_default(body: Callable, *args, **kwargs):
    return run_static(default_patchset(), body, *args, **kwargs)

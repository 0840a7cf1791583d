"""Hermetic stand-in for the host plotting libraries.

Exposes the same namespace shape the interceptor targets in the real hosts:
``stubhost.pl`` holds the matrix plotting functions and ``SpatialData.pl``
chains the four spatial render calls. Unpatched, everything returns plain
:class:`StaticPlot` records, which is all the "static" behavior tests need.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from ..data import SpatialElements


@dataclass
class StaticPlot:
    """Record of one static plotting call (the stand-in for a drawn figure)."""

    function: str
    params: dict[str, Any] = field(default_factory=dict)


class SpatialData:
    """Container pairing spatial elements with a chainable plot accessor."""

    def __init__(self, elements: SpatialElements, pending: tuple = ()):
        self.elements = elements
        self._pending = tuple(pending)

    @property
    def pl(self) -> "PlotAccessor":
        return PlotAccessor(self)

    def __repr__(self):
        return f"SpatialData(pending={len(self._pending)})"


class PlotAccessor:
    """Chainable renderer: each render call records a pending layer and
    returns a new SpatialData; show() draws whatever accumulated."""

    def __init__(self, sdata: SpatialData):
        self._sdata = sdata

    # attributes the interceptor relies on
    @property
    def _plotmorph_elements(self) -> SpatialElements:
        return self._sdata.elements

    @property
    def _static_pending(self) -> bool:
        return bool(self._sdata._pending)

    def _record(self, function: str, params: dict) -> SpatialData:
        return SpatialData(
            self._sdata.elements, self._sdata._pending + ((function, params),)
        )

    def render_images(self, element: Optional[str] = None, opacity: float = 1.0, **kwds):
        return self._record(
            "render_images", {"element": element, "opacity": opacity, **kwds}
        )

    def render_shapes(
        self,
        element: Optional[str] = None,
        color: Optional[str] = None,
        palette: Optional[str] = None,
        opacity: float = 1.0,
        **kwds,
    ):
        return self._record(
            "render_shapes",
            {
                "element": element,
                "color": color,
                "palette": palette,
                "opacity": opacity,
                **kwds,
            },
        )

    def render_points(
        self,
        element: Optional[str] = None,
        color: Optional[str] = None,
        palette: Optional[str] = None,
        opacity: float = 1.0,
        **kwds,
    ):
        return self._record(
            "render_points",
            {
                "element": element,
                "color": color,
                "palette": palette,
                "opacity": opacity,
                **kwds,
            },
        )

    def render_labels(
        self, element: Optional[str] = None, palette: Optional[str] = None, opacity: float = 1.0, **kwds
    ):
        return self._record(
            "render_labels",
            {"element": element, "palette": palette, "opacity": opacity, **kwds},
        )

    def show(self, **kwds) -> StaticPlot:
        return StaticPlot("show", {"layers": list(self._sdata._pending), **kwds})


from . import pl  # noqa: E402  (namespace module, mirrors host layout)

__all__ = ["StaticPlot", "SpatialData", "PlotAccessor", "pl"]

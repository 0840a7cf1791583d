"""Drop-in interactive plotting for single-cell and spatial analysis hosts.

Importing this package patches every supported host plotting function with a
signature-identical interactive replacement; set ``PLOTMORPH_DISABLED=1`` to
import without the side effect, or call :func:`disable` at any time.
"""
import os

from .bridge import (
    Environment,
    InteractivePlotHandle,
    detect_environment,
    display,
    export_config,
    materialize,
)
from .errors import PlotmorphError, PlotmorphWarning
from .intercept import (
    PatchRecord,
    PatchSet,
    PatchState,
    activate,
    build_default_patchset,
    deactivate,
    default_patchset,
    disable,
    enable,
    is_enabled,
)
from .intercept import run_static_default as run_static

__version__ = "0.1.0"

__all__ = [
    "Environment",
    "InteractivePlotHandle",
    "PatchRecord",
    "PatchSet",
    "PatchState",
    "PlotmorphError",
    "PlotmorphWarning",
    "activate",
    "build_default_patchset",
    "deactivate",
    "default_patchset",
    "detect_environment",
    "disable",
    "display",
    "enable",
    "export_config",
    "is_enabled",
    "materialize",
    "run_static",
]

if os.environ.get("PLOTMORPH_DISABLED", "") != "1":
    enable()

"""Exception and warning types shared across the package."""


class PlotmorphError(Exception):
    """Base class for all package errors."""


# -- data / stats -----------------------------------------------------------

class UnknownGroupColumn(PlotmorphError):
    """Named observation column is missing or not categorical."""


class UnknownFeature(PlotmorphError):
    """Named feature (or feature selection) cannot be resolved."""


class UnknownBasis(PlotmorphError):
    """Named embedding basis does not exist or has fewer than 2 dimensions."""


class AmbiguousColor(PlotmorphError):
    """A color key that names both an obs column and a feature id."""


# -- view configuration ------------------------------------------------------

class DuplicateName(PlotmorphError):
    """Dataset name already present in the config."""


class UnknownView(PlotmorphError):
    """View object does not belong to the config's layout."""


class InvalidConfig(PlotmorphError):
    """Config failed validation where a valid one is required."""


class ParseError(PlotmorphError):
    """Malformed serialized config.

    Carries a human-readable location (line/column or key path) when known.
    """

    def __init__(self, message, location=None):
        super().__init__(message if location is None else f"{message} (at {location})")
        self.location = location


# -- spatial layer stack ------------------------------------------------------

class EmptyStack(PlotmorphError):
    """show() called on a spatial layer stack with no layers."""


class InvalidLayerOrder(PlotmorphError):
    """Image base layers must come first and at most once."""


# -- store --------------------------------------------------------------------

class OverwriteError(PlotmorphError):
    """Target directory already holds a store and overwrite was not requested."""


class UnknownPath(PlotmorphError):
    """Array path not present in the store manifest."""


class CorruptChunk(PlotmorphError):
    """Chunk file missing or its size disagrees with the manifest."""


# -- serve --------------------------------------------------------------------

class PortInUse(PlotmorphError):
    """Explicitly requested port is already bound."""


class NotStarted(PlotmorphError):
    """Server operation requires start() first."""


class UnknownMount(PlotmorphError):
    """Mount uid is not registered."""


# -- bridge -------------------------------------------------------------------

class InvalidOverride(PlotmorphError):
    """base_url_override is not an absolute http(s) url."""


# -- survey -------------------------------------------------------------------

class RateLimited(PlotmorphError):
    """Code-search API kept rate-limiting after all backoff retries."""


class TransportError(PlotmorphError):
    """Code-search transport failed for a non-rate-limit reason."""


# -- warnings -----------------------------------------------------------------

class PlotmorphWarning(UserWarning):
    """Base warning category for the package."""


class TargetVanishedWarning(PlotmorphWarning):
    """A patch target path no longer resolves; the record was skipped."""


class MissingTargetWarning(PlotmorphWarning):
    """A supported function was absent from every host namespace."""


class UnsupportedArgumentWarning(PlotmorphWarning):
    """A plot call used arguments the interactive path does not support."""

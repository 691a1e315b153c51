"""Exception types shared across the package."""


class MapVirError(Exception):
    """Base class for all mapvir errors."""


class AlgebraMismatch(MapVirError):
    """Operands belong to different coefficient algebras."""


class WindowOverflow(MapVirError):
    """A polynomial/Laurent computation produced an exponent outside the window."""


class InfiniteDimensionalAlgebra(MapVirError):
    """A basis matrix was demanded from an infinite-dimensional algebra."""


class ImproperIdeal(MapVirError):
    """The ideal is the whole algebra where a proper ideal is required."""


class UnsupportedKind(MapVirError):
    """The algebra kind does not support the requested operation."""


class MissingWindow(MapVirError):
    """A windowed computation was requested without a window."""


class NotLowering(MapVirError):
    """A word letter has a component outside the span of the d_{-m}, m >= 1."""


class ModeRangeError(MapVirError):
    """A generator mode exceeded the configured |n| bound (see MAPVIR_MODE_MAX)."""

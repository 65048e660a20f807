"""Exception types shared across the toolkit.

The hierarchy distinguishes data/parse problems (bad input files, bad
parameters) from numerical failures (diverging training, degenerate
geometry), which the CLI maps to distinct exit codes.
"""


class BorderTouchError(Exception):
    """Base class for all toolkit errors."""


class DataError(BorderTouchError):
    """Bad input data or parameters (CLI exit code 2)."""


class NumericalError(BorderTouchError):
    """Numerical failure during computation (CLI exit code 3)."""


class InvalidParams(DataError):
    """Parameters violate an invariant (endpoint outside frame, bad rect, ...)."""


class OutsideFrame(NumericalError):
    """Query point lies outside the sensing frame."""


class DegenerateRay(NumericalError):
    """Ray origin and through-point coincide below tolerance."""


class ShapeMismatch(DataError):
    """Array arguments do not share the required dimensions."""


class AllMasked(DataError):
    """No valid markers remain after masking."""


class ParseError(DataError):
    """Malformed input file. Carries the 1-based line and offending column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column!r})" if column is not None else ")")
        super().__init__(message + loc)


class GridMismatch(DataError):
    """Marker count or indices inconsistent with the declared grid size."""


class DegenerateRestFrame(DataError):
    """Rest frame has too few or collinear valid markers to define a plane."""


class EmptyStream(DataError):
    """Resistance stream contains no samples."""


class EmptyTrain(DataError):
    """Training set is empty."""


class MissingTouchTrack(DataError):
    """Tracked touch-point trajectory absent or inconsistent with the frames."""


class NonFiniteLoss(NumericalError):
    """Training loss became NaN or infinite; message carries diagnostics."""


class ConfigError(DataError):
    """Experiment config file invalid (unknown key, wrong type, missing value)."""


class RankDeficientWarning(UserWarning):
    """Design matrix is rank deficient; the fit proceeds with the minimum-norm solution."""

"""Exact recurrence coefficients and checks for the extended q-Hahn class."""
from .coeffs import INF, ParamSet, RecurrenceTable, build_table, classify_degrees, q_reverse
from .errors import (
    FieldError,
    ParameterError,
    PoleError,
    PreconditionError,
    QHahnError,
    TruncationError,
    ZeroDenominatorError,
)
from .exactfield import FuncElement, QuadElement, format_scalar, parse_scalar, try_sqrt
from .families import askey_wilson, askey_wilson_inverse, preset, q_racah
from .qmatrix import gram_check, hahn_transform_check, verify_quadratic

__all__ = [
    "INF", "ParamSet", "RecurrenceTable", "build_table", "classify_degrees", "q_reverse",
    "FieldError", "ParameterError", "PoleError", "PreconditionError", "QHahnError",
    "TruncationError", "ZeroDenominatorError", "FuncElement", "QuadElement", "format_scalar",
    "parse_scalar", "try_sqrt", "askey_wilson", "askey_wilson_inverse", "preset", "q_racah",
    "gram_check", "hahn_transform_check", "verify_quadratic",
]

"""Greedy expansions (GBE, EGA, GGA, GEGA) for convex optimization."""

from ._core import (
    GreedyOptError,
    MajorantViolation,
    NumericError,
    UnsupportedOperation,
    ValidationError,
    __version__,
    dual_norm,
    e_d,
    fit_power_law,
    run,
    verify,
)

__all__ = [
    "GreedyOptError",
    "MajorantViolation",
    "NumericError",
    "UnsupportedOperation",
    "ValidationError",
    "__version__",
    "dual_norm",
    "e_d",
    "fit_power_law",
    "run",
    "verify",
]

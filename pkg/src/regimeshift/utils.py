"""Input validation and number-formatting helpers shared across the package."""

from __future__ import annotations

import numpy as np


def as_close_array(data) -> np.ndarray:
    """Return close prices as a 1-D float64 array.

    Accepts a :class:`~regimeshift.series.PriceSeries` (via its ``closes``
    attribute) or any one-dimensional sequence of numbers. Rejects empty
    and non-finite input.
    """
    closes = getattr(data, "closes", data)
    arr = np.asarray(closes, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D price sequence, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("price sequence is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError("price sequence contains NaN or infinite values")
    return arr


def check_window(window) -> int:
    n = int(window)
    if n != window or n < 2:
        raise ValueError(f"window length must be an integer >= 2, got {window!r}")
    return n


def check_positive(name: str, value) -> float:
    v = float(value)
    if not v > 0.0:
        raise ValueError(f"{name} must be positive, got {value!r}")
    return v


def check_fraction(name: str, value) -> float:
    v = float(value)
    if not 0.0 < v < 1.0:
        raise ValueError(f"{name} must lie strictly between 0 and 1, got {value!r}")
    return v


def format_full(x) -> str:
    """Shortest decimal that round-trips the exact float; used in data CSVs."""
    return repr(float(x))


def format_sig9(x) -> str:
    """Nine significant digits; used in summary and metric outputs."""
    return "%.9g" % float(x)

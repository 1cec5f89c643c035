"""Uniform close-price series: construction, CSV ingestion, canonical I/O.

Bars are treated as logically consecutive by index: statistics downstream
index bars, never wall-clock time. Recorded timestamps keep the true
session clock (so FX weekend gaps survive a round trip) and any spacing
that differs from ``bar_seconds`` is counted on the series as a gap.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from .utils import as_close_array, check_positive, format_full

SECONDS_PER_YEAR = 365.25 * 86400.0


@dataclass(frozen=True)
class PriceSeries:
    """Immutable series of positive close prices on a fixed bar grid."""

    timestamps: np.ndarray
    closes: np.ndarray
    bar_seconds: int = 14400
    pip: float = 0.0001
    symbol: str = "SERIES"
    gap_count: int = field(init=False, default=0)

    def __post_init__(self):
        ts = np.array(self.timestamps, dtype=np.int64)
        px = np.array(self.closes, dtype=np.float64)
        if ts.ndim != 1 or px.ndim != 1:
            raise ValueError("timestamps and closes must be one-dimensional")
        if ts.size != px.size:
            raise ValueError(f"length mismatch: {ts.size} timestamps vs {px.size} closes")
        if ts.size == 0:
            raise ValueError("series is empty")
        bar = int(self.bar_seconds)
        if bar <= 0:
            raise ValueError(f"bar_seconds must be positive, got {self.bar_seconds!r}")
        check_positive("pip", self.pip)
        if not np.all(np.isfinite(px)) or np.any(px <= 0.0):
            raise ValueError("closes must be positive finite numbers")
        deltas = np.diff(ts)
        if np.any(deltas <= 0):
            k = int(np.argmax(deltas <= 0))
            raise ValueError(f"timestamps must be strictly increasing (violated at bar {k + 1})")
        ts.setflags(write=False)
        px.setflags(write=False)
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "closes", px)
        object.__setattr__(self, "bar_seconds", bar)
        object.__setattr__(self, "pip", float(self.pip))
        object.__setattr__(self, "gap_count", int(np.count_nonzero(deltas != bar)))

    def __len__(self) -> int:
        return int(self.closes.size)

    @property
    def years(self) -> float:
        """Wall-clock span of the series in Julian years."""
        return float(self.timestamps[-1] - self.timestamps[0]) / SECONDS_PER_YEAR

    def subseries(self, start: int, stop: int) -> "PriceSeries":
        """Bars ``[start, stop)`` as a new series."""
        if not 0 <= start < stop <= len(self):
            raise ValueError(f"invalid bar range [{start}, {stop}) for series of length {len(self)}")
        return PriceSeries(
            self.timestamps[start:stop].copy(),
            self.closes[start:stop].copy(),
            bar_seconds=self.bar_seconds,
            pip=self.pip,
            symbol=self.symbol,
        )


@dataclass(frozen=True)
class Window:
    """Trailing window of ``length`` bars ending at ``end_index`` inclusive."""

    end_index: int
    length: int


def slice_window(series, window: Window) -> np.ndarray:
    """Closes ``[end_index - length + 1 .. end_index]``; exactly ``length`` values."""
    closes = as_close_array(series)
    end = int(window.end_index)
    n = int(window.length)
    if n < 1:
        raise ValueError(f"window length must be >= 1, got {window.length!r}")
    if end >= closes.size or end - n + 1 < 0:
        raise ValueError(
            f"window [{end - n + 1}, {end}] out of range for series of {closes.size} bars"
        )
    return closes[end - n + 1 : end + 1]


@dataclass(frozen=True)
class CsvFormat:
    """Column mapping for close-price CSV files.

    ``timestamp_format`` is ``"epoch"`` for integer epoch seconds, the alias
    ``"datetime"`` for ``YYYY-MM-DD HH:MM``, or any ``strptime`` pattern
    (parsed as UTC).
    """

    timestamp_column: str = "timestamp"
    close_column: str = "close"
    timestamp_format: str = "epoch"


_DATETIME_ALIAS = "%Y-%m-%d %H:%M"


def _parse_timestamp(text: str, fmt: str, line: int) -> int:
    if fmt == "epoch":
        try:
            return int(text)
        except ValueError:
            raise ValueError(f"line {line}: bad epoch timestamp {text!r}") from None
    pattern = _DATETIME_ALIAS if fmt == "datetime" else fmt
    try:
        stamp = datetime.strptime(text, pattern)
    except ValueError:
        raise ValueError(f"line {line}: timestamp {text!r} does not match {pattern!r}") from None
    return int(stamp.replace(tzinfo=timezone.utc).timestamp())


def load_csv(
    path,
    fmt: CsvFormat | None = None,
    *,
    bar_seconds: int = 14400,
    pip: float = 0.0001,
    symbol: str = "SERIES",
    max_gap_bars: float | None = None,
) -> PriceSeries:
    """Read, validate, and sort a close-price CSV into a :class:`PriceSeries`.

    Rows are sorted by timestamp and duplicate timestamps rejected. A gap is
    any spacing other than ``bar_seconds``: with ``max_gap_bars=None`` gaps
    are accepted and counted on the result (session gaps in FX data), while
    a number makes any gap of more missing bars than that an error.
    """
    fmt = fmt or CsvFormat()
    rows: list[tuple[int, float, int]] = []
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty file")
        for col in (fmt.timestamp_column, fmt.close_column):
            if col not in reader.fieldnames:
                raise ValueError(f"{path}: missing column {col!r} (found {reader.fieldnames})")
        for row in reader:
            line = reader.line_num
            raw_ts = (row.get(fmt.timestamp_column) or "").strip()
            raw_close = (row.get(fmt.close_column) or "").strip()
            if not raw_ts or not raw_close:
                raise ValueError(f"line {line}: malformed row, empty timestamp or close")
            ts = _parse_timestamp(raw_ts, fmt.timestamp_format, line)
            try:
                close = float(raw_close)
            except ValueError:
                raise ValueError(f"line {line}: bad close price {raw_close!r}") from None
            if not close > 0.0:
                raise ValueError(f"line {line}: close must be positive, got {raw_close!r}")
            rows.append((ts, close, line))
    if not rows:
        raise ValueError(f"{path}: no data rows")
    rows.sort(key=lambda item: item[0])
    for prev, cur in zip(rows, rows[1:]):
        if cur[0] == prev[0]:
            raise ValueError(f"line {cur[2]}: duplicate timestamp {cur[0]}")
        if max_gap_bars is not None and cur[0] - prev[0] != bar_seconds:
            missing = (cur[0] - prev[0]) / bar_seconds - 1.0
            if missing > max_gap_bars:
                raise ValueError(
                    f"line {cur[2]}: gap of {missing:g} missing bars exceeds tolerance {max_gap_bars:g}"
                )
    return PriceSeries(
        np.array([r[0] for r in rows], dtype=np.int64),
        np.array([r[1] for r in rows], dtype=np.float64),
        bar_seconds=bar_seconds,
        pip=pip,
        symbol=symbol,
    )


def save_csv(series: PriceSeries, path) -> None:
    """Write the canonical ``timestamp,close`` CSV (full float precision)."""
    with open(path, "w", newline="") as handle:
        handle.write("timestamp,close\n")
        for ts, close in zip(series.timestamps, series.closes):
            handle.write(f"{int(ts)},{format_full(close)}\n")

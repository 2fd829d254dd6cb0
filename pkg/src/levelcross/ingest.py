"""Loading and validation of price files, and conversion to centered log returns.

A price file is delimited text (comma or tab) with a calendar-date column and
a strictly positive price column. Returns are computed on consecutive retained
rows, so the step unit is one trading day regardless of calendar gaps.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from datetime import date, datetime
from pathlib import Path

import numpy as np

from .errors import NonPositivePrice, ParseError, TooShort

DEFAULT_MIN_LENGTH = 32


@dataclass(frozen=True)
class ColumnFormat:
    """Column mapping and row policy for delimited input files.

    ``date_column`` / ``price_column`` may be 0-based indices or, when the
    file has a header row, column names. ``policy`` is ``"drop"`` (skip bad
    rows, count them) or ``"strict"`` (raise on the first bad row).
    ``header=None`` auto-detects by trying to parse the first row's price
    cell as a number. ``kind`` is ``"prices"`` for date/price files or
    ``"returns"`` for index/value files holding a pre-computed return series.
    """

    date_column: int | str = 0
    price_column: int | str = 1
    delimiter: str | None = None
    date_format: str = "%Y-%m-%d"
    header: bool | None = None
    kind: str = "prices"
    policy: str = "drop"
    min_length: int = DEFAULT_MIN_LENGTH

    def validated(self) -> "ColumnFormat":
        if self.kind not in ("prices", "returns"):
            raise ParseError(f"unknown input kind {self.kind!r}")
        if self.policy not in ("drop", "strict"):
            raise ParseError(f"unknown row policy {self.policy!r}")
        if self.min_length < 2:
            return replace(self, min_length=2)
        return self


@dataclass(frozen=True, eq=False)
class PriceSeries:
    """Dated positive price observations for one index.

    Prices are strictly positive and dates strictly increasing; both are
    enforced at load time. ``dropped_rows`` counts rows rejected under the
    ``drop`` policy, for inclusion in downstream reports.
    """

    name: str
    dates: tuple[date, ...]
    prices: np.ndarray
    dropped_rows: int = 0

    def __post_init__(self):
        object.__setattr__(self, "prices", np.asarray(self.prices, dtype=float))
        self.prices.setflags(write=False)

    def __len__(self) -> int:
        return self.prices.size


@dataclass(frozen=True, eq=False)
class ReturnSeries:
    """Mean-centered log returns with sample-interval metadata.

    ``values[i] = ln(p[i+1]/p[i]) - raw_mean`` where ``raw_mean`` is the mean
    log return that was subtracted. All levels downstream are therefore
    measured relative to the mean return.
    """

    name: str
    values: np.ndarray
    raw_mean: float
    step: str = "trading-day"
    dropped_rows: int = 0

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        self.values.setflags(write=False)

    def __len__(self) -> int:
        return self.values.size


def as_values(y) -> np.ndarray:
    """Return the underlying float array of a ReturnSeries or array-like."""
    if isinstance(y, ReturnSeries):
        return y.values
    return np.asarray(y, dtype=float)


def series_like(y, values: np.ndarray, name: str | None = None):
    """Rewrap ``values`` as the same type as ``y`` (ReturnSeries or ndarray)."""
    if isinstance(y, ReturnSeries):
        return replace(y, values=values, name=name or y.name)
    return values


def _sniff_delimiter(line: str) -> str:
    return "\t" if "\t" in line else ","


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except (TypeError, ValueError):
        return False
    return True


def _read_rows(path, fmt: ColumnFormat):
    """Yield (line_number, row) for data rows; resolve named columns.

    Returns (rows, date_idx, value_idx). Raises ParseError for structural
    problems (missing file is left to the caller as FileNotFoundError).
    """
    text = Path(path).read_text(encoding="utf-8-sig")
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines:
        raise TooShort(f"{path}: file contains no data rows")

    delim = fmt.delimiter or _sniff_delimiter(lines[0][1])
    parsed = [(no, next(csv.reader([ln], delimiter=delim))) for no, ln in lines]

    first_row = parsed[0][1]
    has_header = fmt.header
    if has_header is None:
        probe = fmt.price_column if isinstance(fmt.price_column, int) else None
        if probe is not None and probe < len(first_row):
            has_header = not _is_number(first_row[probe])
        else:
            has_header = True  # named columns imply a header

    def resolve(col, default):
        if isinstance(col, int):
            return col
        if not has_header:
            raise ParseError(f"named column {col!r} requires a header row", line=1)
        try:
            return first_row.index(col)
        except ValueError:
            raise ParseError(f"column {col!r} not found in header", line=1) from None

    date_idx = resolve(fmt.date_column, 0)
    value_idx = resolve(fmt.price_column, 1)
    rows = parsed[1:] if has_header else parsed
    return rows, date_idx, value_idx


def load_prices(path, fmt: ColumnFormat | None = None, name: str | None = None) -> PriceSeries:
    """Load and validate a delimited price file.

    Parameters
    ----------
    path : str or Path
        Input file. Missing files raise FileNotFoundError.
    fmt : ColumnFormat, optional
        Column mapping, date format, row policy and length floor.
    name : str, optional
        Series identifier; defaults to the file stem.

    Returns
    -------
    PriceSeries
        Validated series. Under ``policy="drop"`` rows with non-numeric,
        non-positive or unparseable values are skipped and counted; under
        ``policy="strict"`` the first such row raises.
    """
    fmt = (fmt or ColumnFormat()).validated()
    rows, date_idx, price_idx = _read_rows(path, fmt)

    dates: list[date] = []
    prices: list[float] = []
    lines: list[int] = []
    dropped = 0
    for line_no, row in rows:
        if max(date_idx, price_idx) >= len(row):
            if fmt.policy == "strict":
                raise ParseError("too few columns", line=line_no)
            dropped += 1
            continue
        try:
            day = datetime.strptime(row[date_idx].strip(), fmt.date_format).date()
        except ValueError:
            if fmt.policy == "strict":
                raise ParseError(f"bad date {row[date_idx]!r}", line=line_no) from None
            dropped += 1
            continue
        cell = row[price_idx].strip()
        if not _is_number(cell) or not math.isfinite(float(cell)):
            if fmt.policy == "strict":
                raise ParseError(f"bad price {cell!r}", line=line_no)
            dropped += 1
            continue
        price = float(cell)
        if price <= 0.0:
            if fmt.policy == "strict":
                raise NonPositivePrice(f"non-positive price {cell!r}", line=line_no)
            dropped += 1
            continue
        dates.append(day)
        prices.append(price)
        lines.append(line_no)

    for k in range(1, len(dates)):
        if dates[k] <= dates[k - 1]:
            raise ParseError(f"dates not strictly increasing ({dates[k]})", line=lines[k])
    if len(prices) < fmt.min_length:
        raise TooShort(
            f"{path}: {len(prices)} usable rows, need at least {fmt.min_length}"
        )
    return PriceSeries(
        name=name or Path(path).stem,
        dates=tuple(dates),
        prices=np.asarray(prices, dtype=float),
        dropped_rows=dropped,
    )


def load_returns(path, fmt: ColumnFormat | None = None, name: str | None = None) -> ReturnSeries:
    """Load a pre-computed return series from an index/value file.

    The value column is taken from ``fmt.price_column``; the first column is
    an arbitrary row index and is ignored. Values are re-centered so the
    series mean is zero, with the subtracted mean kept as ``raw_mean``.
    """
    fmt = (fmt or ColumnFormat()).validated()
    rows, _, value_idx = _read_rows(path, fmt)

    values: list[float] = []
    dropped = 0
    for line_no, row in rows:
        cell = row[value_idx].strip() if value_idx < len(row) else ""
        if not _is_number(cell) or not math.isfinite(float(cell)):
            if fmt.policy == "strict":
                raise ParseError(f"bad value {cell!r}", line=line_no)
            dropped += 1
            continue
        values.append(float(cell))

    # a return series of length n corresponds to n+1 prices
    if len(values) < fmt.min_length - 1:
        raise TooShort(
            f"{path}: {len(values)} usable rows, need at least {fmt.min_length - 1}"
        )
    raw = np.asarray(values, dtype=float)
    mean = float(raw.mean())
    return ReturnSeries(
        name=name or Path(path).stem,
        values=raw - mean,
        raw_mean=mean,
        dropped_rows=dropped,
    )


def log_returns(prices: PriceSeries) -> ReturnSeries:
    """Centered log returns of a price series.

    ``values[i] = ln(p[i+1]) - ln(p[i]) - raw_mean``, one value per
    consecutive pair of retained rows, so ``len(returns) == len(prices) - 1``.
    """
    if len(prices) < 2:
        raise TooShort(f"{prices.name}: need at least 2 prices for returns")
    raw = np.diff(np.log(prices.prices))
    mean = float(raw.mean())
    return ReturnSeries(
        name=prices.name,
        values=raw - mean,
        raw_mean=mean,
        step="trading-day",
        dropped_rows=prices.dropped_rows,
    )

"""Tick-data ingestion: headerless `unixtime,price,amount` CSV streams.

The parser is a single pass over the stream and never materializes the
text; records land in compact typed buffers and come out as numpy
arrays sorted by timestamp (stable, so trades that share a timestamp
keep file order).
"""

import gzip
import io
import math
from array import array
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyInput, MalformedLine, NonPositivePrice

STRICT = "strict"
LENIENT = "lenient"


@dataclass(frozen=True)
class TickRecord:
    """One trade: integer unix seconds, price in quote currency, volume."""

    timestamp: int
    price: float
    volume: float

    def __post_init__(self):
        if not self.price > 0:
            raise ValueError(f"price must be > 0, got {self.price}")
        if self.volume < 0:
            raise ValueError(f"volume must be >= 0, got {self.volume}")


@dataclass
class TickSeries:
    """Column-oriented trade series, sorted by timestamp.

    `n_skipped` counts lines dropped by a lenient parse; equality
    compares only the data columns, not the metadata.
    """

    timestamps: np.ndarray
    prices: np.ndarray
    volumes: np.ndarray
    source_label: str = ""
    n_skipped: int = 0

    def __len__(self):
        return len(self.timestamps)

    def record(self, i):
        return TickRecord(int(self.timestamps[i]), float(self.prices[i]),
                          float(self.volumes[i]))

    def __iter__(self):
        for i in range(len(self)):
            yield self.record(i)

    def __eq__(self, other):
        if not isinstance(other, TickSeries):
            return NotImplemented
        return (np.array_equal(self.timestamps, other.timestamps)
                and np.array_equal(self.prices, other.prices)
                and np.array_equal(self.volumes, other.volumes))

    @classmethod
    def from_records(cls, records, source_label=""):
        ts = np.array([r.timestamp for r in records], dtype=np.int64)
        ps = np.array([r.price for r in records], dtype=np.float64)
        vs = np.array([r.volume for r in records], dtype=np.float64)
        order = np.argsort(ts, kind="stable")
        return cls(ts[order], ps[order], vs[order], source_label=source_label)


def _as_text(stream):
    # accept byte or text streams; CSV content is ASCII
    probe = stream.read(0)
    if isinstance(probe, bytes):
        return io.TextIOWrapper(stream, encoding="ascii", errors="replace")
    return stream


def parse_tick_csv(stream, strictness=STRICT, source_label=""):
    """Parse a `unixtime,price,amount` CSV stream into a TickSeries.

    Parameters
    ----------
    stream : file-like
        Byte or text stream of headerless CSV lines (LF or CRLF).
    strictness : {"strict", "lenient"}
        Strict raises on the first bad line; lenient counts and skips.
    source_label : str
        Free-form provenance tag stored on the result.

    Returns
    -------
    TickSeries
        Records sorted by timestamp; ties keep file order.

    Raises
    ------
    MalformedLine
        Strict mode, a line without exactly 3 numeric fields.
    NonPositivePrice
        Strict mode, a parsable line whose price is <= 0.
    EmptyInput
        No valid records in the stream.
    """
    if strictness not in (STRICT, LENIENT):
        raise ValueError(f"unknown strictness {strictness!r}")
    strict = strictness == STRICT

    ts = array("q")
    ps = array("d")
    vs = array("d")
    skipped = 0

    for line_no, line in enumerate(_as_text(stream), start=1):
        line = line.rstrip("\r\n")
        parts = line.split(",")
        if len(parts) != 3:
            if strict:
                raise MalformedLine(line_no, f"expected 3 fields, got {len(parts)}")
            skipped += 1
            continue
        try:
            t = int(parts[0])
            p = float(parts[1])
            v = float(parts[2])
        except ValueError:
            if strict:
                raise MalformedLine(line_no, "non-numeric field") from None
            skipped += 1
            continue
        if not (math.isfinite(p) and math.isfinite(v)) or v < 0:
            if strict:
                raise MalformedLine(line_no, "non-finite value or negative volume")
            skipped += 1
            continue
        if p <= 0:
            if strict:
                raise NonPositivePrice(line_no)
            skipped += 1
            continue
        ts.append(t)
        ps.append(p)
        vs.append(v)

    if not ts:
        raise EmptyInput("no valid tick records in input")

    t_arr = np.frombuffer(ts, dtype=np.int64).copy()
    p_arr = np.frombuffer(ps, dtype=np.float64).copy()
    v_arr = np.frombuffer(vs, dtype=np.float64).copy()
    order = np.argsort(t_arr, kind="stable")
    return TickSeries(t_arr[order], p_arr[order], v_arr[order],
                      source_label=source_label, n_skipped=skipped)


def serialize_tick_csv(ticks, stream):
    """Write a TickSeries as `unixtime,price,amount` lines.

    Floats use shortest round-trip formatting so that
    parse(serialize(ticks)) reproduces the series exactly.
    """
    write = stream.write
    t, p, v = ticks.timestamps, ticks.prices, ticks.volumes
    for i in range(len(ticks)):
        write(f"{t[i]},{float(p[i])!r},{float(v[i])!r}\n")


def deduplicate(ticks):
    """Collapse exact duplicate records (same t, p, v) to one.

    The first occurrence survives; distinct trades at the same
    timestamp are all retained in their original order.
    """
    n = len(ticks)
    if n == 0:
        return ticks
    rows = np.empty(n, dtype=[("t", np.int64), ("p", np.float64), ("v", np.float64)])
    rows["t"] = ticks.timestamps
    rows["p"] = ticks.prices
    rows["v"] = ticks.volumes
    _, first_idx = np.unique(rows, return_index=True)
    keep = np.sort(first_idx)
    return TickSeries(ticks.timestamps[keep], ticks.prices[keep],
                      ticks.volumes[keep], source_label=ticks.source_label,
                      n_skipped=ticks.n_skipped)


def read_tick_file(path, strictness=LENIENT):
    """Parse a tick CSV file; transparently decompresses `*.gz`."""
    opener = gzip.open if str(path).endswith(".gz") else open
    with opener(path, "rt") as fh:
        return parse_tick_csv(fh, strictness=strictness, source_label=str(path))

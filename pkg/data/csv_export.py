"""CSV writers for coefficient streams and residual tables."""

from __future__ import annotations

import csv
import threading
from typing import Iterable, Sequence, TextIO

from series.sieve import CoefficientStream


class CsvTableWriter:
    """Header row first, then one flushed row per call.

    All public methods are thread-safe.
    """

    HEADER: Sequence[str] = ()

    def __init__(self, stream: TextIO, header: Sequence[str] | None = None):
        self._lock = threading.Lock()
        self._file = stream
        self._writer = csv.writer(self._file, lineterminator="\n")
        self._writer.writerow(list(header or self.HEADER))
        self._file.flush()

    def write(self, row: Iterable) -> None:
        with self._lock:
            self._writer.writerow(list(row))
            self._file.flush()


class CoefficientWriter(CsvTableWriter):
    """(n, a_n) for every n with a_n != 0, ascending."""

    HEADER = ["n", "a_n"]

    def write_stream(self, stream: CoefficientStream) -> int:
        rows = 0
        for n, value in stream.nonzero():
            self.write([n, value])
            rows += 1
        return rows


class ResidualWriter(CsvTableWriter):
    HEADER = [
        "X", "exact_count", "main_term", "residual",
        "residual/X^(1/4)", "residual/(X^(1/4) log X)",
    ]


class OracleComparisonWriter(CsvTableWriter):
    HEADER = ["conductor", "series", "oracle", "match"]

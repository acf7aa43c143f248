"""Line-delimited JSON with a fixed key order."""

from __future__ import annotations

import json
import threading
from typing import Any, Dict, TextIO

from euler.precision import HighPrecReal


def constant_record(name: str, d: int, value: HighPrecReal) -> Dict[str, Any]:
    return {
        "constant": name,
        "D": d,
        "value": value.to_decimal_string(),
        "error_bound": value.error_string(),
        "precision_bits": value.precision_bits,
    }


class JsonLinesWriter:
    """One JSON object per line; keys keep insertion order."""

    def __init__(self, stream: TextIO):
        self._file = stream
        self._lock = threading.Lock()

    def emit(self, record: Dict[str, Any]) -> None:
        line = json.dumps(record, ensure_ascii=False, separators=(", ", ": "))
        with self._lock:
            self._file.write(line + "\n")
            self._file.flush()

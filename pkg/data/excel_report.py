"""Verification workbook using openpyxl."""

from __future__ import annotations

import threading
from datetime import datetime
from pathlib import Path
from typing import Optional


class VerificationWorkbook:
    """Maintains a verify_report.xlsx with one row per acceptance check.

    Columns: timestamp, check, passed, detail, elapsed_s

    All public methods are thread-safe. The workbook is saved after
    every write so a crashed run keeps its finished checks.
    """

    HEADER = ["timestamp", "check", "passed", "detail", "elapsed_s"]

    def __init__(self, path: Path):
        self._path = path
        self._lock = threading.Lock()
        self._wb: Optional[object] = None
        self._ws: Optional[object] = None
        self._init_workbook()

    def _init_workbook(self) -> None:
        try:
            from openpyxl import Workbook
            self._wb = Workbook()
            self._ws = self._wb.active
            self._ws.title = "Acceptance"
            self._ws.append(self.HEADER)
            for col_idx, header in enumerate(self.HEADER, 1):
                self._ws.column_dimensions[chr(64 + col_idx)].width = max(len(header) + 2, 15)
            self._ws.column_dimensions["D"].width = 80
            self._wb.save(str(self._path))
        except ImportError:
            self._wb = None
            self._ws = None

    def log_check(self, check: str, passed: bool, detail: str = "", elapsed_s: float = 0.0) -> None:
        """Append a check result row and save immediately."""
        if self._ws is None:
            return
        with self._lock:
            self._ws.append([
                datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
                check,
                "PASS" if passed else "FAIL",
                detail,
                round(elapsed_s, 3),
            ])
            self._wb.save(str(self._path))

    @property
    def available(self) -> bool:
        return self._wb is not None

"""Per-run output folder for verification reports."""

from __future__ import annotations

import json
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Iterable

from config.settings import CensusConfig


class ReportManager:
    """Creates and manages one verification report directory.

    Layout::

        <base>/verify_YYYY-MM-DD_HH-MM-SS/
            verify_report.xlsx
            verify_config.json
            results.jsonl
            verify.log
    """

    def __init__(self, config: CensusConfig, base_dir: Path):
        self.config = config
        self.timestamp = datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
        self.report_dir = Path(base_dir) / f"verify_{self.timestamp}"

    def create(self) -> Path:
        """Create the directory, snapshot the config, return the directory."""
        self.report_dir.mkdir(parents=True, exist_ok=True)
        self.config.save(self.report_dir / "verify_config.json")
        return self.report_dir

    @property
    def workbook_path(self) -> Path:
        return self.report_dir / "verify_report.xlsx"

    @property
    def results_path(self) -> Path:
        return self.report_dir / "results.jsonl"

    def write_results(self, records: Iterable[Dict[str, Any]]) -> None:
        with open(self.results_path, "w", encoding="utf-8") as f:
            for record in records:
                f.write(json.dumps(record) + "\n")

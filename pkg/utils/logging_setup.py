"""Console + per-run file logging configuration."""

from __future__ import annotations

import logging
import sys
from pathlib import Path

REPORT_HANDLER = "verify_report"


def setup_logging(report_dir: Path | None = None, level: int = logging.INFO) -> None:
    """Configure root logger with console + optional file handler.

    The console handler writes to stderr so that stdout stays reserved
    for JSON/CSV output.

    Any report file handler from a previous call is closed first.

    Args:
        report_dir: If provided, a ``verify.log`` file handler is added.
        level: Logging level for both handlers.
    """
    root = logging.getLogger()
    root.setLevel(level)

    fmt = logging.Formatter(
        "%(asctime)s | %(levelname)-8s | %(name)-25s | %(message)s",
        datefmt="%H:%M:%S",
    )

    # Console handler (only add once)
    console = next(
        (h for h in root.handlers
         if isinstance(h, logging.StreamHandler) and getattr(h, "stream", None) is sys.stderr),
        None,
    )
    if console is None:
        console = logging.StreamHandler(sys.stderr)
        console.setFormatter(fmt)
        root.addHandler(console)
    console.setLevel(level)

    for handler in [h for h in root.handlers if h.get_name() == REPORT_HANDLER]:
        root.removeHandler(handler)
        handler.close()

    # File handler for a verification run
    if report_dir is not None:
        report_dir.mkdir(parents=True, exist_ok=True)
        fh = logging.FileHandler(report_dir / "verify.log", encoding="utf-8")
        fh.setLevel(level)
        fh.setFormatter(fmt)
        fh.set_name(REPORT_HANDLER)
        root.addHandler(fh)

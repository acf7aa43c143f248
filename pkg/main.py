#!/usr/bin/env python3
"""Cubic field census by quadratic resolvent, entry point.

Usage:
    python main.py constants --d -4
    python main.py count --d 1 --limit 1000000 --oracle
    python main.py series --d -3 --limit 1000 --format csv
    python main.py verify --quick --report-dir reports
    python main.py alpha --mu 1/2
    python main.py residuals --d 1 --checkpoints 10000,100000
"""

from __future__ import annotations

import sys
from pathlib import Path

# Ensure the package root is on sys.path so relative imports work
_ROOT = Path(__file__).resolve().parent
if str(_ROOT) not in sys.path:
    sys.path.insert(0, str(_ROOT))

from cli.app import run


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

import io
import json
import logging
import threading

import pytest

from config.settings import PRIME_CACHE_ENV, CensusConfig
from data.csv_export import CoefficientWriter, OracleComparisonWriter, ResidualWriter
from data.excel_report import VerificationWorkbook
from data.json_lines import JsonLinesWriter, constant_record
from data.report_manager import ReportManager
from euler.precision import HighPrecReal
from series.sieve import coefficients
from series.spec import cyclic_spec
from utils.logging_setup import REPORT_HANDLER, setup_logging
from utils.threading_utils import MemoCache, run_in_threads
from utils.timing import Stopwatch


# --- Config ---

def test_default_config_is_valid():
    assert CensusConfig().validate() == []


def test_config_validation_errors():
    cfg = CensusConfig()
    cfg.precision.bits = 64
    cfg.precision.prime_cutoff = 10
    cfg.sieve.workers = 0
    errors = cfg.validate()
    assert len(errors) == 3


def test_config_from_env(monkeypatch, tmp_path):
    monkeypatch.setenv(PRIME_CACHE_ENV, str(tmp_path / "primes.bin"))
    assert CensusConfig.from_env().sieve.prime_cache.endswith("primes.bin")
    monkeypatch.delenv(PRIME_CACHE_ENV)
    assert CensusConfig.from_env().sieve.prime_cache == ""


def test_config_snapshot(tmp_path):
    cfg = CensusConfig()
    cfg.save(tmp_path / "cfg.json")
    saved = json.loads((tmp_path / "cfg.json").read_text())
    assert saved["precision"]["bits"] == 256
    assert saved["verify"]["residual_checkpoints"] == [10**4, 10**5, 10**6]
    assert cfg.working_bits == 288


# --- Writers ---

def test_coefficient_writer():
    out = io.StringIO()
    rows = CoefficientWriter(out).write_stream(coefficients(cyclic_spec(), 20))
    assert rows == 4
    assert out.getvalue() == "n,a_n\n7,1\n9,1\n13,1\n19,1\n"


def test_table_headers():
    out = io.StringIO()
    ResidualWriter(out)
    OracleComparisonWriter(out)
    lines = out.getvalue().splitlines()
    assert lines[0].startswith("X,exact_count,main_term,residual")
    assert lines[1] == "conductor,series,oracle,match"


def test_json_lines_keep_key_order():
    out = io.StringIO()
    value = HighPrecReal.from_value(1, 128)
    JsonLinesWriter(out).emit(constant_record("C", -4, value))
    record = json.loads(out.getvalue())
    assert list(record) == ["constant", "D", "value", "error_bound", "precision_bits"]
    assert record["D"] == -4 and record["precision_bits"] == 128


def test_workbook(tmp_path):
    pytest.importorskip("openpyxl")
    from openpyxl import load_workbook

    path = tmp_path / "report.xlsx"
    wb = VerificationWorkbook(path)
    assert wb.available
    wb.log_check("cyclic_constant", True, "ok", 0.25)
    wb.log_check("oracle_equivalence", False, "1 mismatch", 1.5)
    ws = load_workbook(path).active
    rows = list(ws.iter_rows(values_only=True))
    assert list(rows[0]) == VerificationWorkbook.HEADER
    assert rows[1][1:3] == ("cyclic_constant", "PASS")
    assert rows[2][2] == "FAIL"


def test_report_manager(tmp_path):
    manager = ReportManager(CensusConfig(), tmp_path)
    path = manager.create()
    assert (path / "verify_config.json").exists()
    assert path.name.startswith("verify_")
    manager.write_results([{"check": "a", "passed": True}])
    assert json.loads(manager.results_path.read_text()) == {"check": "a", "passed": True}


# --- Threading and timing ---

def test_run_in_threads_keeps_order():
    items = list(range(50))
    assert run_in_threads(lambda x: x * x, items, workers=4) == [x * x for x in items]
    assert run_in_threads(lambda x: -x, items, workers=1) == [-x for x in items]


def test_memo_cache_computes_once():
    cache = MemoCache()
    calls = []
    lock = threading.Lock()

    def compute():
        with lock:
            calls.append(1)
        return 42

    assert cache.get_or_compute("k", compute) == 42
    assert cache.get_or_compute("k", compute) == 42
    assert len(calls) == 1 and len(cache) == 1
    cache.clear()
    assert len(cache) == 0


def test_stopwatch_freezes():
    with Stopwatch() as sw:
        pass
    first = sw.elapsed
    assert first >= 0
    assert sw.elapsed == first


def test_report_log_handlers_do_not_accumulate(tmp_path):
    root = logging.getLogger()
    try:
        setup_logging(tmp_path / "a")
        first = [h for h in root.handlers if h.get_name() == REPORT_HANDLER]
        setup_logging(tmp_path / "b")
        second = [h for h in root.handlers if h.get_name() == REPORT_HANDLER]
        assert len(first) == 1 and len(second) == 1
        assert first[0] is not second[0]
        assert first[0].stream is None
        assert (tmp_path / "b" / "verify.log").exists()
    finally:
        setup_logging()
    assert not [h for h in root.handlers if h.get_name() == REPORT_HANDLER]

import io
import json

import pytest

from cli.app import EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED, build_parser, run
from cli.command import Command, parse_checkpoints, parse_mu
from core.enums import Verb

FAST = ["--precision", "128", "--prime-cutoff", "1000"]


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


# --- Parsing ---

def test_parse_mu():
    assert parse_mu("1/2") == pytest.approx(0.5)
    assert isinstance(parse_mu("0"), int)
    assert isinstance(parse_mu("0.5"), float)


def test_parse_checkpoints():
    assert parse_checkpoints("100,1e4, 1000000") == (100, 10_000, 10**6)


def test_command_validation():
    assert Command(Verb.COUNT, d=1, limit=10).validate() == []
    assert Command(Verb.COUNT, d=5, limit=10, oracle=True).validate()
    assert Command(Verb.COUNT, d=1, limit=10, oracle=True, by_discriminant=True).validate()
    assert Command(Verb.SERIES, d=1).validate()
    assert Command(Verb.ALPHA, mu="abc").validate()
    assert Command(Verb.RESIDUALS, d=1, checkpoints=(100, 10)).validate()
    assert Command(Verb.CONSTANTS, d=1, precision_bits=64).validate()


def test_parser_has_every_verb():
    parser = build_parser()
    for verb in Verb:
        args = parser.parse_args([verb.value] + {
            Verb.CONSTANTS: ["--d", "1"],
            Verb.COUNT: ["--d", "1", "--limit", "10"],
            Verb.SERIES: ["--d", "1", "--limit", "10"],
            Verb.VERIFY: [],
            Verb.ALPHA: ["--mu", "0"],
            Verb.RESIDUALS: ["--d", "1", "--checkpoints", "10"],
        }[verb])
        assert args.verb == verb.value


# --- Verbs ---

def test_alpha_float_and_fraction():
    assert call("alpha", "--mu", "0.5") == (EXIT_OK, "0.6666666666666667\n")
    assert call("alpha", "--mu", "1/2") == (EXIT_OK, "2/3\n")
    assert call("alpha", "--mu", "0") == (EXIT_OK, "1/2\n")


def test_alpha_rejects_negative_mu():
    assert call("alpha", "--mu", "-1")[0] == EXIT_USAGE


def test_count_json():
    code, out = call("count", "--d", "1", "--limit", "100", "--format", "json", *FAST)
    assert code == EXIT_OK
    record = json.loads(out.splitlines()[0])
    assert record["exact_count"] == 16
    assert record["case"] == "cyclic"


def test_count_with_oracle():
    code, out = call("count", "--d", "-3", "--limit", "2000", "--oracle", "--format", "csv", *FAST)
    assert code == EXIT_OK
    assert "MISMATCH" not in out
    assert "conductor,series,oracle,match" in out


def test_oracle_needs_a_known_case():
    assert call("count", "--d", "-4", "--limit", "100", "--oracle")[0] == EXIT_USAGE


def test_series_csv():
    code, out = call("series", "--d", "1", "--limit", "20", "--format", "csv", *FAST)
    assert code == EXIT_OK
    assert out == "n,a_n\n7,1\n9,1\n13,1\n19,1\n"


def test_series_refuses_main_part_only():
    assert call("series", "--d", "-23", "--limit", "100")[0] == EXIT_USAGE


def test_constants_json_routes():
    code, out = call("constants", "--d", "-4", "--format", "json", *FAST)
    assert code == EXIT_OK
    records = [json.loads(line) for line in out.splitlines()]
    assert [r["constant"] for r in records] == ["C", "C_alt", "C_route_delta"]
    assert float(records[2]["value"]) < 1e-25


def test_constants_pure_cubic_text():
    code, out = call("constants", "--d", "-3", *FAST)
    assert code == EXIT_OK
    assert out.startswith("C(D=-3) = 0.0669077333013783712918416329")
    assert "D(D=-3) = 3.4502227978305919627907119196" in out


def test_residuals_json():
    code, out = call("residuals", "--d", "1", "--checkpoints", "100,10000", "--format", "json", *FAST)
    assert code == EXIT_OK
    rows = [json.loads(line) for line in out.splitlines()]
    assert [r["X"] for r in rows] == [100, 10_000]


def test_usage_errors():
    assert call("nonsense")[0] == EXIT_USAGE
    assert call("count", "--d", "-12", "--limit", "10", *FAST)[0] == EXIT_USAGE
    assert call("count", "--d", "1", "--limit", str(2 * 10**9), *FAST)[0] == EXIT_USAGE
    assert call("residuals", "--d", "1", "--checkpoints", "10,abc")[0] == EXIT_USAGE
    assert call("residuals", "--d", "1", "--checkpoints", "100,10")[0] == EXIT_USAGE
    assert call("constants", "--d", "1", "--precision", "64")[0] == EXIT_USAGE


@pytest.mark.slow
def test_quick_verification_writes_report(tmp_path):
    code, out = call("verify", "--quick", "--report-dir", str(tmp_path), *FAST)
    assert code in (EXIT_OK, EXIT_VERIFY_FAILED)
    assert code == EXIT_OK, out
    report = next(tmp_path.glob("verify_*"))
    assert (report / "verify_config.json").exists()
    assert (report / "results.jsonl").exists()
    assert len((report / "results.jsonl").read_text().splitlines()) == 10


# --- Acceptance runner ---

def test_cheap_acceptance_checks(config):
    from cli.verify import AcceptanceRunner

    runner = AcceptanceRunner(config, quick=True)
    for check in (runner.check_alpha, runner.check_c3_identity, runner.check_gate, runner.check_anchor):
        passed, detail = check()
        assert passed, detail
    assert len(runner.gated_discriminants()) == config.verify.quick_gated_count

import json

import jsonschema
import pytest

from tring import cli
from tring.verify import REPORT_SCHEMA, Bounds, CheckResult, SuiteReport


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval(capsys):
    code, out, _ = run_cli(capsys, "eval", "t0^2*t1 + 2*t0*t1^2")
    assert code == 0
    assert out == "t0^2*t1 + 2*t0*t1^2\n"


def test_dot_odot_iota(capsys):
    code, out, _ = run_cli(capsys, "dot", "t1", "t1")
    assert (code, out) == (0, "t1^2 + 2*t1*t2\n")
    code, out, _ = run_cli(capsys, "odot", "1", "t0+t1")
    assert (code, out) == (0, "t0*t1 + t1^2 + 2*t1*t2\n")
    code, out, _ = run_cli(capsys, "iota", "t0^2*t1")
    assert code == 0
    assert out == (
        "t0^2*t1 + 2*t0*t1^2 + 4*t0*t1*t2 + t1^3 + 3*t1^2*t2 + 3*t1*t2^2"
        " + 6*t1*t2*t3\n"
    )


def test_basis(capsys):
    code, out, _ = run_cli(capsys, "basis", "t1")
    assert (code, out) == (0, "1 * (1 (*) 1)\n")
    code, out, _ = run_cli(capsys, "basis", "t0")
    assert (code, out) == (0, "1 * (t0)\n")
    code, out, _ = run_cli(capsys, "basis", "t0*t1 + t1^2 + 2*t1*t2")
    assert (code, out) == (0, "1 * (1 (*) t0) + 1 * (1 (*) 1 (*) 1)\n")
    code, out, _ = run_cli(capsys, "basis", "t1", "--which", "iota-basis")
    assert (code, out) == (0, "1 * (1 (*) 1)\n")
    code, out, _ = run_cli(capsys, "basis", "0")
    assert (code, out) == (0, "0\n")


def test_parse_and_validation_errors(capsys):
    code, _, err = run_cli(capsys, "eval", "t1 +")
    assert code == 2 and "error" in err
    code, _, err = run_cli(capsys, "eval", "t1*t3")
    assert code == 2 and "t1*t3" in err
    code, _, err = run_cli(capsys, "verify", "ring", "--base", "/no/such/file")
    assert code == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "no-such-suite"])
    assert exc.value.code == 2


def test_verify_json_schema(capsys):
    code, out, _ = run_cli(capsys, "verify", "dim", "--max-degree", "6", "--json")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, REPORT_SCHEMA)
    assert payload["suite"] == "dim"
    assert payload["total"] == 7
    assert "duration_seconds" not in payload


def test_verify_json_timings(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "dim", "--max-degree", "3", "--json", "--timings"
    )
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, REPORT_SCHEMA)
    assert "duration_seconds" in payload


def test_verify_deterministic_output(capsys):
    first = run_cli(capsys, "verify", "identity", "--max-n", "4", "--json")
    second = run_cli(capsys, "verify", "identity", "--max-n", "4", "--json")
    assert first == second
    first = run_cli(capsys, "verify", "ring", "--seed", "7")
    second = run_cli(capsys, "verify", "ring", "--seed", "7")
    assert first == second


def test_verify_seed_recorded(capsys):
    code, out, _ = run_cli(capsys, "verify", "ring", "--seed", "99", "--json")
    assert code == 0
    assert json.loads(out)["seed"] == 99


def test_verify_failure_exit_code(capsys, monkeypatch):
    def failing(bounds: Bounds) -> SuiteReport:
        report = SuiteReport("ring", bounds.seed, {})
        report.checks.append(
            CheckResult("forced", "unit test", False, "synthetic counterexample")
        )
        return report

    from tring import verify

    monkeypatch.setitem(verify.SUITES, "ring", failing)
    code, out, _ = run_cli(capsys, "verify", "ring")
    assert code == 1
    assert "FAIL" in out and "synthetic counterexample" in out


def test_verify_with_config_file(capsys, tmp_path):
    # an axiom run at arity <= 2 produces intermediate arities up to 4,
    # so the config must declare those algebras and clutching maps
    lines = []
    for arity in (2, 3, 4):
        lines += [
            f"[algebra n={arity}]",
            "basis one deg 0",
            "basis h deg 1",
            "mul one one = one",
            "mul one h = h",
            "mul h h = 0",
        ]
        lines += [f"phi {slot} = h" for slot in range(arity + 1)]
    for m, n in ((2, 2), (3, 2), (2, 3)):
        for j in range(1, m + 1):
            lines += [
                f"clutch m={m} n={n} j={j} one one = one",
                f"clutch m={m} n={n} j={j} one h = h",
                f"clutch m={m} n={n} j={j} h one = h",
                f"clutch m={m} n={n} j={j} h h = 0",
            ]
    config = tmp_path / "tiny.base"
    config.write_text("\n".join(lines))
    code, out, _ = run_cli(
        capsys,
        "verify",
        "operad-axioms",
        "--base",
        str(config),
        "--max-arity",
        "2",
        "--max-degree",
        "1",
    )
    assert code == 0
    assert "axiom4" in out

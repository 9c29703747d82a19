"""Byte-level golden tests and exit-code behavior of the command front-end."""

import io
import json
from contextlib import redirect_stdout
from pathlib import Path

import pytest

from henselk.cli import main, run_command

from cli_cases import CASES

GOLDEN_DIR = Path(__file__).parent / "golden"


def invoke(argv) -> tuple[str, int]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return buf.getvalue(), code


@pytest.mark.parametrize("name,argv,expected_code",
                         CASES, ids=[c[0] for c in CASES])
def test_golden_bytes(name, argv, expected_code):
    golden = (GOLDEN_DIR / f"{name}.out").read_text()
    out1, code1 = invoke(argv)
    out2, code2 = invoke(argv)
    assert code1 == expected_code and code2 == expected_code
    assert out1 == out2
    assert out1 == golden


def test_json_records_are_line_delimited():
    out, code = invoke(["puiseux", "y^2 - x^2 - x^3", "--order", "6"])
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 2
    for line in lines:
        rec = json.loads(line)
        assert rec["status"] == "ok" and rec["ram_index"] == 1


def test_exit_code_mapping():
    assert invoke(["qe", "m >= 1"])[1] == 0
    assert invoke(["hensel-lift", "y^2 - t^2", "0"])[1] == 1
    assert invoke(["parse", "v("])[1] == 2


def test_usage_error_exits_two():
    out, code = invoke(["no-such-command"])
    assert code == 2 and out == ""
    assert invoke([])[1] == 2


def test_run_command_returns_records():
    records, code = run_command(["sat", "m >= 1 & m <= 3"])
    assert code == 0
    assert records[0]["status"] == "ok" and records[0]["satisfiable"] is True


def test_precision_flag_and_environment(monkeypatch):
    out_flag, _ = invoke(["hensel-lift", "y^2 - (1 + t)", "1",
                          "--precision", "6"])
    assert "O(t^6)" in out_flag
    monkeypatch.setenv("HENSELK_PRECISION", "6")
    out_env, _ = invoke(["hensel-lift", "y^2 - (1 + t)", "1"])
    assert out_env == out_flag
    monkeypatch.delenv("HENSELK_PRECISION")
    out_default, _ = invoke(["hensel-lift", "y^2 - (1 + t)", "1"])
    assert "O(t^32)" in out_default


def test_text_format_is_key_value():
    out, code = invoke(["parse", "y^2 - x^3", "--format", "text"])
    assert code == 0
    assert out == "status: ok\nkind: expression\npretty: y^2 - x^3\n"


def test_error_payload_names_the_kind():
    records, code = run_command(["hensel-decompose", "t*y^2 + y"])
    assert code == 1
    assert records[0]["status"] == "error"
    assert records[0]["kind"] == "leading-coefficient-vanishes"

#!/usr/bin/env python3
"""Regenerate the CLI golden files from the shared case table.

Run from the repository root after an intentional output change:

    python3 scripts/make_goldens.py

Every golden is the exact stdout of one CLI invocation; the test suite
replays the same invocations and compares bytes.
"""

import io
import sys
from contextlib import redirect_stdout
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from cli_cases import CASES

from henselk.cli import main


def capture(argv) -> tuple[str, int]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return buf.getvalue(), code


def run() -> int:
    golden_dir = ROOT / "tests" / "golden"
    golden_dir.mkdir(exist_ok=True)
    for name, argv, expected_code in CASES:
        out, code = capture(argv)
        if code != expected_code:
            print(f"FAIL {name}: exit {code}, expected {expected_code}",
                  file=sys.stderr)
            return 1
        again, code2 = capture(argv)
        if (out, code) != (again, code2):
            print(f"FAIL {name}: two runs disagree", file=sys.stderr)
            return 1
        (golden_dir / f"{name}.out").write_text(out)
        print(f"wrote {name}.out ({len(out)} bytes, exit {code})")
    return 0


if __name__ == "__main__":
    sys.exit(run())

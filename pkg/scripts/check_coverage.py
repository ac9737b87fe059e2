#!/usr/bin/env python3
"""Line-coverage gate for the core package using only the standard library.

Counts executed lines (sys.settrace, filtered to openj frames) while running
the test suite in-process, against the executable-line totals recovered from
compiled code objects. Usage:

    python3 scripts/check_coverage.py [--min 80] [pytest args...]
"""

from __future__ import annotations

import argparse
import sys
import threading
import types
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
PACKAGE_DIR = (REPO / "src" / "openj").resolve()


class LineCover:
    def __init__(self, prefix: str):
        self.prefix = prefix
        self.hits: dict[str, set[int]] = {}

    def _trace(self, frame, event, arg):
        filename = frame.f_code.co_filename
        if event == "call":
            return self._trace if filename.startswith(self.prefix) else None
        if event == "line":
            self.hits.setdefault(filename, set()).add(frame.f_lineno)
        return self._trace

    def start(self):
        threading.settrace(self._trace)
        sys.settrace(self._trace)

    def stop(self):
        sys.settrace(None)
        threading.settrace(None)


def executable_lines(path: Path) -> set[int]:
    code = compile(path.read_text(), str(path), "exec")
    lines: set[int] = set()
    stack = [code]
    while stack:
        obj = stack.pop()
        for _, _, lineno in obj.co_lines():
            if lineno is not None:
                lines.add(lineno)
        for const in obj.co_consts:
            if isinstance(const, types.CodeType):
                stack.append(const)
    return lines


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--min", type=float, default=80.0)
    parser.add_argument("pytest_args", nargs="*")
    args = parser.parse_args()

    import pytest

    cover = LineCover(str(PACKAGE_DIR))
    cover.start()
    pytest_args = args.pytest_args or [
        str(REPO / "tests"),
        "--ignore", str(REPO / "tests" / "test_acceptance.py"),
        "-q", "-p", "no:cacheprovider",
    ]
    status = pytest.main(pytest_args)
    cover.stop()
    if status != 0:
        print(f"coverage run aborted: pytest exited {status}")
        return 2

    total_exec = 0
    total_hit = 0
    rows = []
    for path in sorted(PACKAGE_DIR.rglob("*.py")):
        want = executable_lines(path)
        got = cover.hits.get(str(path), set()) & want
        total_exec += len(want)
        total_hit += len(got)
        pct = 100.0 * len(got) / len(want) if want else 100.0
        rows.append((path.relative_to(PACKAGE_DIR), len(want), len(got), pct))

    print(f"\n{'file':44s} {'lines':>6s} {'hit':>6s} {'cover':>7s}")
    for rel, n, h, pct in rows:
        print(f"{str(rel):44s} {n:6d} {h:6d} {pct:6.1f}%")
    overall = 100.0 * total_hit / total_exec if total_exec else 100.0
    print(f"{'TOTAL':44s} {total_exec:6d} {total_hit:6d} {overall:6.1f}%")

    if overall < args.min:
        print(f"FAIL: coverage {overall:.1f}% below the {args.min:.0f}% floor")
        return 1
    print(f"OK: coverage {overall:.1f}% meets the {args.min:.0f}% floor")
    return 0


if __name__ == "__main__":
    sys.exit(main())

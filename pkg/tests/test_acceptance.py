"""Acceptance suite: one test (and one printed PASS/FAIL line) per criterion 1–10.

Run directly with ``python3 tests/test_acceptance.py`` for the table alone.
"""

import subprocess
import sys
import time

import pytest

from milnorfib.io.corpus import ACCEPTANCE

RESULTS: list[tuple[str, bool, str]] = []


def _id(check) -> str:
    return check.__name__.removeprefix("criterion_")


@pytest.mark.parametrize("check", ACCEPTANCE, ids=[f"{k + 1:02d}_{_id(c)}" for k, c in enumerate(ACCEPTANCE)])
def test_criterion(check):
    result = check()
    line = f"{'PASS' if result.ok else 'FAIL'}  criterion {result.name}: {result.detail}"
    RESULTS.append((result.name, result.ok, line))
    print(line)
    assert result.ok, result.detail


def test_corpus_verify_command_under_a_minute():
    """Cold run of ``milnorfib corpus verify`` in a fresh interpreter."""
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "milnorfib", "corpus", "verify"], capture_output=True, text=True)
    elapsed = time.perf_counter() - start
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "FAIL" not in proc.stdout
    assert elapsed < 60, f"corpus verify took {elapsed:.1f}s"


if __name__ == "__main__":
    failed = 0
    for check in ACCEPTANCE:
        r = check()
        failed += not r.ok
        print(f"{'PASS' if r.ok else 'FAIL'}  criterion {r.name}: {r.detail}")
    raise SystemExit(1 if failed else 0)

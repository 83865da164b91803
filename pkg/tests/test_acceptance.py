"""The acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or use
``branchedarc check-all --pretty``.
"""
import time

import pytest

from branchedarc import checks

LINES = []


def _run(name, fn):
    t = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t
    line = f"{'PASS' if ok else 'FAIL'}  criterion {name}  ({dt:.1f}s)"
    LINES.append(line)
    print("\n" + line)
    if not ok:
        print(f"      detail: {detail}")
    return ok, detail, dt


@pytest.mark.parametrize("name,fn", checks.CRITERIA, ids=[n.split()[0] for n, _ in checks.CRITERIA])
def test_criterion(name, fn):
    ok, detail, dt = _run(name, fn)
    assert ok, detail


def test_time_budget():
    # criteria 1 and 2 are meant to be instant
    for fn in (checks.c1_census, checks.c2_structure):
        t = time.perf_counter()
        fn()
        assert time.perf_counter() - t < 1.0

from __future__ import annotations

import functools

import pytest

from liewide.chevalley import build_chevalley
from liewide.rootsys import build_root_system

ACCEPTANCE: dict = {}


@pytest.fixture
def record_acceptance():
    def record(number: int, title: str, passed: bool) -> None:
        ACCEPTANCE[number] = (title, passed)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {title}")


@functools.lru_cache(maxsize=None)
def rs_of(name: str):
    return build_root_system(name)


@functools.lru_cache(maxsize=None)
def g_of(name: str):
    return build_chevalley(rs_of(name))

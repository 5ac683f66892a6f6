from __future__ import annotations

from pathlib import Path

import pytest

from tracematch.bundle import corpus_path, load_bundle
from tracematch.frontend import load_program

ANAGRAM_INPUT = {"s": "bcaa", "t": "acab"}
TOY_INPUT = {"s": "aab", "t": "aba"}


def load_file(path: Path, role: str = "implementation"):
    return load_program(path.read_text(encoding="utf-8"), role, None, str(path))


@pytest.fixture(scope="session")
def anagram_bundle():
    return load_bundle(corpus_path("anagram", "bundle"))


@pytest.fixture(scope="session")
def anagram_impls():
    return {p.stem: load_file(p) for p in sorted(corpus_path("anagram", "impls").glob("*.l"))}


@pytest.fixture(scope="session")
def toy():
    d = corpus_path("counting")
    return {
        "a": load_file(d / "a.l"),
        "b": load_file(d / "b.l"),
        "c": load_file(d / "c.l", "specification"),
    }


# criterion number -> (title, outcomes of its tests)
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, outcomes = ACCEPTANCE[n]
        verdict = "PASS" if outcomes and all(outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict}  {title}")

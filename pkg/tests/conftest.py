import pytest

import framewatch
from framewatch.corpus import build_index, ingest
from framewatch.patterns import compile_patterns
from framewatch.store import load_store

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def fixture_store():
    return load_store(framewatch.data_path(framewatch.DEFAULT_STORE))


@pytest.fixture(scope="session")
def sample_corpus(fixture_store):
    corpus, warnings = ingest(framewatch.data_path(framewatch.SAMPLE_CORPUS), fixture_store)
    assert warnings == []
    return corpus


@pytest.fixture(scope="session")
def sample_index(sample_corpus):
    return build_index(sample_corpus)


@pytest.fixture(scope="session")
def pattern_pack(fixture_store):
    patterns, warnings = compile_patterns(framewatch.data_path(framewatch.DEFAULT_PATTERNS), fixture_store)
    assert warnings == []
    return patterns


def record_criterion(name: str) -> None:
    """Mark an acceptance criterion as passed (tests call this at the end)."""
    _ACCEPTANCE_RESULTS.append((name, "PASS"))


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid and report.failed:
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE_RESULTS.append((name, "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"ACCEPTANCE {name}: {outcome}")

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from topiccoh import ingest_corpus  # noqa: E402

TOY_LINES = ["a b c", "a b", "a c", "b c"]


@pytest.fixture
def toy_index():
    """The 4-document a/b/c corpus."""
    return ingest_corpus(TOY_LINES)


@pytest.fixture
def toy_corpus_file(tmp_path):
    path = tmp_path / "toy.txt"
    path.write_text("\n".join(TOY_LINES) + "\n", encoding="utf-8")
    return path


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config._criteria = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call" and not (call.when == "setup" and call.excinfo):
        return
    number, title = marker.args
    ok = call.excinfo is None
    results = item.config._criteria
    prev = results.get(number, (title, True))
    results[number] = (title, prev[1] and ok)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_criteria", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, ok = results[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}")

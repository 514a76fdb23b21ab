from __future__ import annotations

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(autouse=True)
def _isolated_data_dir(tmp_path, monkeypatch):
    # never touch the user's real cache from the test suite
    monkeypatch.setenv("ZDG_DATA_DIR", str(tmp_path / "zdg-data"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

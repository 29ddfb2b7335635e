"""Shared pytest wiring: surface the acceptance verdict lines.

The acceptance tests record one ``[criterion N] PASS/FAIL`` line each;
printing them from inside a test would be swallowed by capture, so they
are replayed here through the terminal reporter after the run.
"""

import re

acceptance_lines: list[str] = []
_seen_numbers: set[int] = set()
_failed_early: list[str] = []

_NUM = re.compile(r"test_c(\d+)_")
_LINE_NUM = re.compile(r"\[criterion (\d+)\]")


def record(line: str) -> None:
    acceptance_lines.append(line)
    m = _LINE_NUM.search(line)
    if m:
        _seen_numbers.add(int(m.group(1)))


def pytest_runtest_logreport(report):
    # A criterion test that dies before reaching its report call still
    # needs a visible FAIL line.
    if report.when != "call" or not report.failed:
        return
    if "test_acceptance" not in report.nodeid:
        return
    m = _NUM.search(report.nodeid)
    if m and int(m.group(1)) not in _seen_numbers:
        _failed_early.append(
            f"[criterion {m.group(1)}] FAIL: raised before reporting "
            f"({report.nodeid.split('::')[-1]})"
        )


def pytest_terminal_summary(terminalreporter):
    lines = acceptance_lines + _failed_early
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(_LINE_NUM.search(s).group(1))):
        terminalreporter.write_line(line)

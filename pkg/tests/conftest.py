"""Shared pytest wiring.

test_acceptance records one verdict line per criterion through
record_criterion; the terminal-summary hook prints them as a block at the
end of the run so every criterion's pass/fail is visible in one place.
"""

_CRITERION_LINES: list[str] = []


def record_criterion(line: str) -> None:
    _CRITERION_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_CRITERION_LINES):
        terminalreporter.write_line(line)

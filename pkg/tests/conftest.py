"""Shared pytest wiring: replay acceptance verdict lines after the run.

Output is captured at the fd level during tests, so the acceptance suite
records its one-line verdicts here and a terminal-summary hook prints them
where they are always visible.
"""

acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)

"""Shared test plumbing: the acceptance-criteria result board.

Each acceptance test records a one-line verdict here before asserting, so
the terminal summary always shows one pass/fail line per criterion even
when a criterion's assertion fails.
"""

ACCEPTANCE_RESULTS = []


def record_criterion(name, status):
    ACCEPTANCE_RESULTS.append((name, status))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{status.upper():5s}] {name}")

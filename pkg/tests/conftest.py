"""Shared reporting for the acceptance suite.

Each acceptance test records a one-line verdict; they are echoed in the
terminal summary so the pass/fail status of every criterion is visible
even when output capture is on.
"""

_CRITERION_LINES = []


def record_criterion(number, ok, detail):
    status = "PASS" if ok else "FAIL"
    line = f"criterion {number:2d}: {status}  {detail}"
    _CRITERION_LINES.append((number, line))
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_CRITERION_LINES):
            terminalreporter.write_line(line)

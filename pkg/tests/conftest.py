import sys


def pytest_terminal_summary(terminalreporter):
    """Echo the one-line-per-criterion acceptance verdicts, which output
    capture would otherwise hide for passing tests."""
    mod = sys.modules.get("test_acceptance") or sys.modules.get(
        "tests.test_acceptance"
    )
    lines = getattr(mod, "LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

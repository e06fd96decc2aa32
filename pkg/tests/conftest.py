"""Shared pytest wiring: show the acceptance-gate checklist in the summary."""


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from test_acceptance import GATE_LINES
    except ImportError:
        return
    if GATE_LINES:
        terminalreporter.section("acceptance gate checklist")
        for line in GATE_LINES:
            terminalreporter.write_line(line)

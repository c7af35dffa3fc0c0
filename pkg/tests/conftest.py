import acceptance_log


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.LINES:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(acceptance_log.LINES):
        terminalreporter.write_line(acceptance_log.LINES[n])

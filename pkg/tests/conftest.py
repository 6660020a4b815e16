def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import PARTS, summary_line
    except ImportError:
        return
    if not PARTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(PARTS):
        terminalreporter.write_line(summary_line(n))

def pytest_terminal_summary(terminalreporter):
    """Print the acceptance table (one line per criterion) after the run."""
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, _, line in RESULTS:
        terminalreporter.write_line(line)

ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        for name, value in report.user_properties:
            if name == "criterion":
                crit = value
    if crit is None or report.when != "call" and not report.failed:
        return
    prev = ACCEPTANCE.get(crit, True)
    ACCEPTANCE[crit] = prev and report.passed if report.when == "call" else False


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {crit:>2}: {'PASS' if ACCEPTANCE[crit] else 'FAIL'}")

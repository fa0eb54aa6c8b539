"""Shared pytest hooks: prints the acceptance summary after a run that
exercised the acceptance module."""

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = None
    for name, loaded in sys.modules.items():
        if name.rsplit(".", 1)[-1] == "test_acceptance":
            mod = loaded
            break
    if mod is None:
        return
    results = getattr(mod, "RESULTS", {})
    if not results:
        return
    terminalreporter.ensure_newline()
    terminalreporter.section("acceptance")
    for n in sorted(results):
        verdict = "PASS" if results[n] else "FAIL"
        terminalreporter.write_line(f"[acceptance] criterion {n}: {verdict}")

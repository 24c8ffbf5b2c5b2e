from __future__ import annotations

import gen


def pytest_terminal_summary(terminalreporter):
    if not gen.ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(gen.ACCEPTANCE, key=lambda s: int(s.split()[0][1:])):
        terminalreporter.write_line(line)

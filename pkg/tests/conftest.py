import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from helpers import ACCEPTANCE  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, status = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {title}")

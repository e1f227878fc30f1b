import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent))

ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: s.split("criterion")[1]):
            terminalreporter.write_line(line)

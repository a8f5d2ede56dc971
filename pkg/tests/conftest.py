import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """report(n, ok, detail): one line per acceptance criterion."""
    def add(n, ok, detail):
        status = {True: "PASS", False: "FAIL", None: "N/A "}[ok]
        line = f"[{status}] criterion {n:>2}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)

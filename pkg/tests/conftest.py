import pathlib

import pytest

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def iris_csv() -> bytes:
    return (DATA / "iris.csv").read_bytes()


@pytest.fixture(scope="session")
def iris_path() -> pathlib.Path:
    return DATA / "iris.csv"


@pytest.fixture(scope="session")
def worked_example_csv() -> bytes:
    return (DATA / "worked_example.csv").read_bytes()


@pytest.fixture(scope="session")
def worked_example_path() -> pathlib.Path:
    return DATA / "worked_example.csv"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", "call") != "call":
                continue
            if "test_acceptance.py" in report.nodeid:
                name = report.nodeid.split("::")[-1]
                status = "PASS" if outcome == "passed" else "FAIL"
                lines.append(f"{status}  {name}")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: s.split()[-1]):
            terminalreporter.write_line(line)

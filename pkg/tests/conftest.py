import pytest

from semclasses.data import fixture_path
from semclasses.sense_inventory import read_inventory


@pytest.fixture(scope="session")
def fixture_dir():
    return fixture_path()


@pytest.fixture(scope="session")
def fixture_inventory():
    return read_inventory(fixture_path("inventory.tsv"))


# One line per acceptance criterion, printed after the run.
ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    def record(name: str, ok: bool, detail: str = "") -> bool:
        ACCEPTANCE.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        print(ACCEPTANCE[-1])
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)

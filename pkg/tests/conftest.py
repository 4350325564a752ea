import pytest

from rootmult.peterson import MultTable
from rootmult.root_lattice import Shape

S21 = Shape(2, 1)
S22 = Shape(2, 2)

_ACCEPTANCE: dict[str, list[bool]] = {}

CRITERIA = [
    "1. s=2,t=1 table up to (9,9,4)",
    "2. s=2,t=1 large rows",
    "3. s=t=2 table, a <= 8",
    "4. s=t=2 deep rows",
    "5. (4,3,2) word lists",
    "6. (4,3,3) refined micro-fixture",
    "7. property suites",
    "8. touch-rule adjudication",
]


def pytest_addoption(parser):
    parser.addoption("--full", action="store_true", default=False, help="run the deep s=t=2 table rows")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--full"):
        return
    skip = pytest.mark.skip(reason="deep rows need --full")
    for item in items:
        if "full" in item.keywords:
            item.add_marker(skip)


def record_criterion(name: str, ok: bool) -> None:
    _ACCEPTANCE.setdefault(name, []).append(ok)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in CRITERIA:
        results = _ACCEPTANCE.get(name, [])
        if not results:
            terminalreporter.write_line(f"SKIP  {name}  (not run)")
            continue
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  ({sum(results)}/{len(results)} checks)")


@pytest.fixture(scope="session")
def table21():
    return MultTable(S21)


@pytest.fixture(scope="session")
def table22():
    return MultTable(S22)

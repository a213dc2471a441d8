from pathlib import Path

import pytest

from bmgroups.enumeration import enumerate_relation_sets
from bmgroups.mozes import mozes_datum
from bmgroups.vhdatum import parse_datum, product_free_groups_datum
from bmgroups.zmatrix import AbelianGroup

DATA = Path(__file__).parent / "data"


def load_published_table():
    """Rows (name, datum, H1, C) transcribed from the published degree-(4,4) tables."""
    rows = []
    for line in (DATA / "published_tables_4x4.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, relators, h1, c = (x.strip() for x in line.split("|"))
        datum = parse_datum("4 4\n" + relators.replace(";", "\n"))
        rows.append((name, datum, AbelianGroup.from_table(h1), AbelianGroup.from_table(c)))
    return rows


TABLE_ROWS = load_published_table()
TABLE = {name: datum for name, datum, _, _ in TABLE_ROWS}


@pytest.fixture(scope="session")
def table_rows():
    return TABLE_ROWS


@pytest.fixture(scope="session")
def d01():
    return TABLE["2x2.01"]


@pytest.fixture(scope="session")
def d41():
    return TABLE["2x2.41"]


@pytest.fixture(scope="session")
def mozes_5_13():
    return mozes_datum(5, 13)


@pytest.fixture(scope="session")
def relation_sets_4x4():
    return enumerate_relation_sets(4, 4)


@pytest.fixture(scope="session")
def product_22():
    return product_free_groups_datum(2, 2)


# ---- one summary line per acceptance criterion

_acceptance: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    _acceptance.append((name, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{outcome}  {name}")

import pytest

from qptriples import build_root_system


@pytest.fixture(scope="session")
def D4():
    return build_root_system("D4")


@pytest.fixture(scope="session")
def D6():
    return build_root_system("D6")


@pytest.fixture(scope="session")
def E6():
    return build_root_system("E6")


@pytest.fixture(scope="session")
def E7():
    return build_root_system("E7")


@pytest.fixture(scope="session")
def E8():
    return build_root_system("E8")


def quads(rs):
    """The three positive 4-roots of D4 as (alignment, crossing, nesting)."""
    a = [rs.simple(i) for i in range(1, 5)]
    th = rs.highest_root()
    lab = rs.id_of
    q1 = tuple(sorted([a[0], a[2], a[3], th]))
    q3 = tuple(sorted([a[1], lab((1, 1, 1, 0)), lab((1, 1, 0, 1)), lab((0, 1, 1, 1))]))
    q2 = tuple(sorted([lab((1, 1, 0, 0)), lab((0, 1, 1, 0)), lab((0, 1, 0, 1)), lab((1, 1, 1, 1))]))
    return q1, q2, q3


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)

import functools

import pytest

from otarith import numfield, units


@functools.lru_cache(maxsize=None)
def cubic(m):
    """Field of x^3 + m x - 1 with the corpus integral basis."""
    from otarith.corpus import family_document

    doc = family_document(m)
    return numfield.build_field(doc.min_poly, doc.integral_basis)


@functools.lru_cache(maxsize=None)
def fundamental(m):
    return units.rank1_fundamental_unit_search(cubic(m))


@pytest.fixture
def K1():
    return cubic(1)


@pytest.fixture
def K2():
    return cubic(2)


@pytest.fixture
def B2():
    return fundamental(2)


@pytest.fixture
def quartic():
    return numfield.build_field([-2, 0, 0, 0, 1])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import random

import pytest
from hypothesis import strategies as st

from qtwist.scalars import ratfunc

small_int = st.integers(min_value=-4, max_value=4)
poly_coeffs = st.lists(small_int, min_size=1, max_size=4)


@st.composite
def field_elements(draw):
    """Elements of Q(q): small rationals or quotients of small polynomials."""
    if draw(st.booleans()):
        return ratfunc([draw(small_int)], [draw(st.integers(min_value=1, max_value=5))])
    num = draw(poly_coeffs)
    den = draw(poly_coeffs.filter(lambda c: any(c)))
    return ratfunc(num, den)


@pytest.fixture
def rng():
    return random.Random(20240613)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])

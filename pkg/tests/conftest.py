import pytest
from hypothesis import settings, strategies as st

from agflats.affine import flat_new
from agflats.fieldlinalg import rref

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list = []


def record(criterion: str, passed: bool, detail: str = ""):
    line = f"criterion {criterion}: {'PASS' if passed else 'FAIL'}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture
def acceptance_record():
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def spaces(draw, qs=(2, 3), max_n=4):
    q = draw(st.sampled_from(qs))
    n = draw(st.integers(1, max_n))
    return q, n


@st.composite
def vectors(draw, q, n):
    return tuple(draw(st.lists(st.integers(0, q - 1), min_size=n, max_size=n)))


@st.composite
def subspaces(draw, q, n, max_rows=None):
    rows = draw(st.lists(vectors(q, n), max_size=max_rows if max_rows is not None else n + 1))
    return rref(rows, q, n)


@st.composite
def flats(draw, q, n):
    return flat_new(draw(subspaces(q, n)), draw(vectors(q, n)))

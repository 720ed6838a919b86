import random

import pytest
from hypothesis import settings, strategies as st

from starpi.field import get_field
from starpi.freealg import StarPolynomial

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FINITE = ["F3", "F5", "F7", "F9", "F25", "F27", "F49"]
ALL_FIELDS = ["Q"] + FINITE


def raw_elements(field):
    """Strategy for raw values of ``field``."""
    if field.is_finite:
        return st.integers(0, field.q - 1)
    return st.fractions(min_value=-20, max_value=20, max_denominator=7)


def star_polys(field, letters=(1, 2, -1, -2), max_len=3, max_terms=4):
    word = st.lists(st.sampled_from(letters), max_size=max_len).map(tuple)
    return st.dictionaries(word, raw_elements(field), max_size=max_terms).map(
        lambda d: StarPolynomial(field, d))


def random_poly(rng, field, letters, max_degree, n_terms):
    terms = {}
    for _ in range(n_terms):
        d = rng.randint(0, max_degree)
        w = tuple(rng.choice(letters) for _ in range(d))
        c = rng.randrange(field.q) if field.is_finite else rng.randint(-3, 3)
        terms[w] = field.add(terms.get(w, field.zero), field.coerce(c))
    return StarPolynomial(field, terms)


@pytest.fixture
def F3():
    return get_field("F3")


@pytest.fixture
def F5():
    return get_field("F5")


@pytest.fixture
def Q():
    return get_field("Q")


@pytest.fixture
def rng():
    return random.Random(20240611)


# acceptance lines, printed once at the end of the run
ACCEPTANCE = {}


def record(number, ok, detail=""):
    ACCEPTANCE[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
    print(ACCEPTANCE[number])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])

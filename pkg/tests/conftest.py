import itertools

import pytest
from hypothesis import strategies as st

from synclab.automaton import Dfa
from synclab.corpus import builtin
from synclab.matrices import WordMatrix

LETTERS = "abc"


@st.composite
def automata(draw, n_min=1, n_max=8, k_max=3):
    n = draw(st.integers(n_min, n_max))
    k = draw(st.integers(1, k_max))
    alphabet = tuple(LETTERS[:k])
    delta = {x: tuple(draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))) for x in alphabet}
    return Dfa(n, alphabet, delta)


def words(a, max_size=12):
    return st.text(alphabet="".join(a.alphabet), max_size=max_size)


@st.composite
def automaton_and_words(draw, count=2, n_max=8, max_size=12):
    a = draw(automata(n_max=n_max))
    return (a,) + tuple(draw(words(a, max_size)) for _ in range(count))


@st.composite
def word_matrices(draw, n=None, n_max=6):
    if n is None:
        n = draw(st.integers(1, n_max))
    return WordMatrix(tuple(draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))))


def all_word_matrices(n, columns=None):
    cols = range(n) if columns is None else columns
    for t in itertools.product(cols, repeat=n):
        yield WordMatrix(t)


@pytest.fixture(scope="session")
def kari():
    return builtin("kari6")


@pytest.fixture(scope="session")
def roman():
    return builtin("roman5")


@pytest.fixture(scope="session")
def cerny4():
    return builtin("cerny4")


# criterion number -> list of (ok, detail); filled by test_acceptance, printed at the end
ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[number]
        ok = all(passed for passed, _ in checks)
        details = "; ".join(detail for _, detail in checks)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {details}")

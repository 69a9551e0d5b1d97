import itertools
import pytest
from hypothesis import assume, given, settings, strategies as st

from synclab.automaton import StateSet, image_of_automaton
from synclab.corpus import builtin
from synclab.matrices import WordMatrix, column_units, matrix_of_word, nonzero_columns, rank
from synclab.oracle import shortest_reset
from synclab.series import (
    NotSynchronizingWordError,
    SeriesContext,
    canonical_pseudoinverse,
    complete_pseudoinverse,
    is_pseudoinverse,
    is_solution,
    propagate_solution,
    propagating_pseudoinverses,
    pseudoinverse_cores,
    pseudoinverses,
    sample_pseudoinverses,
    series,
    series_linearity_check,
    series_of_matrix,
    solve_equation,
)
from synclab.space import RationalCombo, column_basis_combo

from conftest import all_word_matrices, automata, word_matrices
from test_matrices import EXAMPLE_MA, EXAMPLE_MA_PINV


def sync_instance(a, data):
    r = shortest_reset(a)
    assume(r.found)
    u = data.draw(st.text(alphabet="".join(a.alphabet), max_size=10))
    return r.word, u


def test_series_examples(kari):
    s = kari.known_shortest[1]
    ctx = SeriesContext.single(kari.dfa, 0)
    assert series(ctx, s) == 5
    assert series(ctx, "") == 0
    assert series(SeriesContext.single(kari.dfa, 5), "b") == -1


def test_series_of_p_set(kari):
    ctx = SeriesContext(kari.dfa, StateSet.of(6, [0, 5]))
    # M_b has no units in column 5 and two in column 0
    assert series(ctx, "b") == len(column_units(matrix_of_word(kari.dfa, "b"), 0)) - 2


def test_empty_p_set_rejected(kari):
    with pytest.raises(ValueError):
        SeriesContext(kari.dfa, StateSet.of(6, []))


def test_linearity_single_term(kari):
    ctx = SeriesContext.single(kari.dfa, 0)
    assert series_linearity_check(ctx, RationalCombo.of([(1, matrix_of_word(kari.dfa, "bab"))]))


def test_linearity_on_all_column_basis_combos():
    a = builtin("cerny3").dfa
    for q in range(3):
        ctx = SeriesContext.single(a, q)
        for t in all_word_matrices(3, range(2)):
            assert series_linearity_check(ctx, column_basis_combo(t, 2))


def test_linearity_equal_series_terms():
    # three matrices with the same series value i combine to a matrix with value i
    a = builtin("cerny3").dfa
    ctx = SeriesContext.single(a, 0)
    m1, m2, m3 = WordMatrix((0, 1, 1)), WordMatrix((0, 2, 2)), WordMatrix((0, 2, 1))
    combo = RationalCombo.of([(1, m1), (1, m2), (-1, m3)])
    assert {series_of_matrix(m, StateSet.of(3, [0])) for m in (m1, m2, m3)} == {0}
    assert series_linearity_check(ctx, combo)
    assert series_of_matrix(WordMatrix((0, 1, 2)), StateSet.of(3, [0])) == 0


def test_linearity_requires_word_matrix(kari):
    ctx = SeriesContext.single(kari.dfa, 0)
    m = matrix_of_word(kari.dfa, "b")
    with pytest.raises(ValueError):
        series_linearity_check(ctx, RationalCombo.of([(2, m)]))


def test_solve_examples(kari):
    s = kari.known_shortest[1]
    sol = solve_equation(kari.dfa, s, s)
    assert sol.forced_rows == {0} and sol.minimal_series == 0
    sol = solve_equation(kari.dfa, "", s)
    assert sol.forced_rows == frozenset(range(6)) and sol.minimal_series == 5
    assert list(sol.iter_completions()) == [matrix_of_word(kari.dfa, s)]
    sol = solve_equation(kari.dfa, "b", s)
    assert len(sol.forced_rows) == 5 and sol.minimal_series == 4


def test_solve_rejects_non_reset_word(kari):
    with pytest.raises(NotSynchronizingWordError):
        solve_equation(kari.dfa, "b", "ab")


def test_is_solution_cases(kari):
    s = kari.known_shortest[1]
    sol = solve_equation(kari.dfa, "b", s)
    lx = sol.minimal()
    assert is_solution(kari.dfa, "b", s, lx)
    forced = min(sol.forced_rows)
    broken = list(lx.row_target)
    broken[forced] = 1
    assert not is_solution(kari.dfa, "b", s, WordMatrix(tuple(broken)))
    extra = list(lx.row_target)
    extra[sol.free_rows[0]] = sol.q
    assert is_solution(kari.dfa, "b", s, WordMatrix(tuple(extra)))


def test_invertible_pseudoinverse_is_inverse():
    m = WordMatrix((2, 0, 1))
    assert list(pseudoinverses(m)) == [m.inverse()]


def test_example_pseudoinverses_enumerated():
    found = set(pseudoinverses(EXAMPLE_MA))
    for p in EXAMPLE_MA_PINV:
        assert p in found and is_pseudoinverse(EXAMPLE_MA, p)
    # 2 * 1 * 2 core choices, free rows 0 and 3 arbitrary
    assert len(found) == 4 * 25
    assert canonical_pseudoinverse(EXAMPLE_MA).is_permutation()


@pytest.mark.parametrize("n", [2, 3, 5])
def test_rank_one_cores(n):
    for q in range(n):
        m = WordMatrix.constant(n, q)
        cores = list(pseudoinverse_cores(m))
        assert len(cores) == n
        for core in cores:
            p = complete_pseudoinverse(m, core)
            # the chosen preimage row keeps column q on the product's diagonal
            assert (p @ m).row_target[q] == q


def test_core_validation():
    m = WordMatrix((1, 1, 0))
    with pytest.raises(ValueError):
        complete_pseudoinverse(m, {1: 2, 0: 2})
    with pytest.raises(ValueError):
        complete_pseudoinverse(m, {1: 0})


def test_sampler_is_seeded():
    assert sample_pseudoinverses(EXAMPLE_MA, 5, seed=3) == sample_pseudoinverses(EXAMPLE_MA, 5, seed=3)
    assert all(is_pseudoinverse(EXAMPLE_MA, p) for p in sample_pseudoinverses(EXAMPLE_MA, 20))


@given(word_matrices(n=4))
def test_product_ignores_free_rows(m):
    for core in itertools.islice(pseudoinverse_cores(m), 4):
        free = [r for r in range(4) if r not in core]
        products = {
            m @ complete_pseudoinverse(m, core, fill)
            for fill in itertools.product(range(4), repeat=len(free))
        }
        assert len(products) == 1


def test_propagation_through_permutation(kari):
    s = kari.known_shortest[1]
    lx = solve_equation(kari.dfa, "b", s).minimal()
    ly = propagate_solution(kari.dfa, "b", "a", lx, s)
    assert ly == matrix_of_word(kari.dfa, "a").inverse() @ lx
    ctx = StateSet.of(6, [0])
    assert series_of_matrix(ly, ctx) == series_of_matrix(lx, ctx)


def test_propagation_kari_rank_drop(kari):
    s = kari.known_shortest[1]
    before = solve_equation(kari.dfa, "baa", s)
    after = solve_equation(kari.dfa, "baab", s)
    assert (len(before.forced_rows), len(after.forced_rows)) == (5, 4)
    assert (before.minimal_series, after.minimal_series) == (4, 3)
    ly = propagate_solution(kari.dfa, "baa", "b", before.minimal(), s)
    assert is_solution(kari.dfa, "baab", s, ly)


def test_propagation_needs_solution(kari):
    s = kari.known_shortest[1]
    with pytest.raises(ValueError):
        propagate_solution(kari.dfa, "b", "a", WordMatrix.identity(6), s)


@settings(max_examples=300)
@given(automata(n_min=2, n_max=7), st.data())
def test_propagated_solution_solves_extension(a, data):
    s, u = sync_instance(a, data)
    beta = data.draw(st.sampled_from(a.alphabet))
    sol = solve_equation(a, u, s)
    lx = sol.max_rank_minimal()
    mu, mb, ms = matrix_of_word(a, u), matrix_of_word(a, beta), matrix_of_word(a, s)
    for p in itertools.islice(propagating_pseudoinverses(a, u, beta), 6):
        assert is_pseudoinverse(mb, p)
        assert mu @ mb @ p @ lx == ms
    ly = propagate_solution(a, u, beta, lx, s)
    assert mu @ mb @ ly == ms
    if mb.is_permutation():
        assert ly == mb.inverse() @ lx and nonzero_columns(ly) == nonzero_columns(lx)


@settings(max_examples=300)
@given(automata(n_min=1, n_max=7), st.data())
def test_solution_facts(a, data):
    s, u = sync_instance(a, data)
    sol = solve_equation(a, u, s)
    q = StateSet.of(a.n, [sol.q])
    ru = len(image_of_automaton(a, u))
    assert sol.forced_rows == frozenset(image_of_automaton(a, u).members())
    for L in itertools.chain(sol.iter_completions(False, 40), sol.spanning_completions(False)):
        assert is_solution(a, u, s, L) == sol.contains(L) == True
        value = series_of_matrix(L, q)
        assert value >= 0
        assert rank(L) <= a.n - value
    m = sol.minimal()
    assert sol.is_minimal(m) and series_of_matrix(m, q) == ru - 1 == sol.minimal_series
    best = sol.max_rank_minimal()
    assert rank(best) == sol.max_minimal_rank
    if a.n > 1:
        assert ru + rank(best) == a.n + 1
    for beta in a.alphabet:
        nxt = solve_equation(a, u + beta, s)
        assert nxt.minimal_series <= sol.minimal_series
        # maximal-rank minimal solutions gain exactly what the image loses
        if a.n > 1:
            gain = rank(nxt.max_rank_minimal()) - rank(best)
            assert gain == ru - len(image_of_automaton(a, u + beta))


@settings(max_examples=150)
@given(automata(n_min=1, n_max=5), st.data())
def test_is_solution_matches_column_predicate(a, data):
    s, u = sync_instance(a, data)
    sol = solve_equation(a, u, s)
    L = data.draw(word_matrices(n=a.n))
    assert is_solution(a, u, s, L) == (column_units(L, sol.q) >= sol.forced_rows)


@pytest.mark.parametrize("name", ["kari6", "roman5", "cerny4", "cerny6"])
def test_minimal_identity_on_corpus_prefixes(name):
    entry = builtin(name)
    s = entry.known_shortest[1]
    q = StateSet.of(entry.dfa.n, [solve_equation(entry.dfa, s, s).q])
    for j in range(len(s) + 1):
        u = s[:j]
        sol = solve_equation(entry.dfa, u, s)
        assert series_of_matrix(sol.minimal(), q) == len(image_of_automaton(entry.dfa, u)) - 1

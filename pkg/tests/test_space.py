import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from synclab.corpus import builtin
from synclab.matrices import WordMatrix, dense_rank, matrix_of_word
from synclab.space import (
    RationalCombo,
    SpanBasis,
    dense_of,
    dense_matmul,
    dimension_bound,
    evaluate_combo,
    express,
    extend_basis,
    is_word_matrix,
    column_basis,
    column_basis_cell,
    column_basis_combo,
    span_of,
    zero_matrix,
)

from conftest import all_word_matrices, word_matrices


def test_cancelling_combo_is_zero():
    m = WordMatrix((1, 0, 0))
    assert evaluate_combo(RationalCombo.of([(1, m), (-1, m)])) == zero_matrix(3)


def test_half_plus_half():
    m = WordMatrix((2, 0, 1))
    v = evaluate_combo(RationalCombo.of([(Fraction(1, 2), m), (Fraction(1, 2), m)]))
    assert is_word_matrix(v) == m


def test_combo_dimension_mismatch():
    with pytest.raises(ValueError):
        RationalCombo.of([(1, WordMatrix((0,))), (1, WordMatrix((0, 1)))])


def test_is_word_matrix_cases():
    m = WordMatrix((1, 1, 0))
    assert is_word_matrix(evaluate_combo(RationalCombo.of([(1, m)]))) == m
    assert is_word_matrix(evaluate_combo(RationalCombo.of([(1, m), (1, m)]))) is None
    assert is_word_matrix(zero_matrix(3)) is None


def test_extend_basis_basics():
    m = WordMatrix((0, 0, 1))
    b, added = extend_basis(SpanBasis(3), m)
    assert added and b.dimension == 1 == b.member_count
    b2, added = extend_basis(b, m)
    assert not added and b2 is b
    with pytest.raises(ValueError):
        extend_basis(b, WordMatrix((0, 0)))


def test_rref_rows_reduced():
    b = span_of([WordMatrix((0, 1)), WordMatrix((1, 1)), WordMatrix((0, 0))], 2)
    rows = b.rref()
    assert len(rows) == b.dimension == 3
    pivots = [next(i for i, x in enumerate(r) if x) for r in rows]
    for r, p in zip(rows, pivots):
        assert r[p] == 1
        assert all(other[p] == 0 for other in rows if other is not r)


def test_kari_early_rows_independent():
    # solutions for the printed Kari words whose image has 5 or 4 states
    from synclab.replay import replay_published

    trace = replay_published("kari6").chain
    kari = builtin("kari6")
    rows = [r for r in trace.rows if r.rank in (5, 4)]
    assert [len(r.word) for r in rows] == list(range(1, 11))
    mats = [matrix_of_word(kari.dfa, kari.known_shortest[1])] + [r.solution for r in rows]
    assert dense_rank([m.vector() for m in mats]) == 11


def test_column_basis_sizes_and_errors():
    assert len(column_basis(2, 1)) == 1
    assert len(column_basis(5, 3)) == 11
    with pytest.raises(ValueError):
        column_basis(3, 4)
    with pytest.raises(ValueError):
        column_basis(3, 0)


def test_column_basis_displays_n5():
    last = [0, 0, 0, 0, 1]
    v11 = column_basis_cell(5, 5, 0, 0).dense()
    assert v11 == [[1, 0, 0, 0, 0]] + [last] * 4
    v32 = column_basis_cell(5, 5, 2, 1).dense()
    assert v32 == [last, last, [0, 1, 0, 0, 0], last, last]
    assert column_basis(5, 5)[-1].dense() == [last] * 5


def test_column_basis_combo_all_3x2():
    for t in all_word_matrices(3, range(2)):
        combo = column_basis_combo(t, 2)
        assert is_word_matrix(evaluate_combo(combo)) == t
        assert combo.coefficient_sum() == 1


@pytest.mark.parametrize("n,k", [(2, 1), (3, 2), (3, 3), (4, 2)])
def test_column_basis_spans_exactly(n, k):
    basis = column_basis(n, k)
    b = span_of(basis, n)
    assert b.dimension == len(basis) == n * (k - 1) + 1
    full = span_of(all_word_matrices(n, range(k)), n)
    assert full.dimension == b.dimension
    assert all(b.contains(t) for t in all_word_matrices(n, range(k)))


def test_dimension_bound_values():
    assert dimension_bound(6, 1) == 25
    assert dimension_bound(2, 1) == 1
    assert dimension_bound(4, 0) == 13
    with pytest.raises(ValueError):
        dimension_bound(3, 3)


def test_integer_elimination_matches_fraction_rank():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(2, 4)
        mats = [WordMatrix(tuple(rng.randrange(n) for _ in range(n))) for _ in range(rng.randint(1, 12))]
        assert span_of(mats, n).dimension == dense_rank([m.vector() for m in mats])


@settings(max_examples=150)
@given(st.integers(2, 4), st.integers(1, 4), st.randoms(use_true_random=False))
def test_word_matrix_combos_sum_to_one(n, k, rng):
    k = min(k, n)
    members = column_basis(n, k) + [WordMatrix(tuple(rng.randrange(k) for _ in range(n))) for _ in range(3)]
    rng.shuffle(members)
    target = WordMatrix(tuple(rng.randrange(k) for _ in range(n)))
    coeffs = express(members, target)
    assert coeffs is not None
    combo = RationalCombo(n, tuple(zip(coeffs, members)))
    value = evaluate_combo(combo)
    assert is_word_matrix(value) == target
    assert combo.coefficient_sum() == 1
    assert all(sum(row) == 1 for row in value)


@given(st.lists(word_matrices(n=3), min_size=2, max_size=8))
def test_zero_combos_have_zero_sum(mats):
    coeffs = express(mats[1:], mats[0])
    if coeffs is not None:
        zero = RationalCombo(3, ((Fraction(1), mats[0]),) + tuple((-c, m) for c, m in zip(coeffs, mats[1:])))
        assert evaluate_combo(zero) == zero_matrix(3)
        assert zero.coefficient_sum() == 0


@given(
    word_matrices(n=4),
    st.lists(st.tuples(st.fractions(-3, 3, max_denominator=4), word_matrices(n=4)), min_size=1, max_size=5),
)
def test_left_distributivity(b, terms):
    combo = RationalCombo.of(terms)
    lhs = dense_matmul(dense_of(b), evaluate_combo(combo))
    rhs = evaluate_combo(combo.left_multiply(b))
    assert lhs == rhs
    # rows of the product repeat rows of the combination
    rows = evaluate_combo(combo)
    assert all(row in rows for row in rhs)


def test_right_product_leaves_row_structure():
    c = RationalCombo.of([(1, WordMatrix((0, 0, 0))), (-1, WordMatrix((1, 1, 1))), (1, WordMatrix((2, 2, 2)))])
    b = WordMatrix((0, 1, 0))
    rows = evaluate_combo(c)
    right = evaluate_combo(c.right_multiply(b))
    assert right == dense_matmul(rows, dense_of(b))
    assert right[0] == [2, -1, 0]
    assert right[0] not in rows and is_word_matrix(right) is None
    left = evaluate_combo(c.left_multiply(b))
    assert all(row in rows for row in left)


def test_express_reports_inexpressible():
    assert express([WordMatrix((0, 0))], WordMatrix((1, 1))) is None
    assert express([WordMatrix((0, 0)), WordMatrix((1, 1))], WordMatrix((0, 0))) == [1, 0]

from itertools import islice, product
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sclab.services.combinatorics import alpha, alpha_prime
from sclab.services.errors import SizeGuardExceededError
from sclab.services.tableaux import (
    Tableau,
    TableauWord,
    completions,
    count_saturated,
    count_saturated_by_marks,
    count_saturated_with_origin,
    decode,
    encode,
    enumerate_saturated,
    enumerate_saturated_bruteforce,
    final_cell_mask,
    is_final_tableau,
    is_saturated,
    rewrite,
    saturate,
    saturate_by_rewriting,
)

TRIANGLE = Tableau.from_cells(2, 2, [(0, 0), (0, 1), (1, 0)])


@st.composite
def tableaux(draw, max_rows: int = 4, max_cols: int = 4):
    rows = draw(st.integers(0, max_rows))
    cols = draw(st.integers(0, max_cols))
    bits = draw(st.integers(0, (1 << (rows * cols)) - 1))
    return Tableau(rows, cols, bits)


@st.composite
def tableau_pairs(draw):
    """(t, t′) of the same shape with t ⊆ t′."""
    small = draw(tableaux())
    extra = draw(st.integers(0, (1 << (small.rows * small.cols)) - 1))
    return small, Tableau(small.rows, small.cols, small.bits | extra)


def saturated_superset_oracle(t: Tableau) -> Tableau:
    """Intersection of every saturated tableau containing t."""
    result = Tableau.full(t.rows, t.cols)
    for s in enumerate_saturated(t.rows, t.cols):
        if t <= s:
            result = result.intersection(s)
    return result


# ---------------------------------------------------------------------------
# Text format and values
# ---------------------------------------------------------------------------

def test_text_round_trip():
    text = 'X..X\n..X.\n....'
    assert Tableau.from_text(text).to_text() == text


def test_from_text_rejects_ragged_rows():
    with pytest.raises(ValueError):
        Tableau.from_text('XX\nX')


def test_bits_must_fit_shape():
    with pytest.raises(ValueError):
        Tableau(2, 2, 1 << 4)


def test_row_and_column_masks():
    t = Tableau.from_text('X.X\n.X.')
    assert t.row_masks() == [0b101, 0b010]
    assert t.col_mask(0) == 0b01
    assert t.col_mask(1) == 0b10


# ---------------------------------------------------------------------------
# is_saturated / saturate
# ---------------------------------------------------------------------------

def test_empty_and_full_are_saturated():
    assert is_saturated(Tableau.empty(3, 4))
    assert is_saturated(Tableau.full(3, 4))


def test_right_triangle_is_not_saturated():
    assert not is_saturated(TRIANGLE)


def test_triangle_saturates_to_rectangle():
    assert saturate(TRIANGLE) == Tableau.full(2, 2)


def test_completions_of_triangle():
    assert completions(TRIANGLE) == [(1, 1)]
    assert rewrite(TRIANGLE, (1, 1)) == Tableau.full(2, 2)


def test_rewrite_rejects_non_completing_cell():
    with pytest.raises(ValueError):
        rewrite(TRIANGLE, (0, 0))


@settings(max_examples=200, deadline=None)
@given(tableaux())
def test_saturate_is_extensive_idempotent_and_saturated(t):
    s = saturate(t)
    assert t <= s
    assert is_saturated(s)
    assert saturate(s) == s


@settings(max_examples=150, deadline=None)
@given(tableau_pairs())
def test_saturate_is_monotone(pair):
    small, large = pair
    assert saturate(small) <= saturate(large)


@settings(max_examples=150, deadline=None)
@given(tableaux(), st.integers(0, 2 ** 32))
def test_rewriting_schedules_agree(t, seed):
    first = saturate_by_rewriting(t, Random(seed))
    second = saturate_by_rewriting(t, Random(seed + 1))
    assert first == second == saturate(t)


@settings(max_examples=150, deadline=None)
@given(tableaux())
def test_saturation_preserves_empty_rows_and_columns(t):
    s = saturate(t)
    for j in range(t.rows):
        assert (t.row_mask(j) == 0) == (s.row_mask(j) == 0)
    for k in range(t.cols):
        assert (t.col_mask(k) == 0) == (s.col_mask(k) == 0)


@settings(max_examples=60, deadline=None)
@given(tableaux(max_rows=4, max_cols=4))
def test_saturate_matches_superset_intersection(t):
    assert saturate(t) == saturated_superset_oracle(t)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

@pytest.mark.parametrize('n, p, expected', [(2, 2, 12), (3, 3, 128), (1, 1, 2), (0, 3, 1), (3, 0, 1)])
def test_enumeration_counts(n, p, expected):
    assert count_saturated(n, p) == expected


@pytest.mark.parametrize('n, p, expected', [(2, 2, 5), (3, 3, 43)])
def test_origin_counts(n, p, expected):
    assert count_saturated_with_origin(n, p) == expected


@pytest.mark.parametrize('p', range(1, 7))
def test_single_row_origin_count(p):
    assert count_saturated_with_origin(1, p) == 2 ** (p - 1)


@pytest.mark.parametrize('n, p', [(n, p) for n in range(1, 5) for p in range(1, 5) if n * p <= 12])
def test_enumeration_matches_bruteforce(n, p):
    assert list(enumerate_saturated(n, p)) == list(enumerate_saturated_bruteforce(n, p))


def test_enumeration_is_sorted_by_bits():
    bits = [t.bits for t in enumerate_saturated(3, 3)]
    assert bits == sorted(set(bits))


FORMULA_CASES = [
    pytest.param(n, p, marks=pytest.mark.slow) if max(n, p) >= 10 else (n, p)
    for n in range(1, 21)
    for p in range(1, 21)
    if n * p <= 20
]


@pytest.mark.parametrize('n, p', FORMULA_CASES)
def test_enumeration_matches_formula(n, p):
    assert count_saturated(n, p) == alpha(n, p)
    assert count_saturated_with_origin(n, p) == alpha_prime(n, p)


@pytest.mark.parametrize('n, p', [(2, 5), (3, 4), (1, 6)])
def test_enumeration_is_transpose_symmetric(n, p):
    assert count_saturated(n, p) == count_saturated(p, n)


def test_counts_by_marks_sum_to_total():
    assert sum(count_saturated_by_marks(3, 3)) == 128
    assert count_saturated_by_marks(2, 2) == [1, 4, 6, 0, 1]


def test_enumeration_guard():
    with pytest.raises(SizeGuardExceededError):
        count_saturated(6, 5)


def test_enumeration_is_lazy_at_the_cell_guard():
    stream = enumerate_saturated(1, 25)
    assert next(stream).bits == 0
    assert next(stream).bits == 1
    assert [t.bits for t in islice(enumerate_saturated(5, 5), 3)] == [0, 1, 2]


def test_enumeration_prefix_of_large_shape():
    prefix = list(islice(enumerate_saturated(5, 5), 500))
    assert len(prefix) == 500
    assert all(is_saturated(t) for t in prefix)
    bits = [t.bits for t in prefix]
    assert bits == sorted(set(bits))


@pytest.mark.parametrize('n, p', [(0, 3), (3, 0), (0, 0)])
def test_enumeration_of_degenerate_shapes(n, p):
    assert [t.bits for t in enumerate_saturated(n, p)] == [0]


# ---------------------------------------------------------------------------
# Word encoding
# ---------------------------------------------------------------------------

def test_encoding_of_worked_example():
    t = Tableau.from_text('X..X.\n.....\n.X..X\nX...X')
    w = encode(t)
    assert w.letters == (
        frozenset({0, 3}), frozenset({2}), frozenset(), frozenset({0}), frozenset({2, 3}),
    )
    assert decode(w) == t


def test_zero_column_tableau_is_empty_word():
    assert len(encode(Tableau.empty(3, 0))) == 0


@settings(max_examples=100, deadline=None)
@given(tableaux(), tableaux())
def test_concatenation_is_horizontal_gluing(left, right):
    right = Tableau(left.rows, right.cols, right.bits & ((1 << (left.rows * right.cols)) - 1))
    assert decode(encode(left).concat(encode(right))) == left.hconcat(right)


@pytest.mark.parametrize('n, p', [(n, p) for n in range(1, 5) for p in range(1, 5)])
def test_saturated_iff_letters_form_partial_partition(n, p):
    for bits in range(1 << (n * p)):
        t = Tableau(n, p, bits)
        assert is_saturated(t) == encode(t).is_partial_partition


def test_word_rejects_rows_out_of_range():
    with pytest.raises(ValueError):
        TableauWord(2, (frozenset({2}),))


# ---------------------------------------------------------------------------
# Finality
# ---------------------------------------------------------------------------

def test_empty_tableau_is_not_final():
    assert not is_final_tableau(Tableau.empty(3, 3), {2}, {2})


def test_cell_on_final_row_only_is_final():
    t = Tableau.from_cells(3, 3, [(2, 0)])
    assert is_final_tableau(t, {2}, {2})
    assert not is_final_tableau(Tableau.from_cells(3, 3, [(2, 2)]), {2}, {2})


def test_final_cell_mask():
    assert final_cell_mask(2, 2, {1}, {1}) == 0b0110
    assert final_cell_mask(2, 2, set(), set()) == 0


@pytest.mark.parametrize('final_rows, final_cols', [({2}, {0}), ({0}, {-1}), ({0}, {2})])
def test_final_cell_mask_rejects_outside_indices(final_rows, final_cols):
    with pytest.raises(ValueError):
        final_cell_mask(2, 2, final_rows, final_cols)


def _subsets(size):
    return [frozenset(i for i in range(size) if mask >> i & 1) for mask in range(1 << size)]


@pytest.mark.parametrize('n, p', [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_saturation_preserves_finality(n, p):
    for final_rows, final_cols in product(_subsets(n), _subsets(p)):
        for bits in range(1 << (n * p)):
            t = Tableau(n, p, bits)
            assert is_final_tableau(t, final_rows, final_cols) == \
                is_final_tableau(saturate(t), final_rows, final_cols)

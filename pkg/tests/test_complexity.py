from random import Random

import pytest

from sclab.services.automata import (
    BooleanOp,
    Dfa,
    boolean_product,
    catenate,
    complement,
    determinize,
    equivalent,
    equivalence_classes,
    minimize,
)
from sclab.services.combinatorics import alpha, alpha_prime
from sclab.services.complexity import (
    DEGENERATE,
    OpDecomposition,
    VerificationReport,
    build_combined,
    canonicalize_op,
    composed_bound,
    count_saturated_states,
    explore_combined,
    predicted_value,
    saturated_state_census,
    saturation_violations,
    verify,
)
from sclab.services.errors import (
    AlphabetMismatchError,
    DegenerateOperationError,
    SizeTooSmallError,
    StateBudgetExceededError,
)
from sclab.services.tableaux import completions, is_final_tableau, saturate
from sclab.services.witness import brzozowski, witness_triple
from tests.helpers import random_minimal_dfa

NON_DEGENERATE = [op for op in BooleanOp if not op.is_degenerate]


@pytest.fixture(scope='module')
def explored_xor():
    a, b, c = witness_triple(3, 3, 3)
    return explore_combined(a, b, c, BooleanOp.XOR)


# ---------------------------------------------------------------------------
# Combined automaton
# ---------------------------------------------------------------------------

def test_initial_state_is_empty_tableau(explored_xor):
    assert explored_xor.labels[0] == (0, 0)


def test_accessible_state_count(explored_xor):
    assert explored_xor.state_count == (3 - 1) * 2 ** 9 + 2 ** 8 == 1280


def test_final_a_states_carry_the_origin_cell(explored_xor):
    for s in range(explored_xor.state_count):
        state = explored_xor.state(s)
        if state.a_state in explored_xor.final_a_states:
            assert state.tableau.is_marked(0, 0)


def test_saturated_census_equals_minimal_size(explored_xor, witness_333):
    assert count_saturated_states(explored_xor) == 299
    assert saturated_state_census(*witness_333, BooleanOp.XOR) == 299
    assert minimize(explored_xor.dfa).state_count == 299


def test_every_state_is_equivalent_to_its_saturation(explored_xor):
    assert saturation_violations(explored_xor) == []


def test_rewriting_steps_keep_states_equivalent(explored_xor):
    classes = equivalence_classes(explored_xor.dfa)
    for s in range(explored_xor.state_count):
        state = explored_xor.state(s)
        for cell in completions(state.tableau):
            target = explored_xor.index_of(state.a_state, state.tableau.with_cell(*cell))
            assert target is not None
            assert classes[target] == classes[s]


def test_finality_lifts_to_saturation(explored_xor, witness_333):
    _, b, c = witness_333
    finals = explored_xor.dfa.finals
    for s in range(explored_xor.state_count):
        state = explored_xor.state(s)
        saturated = explored_xor.index_of(state.a_state, saturate(state.tableau))
        assert (s in finals) == (saturated in finals)
        assert (s in finals) == is_final_tableau(state.tableau, b.finals, c.finals)


@pytest.mark.parametrize('op', NON_DEGENERATE, ids=lambda op: op.name.lower())
def test_combined_matches_generic_pipeline(op, witness_333):
    a, b, c = witness_333
    combined = build_combined(a, b, c, op)
    generic = determinize(catenate(a, boolean_product(b, c, op)))
    assert equivalent(combined, generic)
    assert minimize(combined).state_count == minimize(generic).state_count


def test_census_never_exceeds_accessible_count(rng):
    for _ in range(10):
        a, b, c = (random_minimal_dfa(rng, 3) for _ in range(3))
        explored = explore_combined(a, b, c, BooleanOp.XOR)
        assert count_saturated_states(explored) <= explored.state_count


def test_alphabet_mismatch():
    a, b, _ = witness_triple(3, 3, 3)
    other = Dfa(('a', 'b'), 1, 0, frozenset(), ((0, 0),))
    with pytest.raises(AlphabetMismatchError):
        explore_combined(a, b, other, BooleanOp.XOR)


def test_tableau_cell_limit():
    with pytest.raises(StateBudgetExceededError):
        explore_combined(brzozowski(3), brzozowski(9), brzozowski(8), BooleanOp.XOR)


def test_exploration_budget():
    a, b, c = witness_triple(3, 3, 3)
    with pytest.raises(StateBudgetExceededError):
        explore_combined(a, b, c, BooleanOp.XOR, budget=100)


# ---------------------------------------------------------------------------
# Operations and predictions
# ---------------------------------------------------------------------------

@pytest.mark.parametrize('op, expected', [
    (BooleanOp.N_MINUS_P, OpDecomposition(BooleanOp.AND, False, True)),
    (BooleanOp.XOR, OpDecomposition(BooleanOp.XOR)),
    (BooleanOp.NOR, OpDecomposition(BooleanOp.AND, True, True)),
    (BooleanOp.XNOR, OpDecomposition(BooleanOp.XOR, True, False)),
    (BooleanOp.NAND, OpDecomposition(BooleanOp.OR, True, True)),
])
def test_canonical_decompositions(op, expected):
    assert canonicalize_op(op) == expected


@pytest.mark.parametrize('op', list(BooleanOp), ids=lambda op: op.name.lower())
def test_decomposition_reproduces_truth_table(op):
    decomposition = canonicalize_op(op)
    if op.is_degenerate:
        assert decomposition == DEGENERATE
        return
    for x in (False, True):
        for y in (False, True):
            assert op.truth(x, y) == decomposition.base.truth(
                x != decomposition.complement_n, y != decomposition.complement_p,
            )


def test_predictions_at_three():
    xor = predicted_value(3, 3, 3, BooleanOp.XOR)
    assert (xor.value, xor.bound_only) == (299, False)
    union = predicted_value(3, 3, 3, BooleanOp.OR)
    assert (union.value, union.bound_only) == (116, True)
    intersection = predicted_value(3, 3, 3, BooleanOp.AND)
    assert (intersection.value, intersection.bound_only) == (1280, True)


def test_complements_do_not_change_predictions():
    assert predicted_value(3, 3, 4, BooleanOp.XNOR) == predicted_value(3, 3, 4, BooleanOp.XOR)
    assert predicted_value(3, 4, 3, BooleanOp.NOR) == predicted_value(3, 4, 3, BooleanOp.AND)


def test_degenerate_prediction_is_rejected():
    with pytest.raises(DegenerateOperationError):
        predicted_value(3, 3, 3, BooleanOp.NOT_P)


def test_composed_bound():
    assert composed_bound(3, 3, 3) == 1280
    assert composed_bound(5, 1, 1) == (5 - 1) * 2 + 1


@pytest.mark.parametrize('op', NON_DEGENERATE, ids=lambda op: op.name.lower())
def test_predictions_below_composed_bound(op):
    for m in (3, 4):
        for n in (3, 4):
            for p in (3, 4):
                assert predicted_value(m, n, p, op).value <= composed_bound(m, n, p)


# ---------------------------------------------------------------------------
# Upper bounds on random minimal triples
# ---------------------------------------------------------------------------

def test_random_triples_respect_upper_bounds():
    rng = Random(7)
    bounds = {BooleanOp.XOR: 299, BooleanOp.AND: 1280, BooleanOp.OR: 116}
    for _ in range(100):
        a, b, c = (random_minimal_dfa(rng, 3) for _ in range(3))
        for op, bound in bounds.items():
            assert minimize(build_combined(a, b, c, op)).state_count <= bound


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

XOR_CASES = [
    pytest.param(m, n, p, marks=pytest.mark.slow) if n * p == 16 else (m, n, p)
    for m in (3, 4)
    for n in (3, 4)
    for p in (3, 4)
]


@pytest.mark.parametrize('m, n, p', XOR_CASES)
def test_xor_witness_reaches_the_bound(m, n, p):
    report = verify(m, n, p, BooleanOp.XOR)
    assert report.computed_sc == (m - 1) * alpha(n, p) + alpha_prime(n, p)
    assert report.passed
    assert not report.bound_only
    assert report.saturated_state_count == report.computed_sc
    assert report.accessible_count == (m - 1) * 2 ** (n * p) + 2 ** (n * p - 1)


@pytest.mark.parametrize('m, n, p, expected', [(3, 3, 3, 299), (4, 3, 3, 427), (3, 3, 4, 1077)])
def test_xor_values(m, n, p, expected):
    report = verify(m, n, p, BooleanOp.XOR)
    assert (report.computed_sc, report.predicted, report.status) == (expected, expected, 'PASSED')


def test_xnor_reduces_to_the_xor_witness():
    report = verify(3, 3, 3, BooleanOp.XNOR)
    assert report.computed_sc == report.predicted == 299


@pytest.mark.parametrize('op', [BooleanOp.AND, BooleanOp.OR, BooleanOp.NOR, BooleanOp.N_MINUS_P])
def test_union_and_intersection_are_bounds(op):
    report = verify(3, 3, 3, op)
    assert report.bound_only
    assert report.passed
    assert report.computed_sc <= report.predicted


def test_verify_rejects_small_sizes():
    with pytest.raises(SizeTooSmallError):
        verify(2, 3, 3, BooleanOp.XOR)


def test_verify_rejects_cases_over_budget():
    with pytest.raises(StateBudgetExceededError):
        verify(4, 4, 4, BooleanOp.XOR, budget=2 ** 16)


def test_verify_rejects_degenerate_operations():
    with pytest.raises(DegenerateOperationError):
        verify(3, 3, 3, BooleanOp.N)


def test_report_status():
    bound = VerificationReport(3, 3, 3, BooleanOp.OR, 117, 116, True, 0, 0)
    exact = VerificationReport(3, 3, 3, BooleanOp.XOR, 298, 299, False, 0, 0)
    assert bound.status == 'FAILED'
    assert exact.status == 'FAILED'
    assert VerificationReport(3, 3, 3, BooleanOp.OR, 100, 116, True, 0, 0).passed


def test_complemented_witness_language():
    a, b, c = witness_triple(3, 3, 3)
    direct = build_combined(a, b, c, BooleanOp.AND)
    via_complement = build_combined(a, b, complement(c), BooleanOp.N_MINUS_P)
    assert equivalent(direct, via_complement)

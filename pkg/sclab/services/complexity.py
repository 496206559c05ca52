"""
sclab Complexity Service

The combined automaton D for M·(N∘P), the reduction of the 16 boolean
operations to ∩, ∪ and ⊕ with complements, the theoretical predictors, and
the verification harness that confronts predicted and computed state
complexities on the witness triple.

D has states (i, S) with i a state of A and S ⊆ Q_B×Q_C held as a tableau
bitmask (bit q * |Q_C| + r). It is explored lazily by BFS from its initial
state: only accessible states are ever materialized.

Pipeline for verify():
    1. Canonicalize the operation (reject degenerate ones)
    2. Build the witness triple, complementing B and/or C as required
    3. Explore D under the state budget
    4. Minimize and count saturated states
"""

from collections import deque
from dataclasses import dataclass, field
from datetime import timedelta
from time import perf_counter
from typing import Optional
import logging

from sclab.services.automata import (
    BooleanOp,
    Dfa,
    complement,
    equivalence_classes,
    minimize,
)
from sclab.services.combinatorics import alpha, alpha_prime, union_count
from sclab.services.errors import (
    AlphabetMismatchError,
    DegenerateOperationError,
    SizeTooSmallError,
    StateBudgetExceededError,
)
from sclab.services.tableaux import Tableau, is_saturated, saturate
from sclab.services.witness import witness_triple

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 2 ** 22
MAX_TABLEAU_CELLS = 64
_CHUNK = 8

BASE_OPERATIONS = (BooleanOp.AND, BooleanOp.OR, BooleanOp.XOR)


# ============================================================================
# Combined automaton
# ============================================================================

@dataclass(frozen=True)
class CombinedState:
    """A state (i, S) of D."""
    a_state: int
    tableau: Tableau


@dataclass
class CombinedAutomaton:
    """
    Accessible part of D together with the (i, S) label of each state.

    Attributes:
        dfa: the accessible DFA, states numbered in BFS order
        labels: labels[s] = (i, bits of S) for state s of `dfa`
        rows, cols: tableau dimensions |Q_B| and |Q_C|
        final_a_states: F_A, to check the origin-cell invariant
    """
    dfa: Dfa
    labels: list[tuple[int, int]]
    rows: int
    cols: int
    final_a_states: frozenset[int] = field(default_factory=frozenset)
    _index: dict[tuple[int, int], int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index = {label: s for s, label in enumerate(self.labels)}

    @property
    def state_count(self) -> int:
        return self.dfa.state_count

    def state(self, index: int) -> CombinedState:
        a_state, bits = self.labels[index]
        return CombinedState(a_state, Tableau(self.rows, self.cols, bits))

    def index_of(self, a_state: int, tableau: Tableau) -> Optional[int]:
        return self._index.get((a_state, tableau.bits))


def _image_tables(b: Dfa, c: Dfa, symbol: int) -> list[list[int]]:
    """
    Lookup tables applying one symbol to a tableau bitmask, 8 cells at a time:
    tables[chunk][byte] is the image of the cells of that byte.
    """
    cols = c.state_count
    cells = b.state_count * cols
    targets = [
        1 << (b.delta[q][symbol] * cols + c.delta[r][symbol])
        for q in range(b.state_count)
        for r in range(cols)
    ]
    tables = []
    for start in range(0, cells, _CHUNK):
        width = min(_CHUNK, cells - start)
        table = [0] * (1 << width)
        for byte in range(1, 1 << width):
            low = byte & -byte
            table[byte] = table[byte ^ low] | targets[start + low.bit_length() - 1]
        tables.append(table)
    return tables


def _apply(tables: list[list[int]], bits: int) -> int:
    image = 0
    for table in tables:
        if bits:
            image |= table[bits & 0xFF]
            bits >>= _CHUNK
        else:
            break
    return image


def explore_combined(
    a: Dfa,
    b: Dfa,
    c: Dfa,
    op: BooleanOp,
    budget: Optional[int] = None,
) -> CombinedAutomaton:
    """
    BFS over the accessible states of D.

    Raises:
        AlphabetMismatchError: if the three automata disagree on the alphabet
        StateBudgetExceededError: if the tableau has more than 64 cells or the
            exploration exceeds `budget` states
    """
    for other in (b, c):
        if other.alphabet != a.alphabet:
            raise AlphabetMismatchError(a.alphabet, other.alphabet)
    rows, cols = b.state_count, c.state_count
    if rows * cols > MAX_TABLEAU_CELLS:
        raise StateBudgetExceededError(
            f'{rows}x{cols} tableaux exceed the {MAX_TABLEAU_CELLS}-cell bitmask limit'
        )

    width = len(a.alphabet)
    tables = [_image_tables(b, c, x) for x in range(width)]
    origin = 1 << (b.initial * cols + c.initial)
    final_mask = 0
    for q in range(rows):
        for r in range(cols):
            if op.truth(q in b.finals, r in c.finals):
                final_mask |= 1 << (q * cols + r)

    start = (a.initial, origin if a.initial in a.finals else 0)
    index = {start: 0}
    labels = [start]
    rows_out: list[tuple[int, ...]] = []
    queue = deque(labels)
    while queue:
        i, bits = queue.popleft()
        row = []
        for x in range(width):
            i2 = a.delta[i][x]
            bits2 = _apply(tables[x], bits)
            if i2 in a.finals:
                bits2 |= origin
            target = (i2, bits2)
            number = index.get(target)
            if number is None:
                number = len(labels)
                if budget is not None and number >= budget:
                    logger.error(f'Exploration of D aborted: more than {budget} states')
                    raise StateBudgetExceededError(
                        f'Combined automaton exceeds the state budget of {budget}'
                    )
                index[target] = number
                labels.append(target)
                queue.append(target)
            row.append(number)
        rows_out.append(tuple(row))

    finals = frozenset(s for s, (_, bits) in enumerate(labels) if bits & final_mask)
    dfa = Dfa(a.alphabet, len(labels), 0, finals, tuple(rows_out))
    logger.info(
        f'Explored D for |A|={a.state_count}, |B|={rows}, |C|={cols}, op={op.label}: '
        f'{len(labels)} accessible states'
    )
    return CombinedAutomaton(dfa, labels, rows, cols, a.finals, index)


def build_combined(a: Dfa, b: Dfa, c: Dfa, op: BooleanOp) -> Dfa:
    """Accessible part of D, recognizing L(A)·(L(B) op L(C))."""
    return explore_combined(a, b, c, op).dfa


def saturated_state_census(a: Dfa, b: Dfa, c: Dfa, op: BooleanOp) -> int:
    """Number of accessible states (i, S) of D whose tableau is saturated."""
    return count_saturated_states(explore_combined(a, b, c, op))


def count_saturated_states(explored: CombinedAutomaton) -> int:
    return sum(
        1 for _, bits in explored.labels
        if is_saturated(Tableau(explored.rows, explored.cols, bits))
    )


def saturation_violations(explored: CombinedAutomaton) -> list[int]:
    """
    States (i, S) for which (i, Sat(S)) is not accessible or not equivalent
    to (i, S). Empty when every state is equivalent to its saturation.
    """
    classes = equivalence_classes(explored.dfa)
    violations = []
    for s in range(explored.state_count):
        state = explored.state(s)
        target = explored.index_of(state.a_state, saturate(state.tableau))
        if target is None or classes[target] != classes[s]:
            violations.append(s)
    return violations


# ============================================================================
# Operations and predictions
# ============================================================================

@dataclass(frozen=True)
class OpDecomposition:
    """
    N op P = N′ base P′ with N′ ∈ {N, N̄} and P′ ∈ {P, P̄}.

    `base` is None for the six degenerate operations.
    """
    base: Optional[BooleanOp]
    complement_n: bool = False
    complement_p: bool = False

    @property
    def is_degenerate(self) -> bool:
        return self.base is None


DEGENERATE = OpDecomposition(None)


def canonicalize_op(op: BooleanOp) -> OpDecomposition:
    """Express `op` through ∩, ∪ or ⊕ and complements of N and/or P."""
    if op.is_degenerate:
        return DEGENERATE
    for base in BASE_OPERATIONS:
        for complement_n, complement_p in ((False, False), (True, False), (False, True), (True, True)):
            if all(
                op.truth(x, y) == base.truth(x != complement_n, y != complement_p)
                for x in (False, True)
                for y in (False, True)
            ):
                return OpDecomposition(base, complement_n, complement_p)
    # every non-degenerate function is one of the twelve candidates
    raise AssertionError(f'No decomposition found for {op.label}')


@dataclass(frozen=True)
class Prediction:
    value: int
    bound_only: bool


def composed_bound(m: int, n: int, p: int) -> int:
    """(m-1)·2^{np} + 2^{np-1}: catenation composed with the np product bound."""
    return (m - 1) * 2 ** (n * p) + 2 ** (n * p - 1)


def predicted_value(m: int, n: int, p: int, op: BooleanOp) -> Prediction:
    """
    Predicted state complexity of M·(N op P).

    ⊕-based operations get (m-1)·α_{n,p} + α′_{n,p}, exact for m, n, p >= 3;
    ∩ and ∪ get their upper bounds. Complements leave the value unchanged.

    Raises:
        DegenerateOperationError: for ∅, Σ*, N, P, N̄, P̄
    """
    decomposition = canonicalize_op(op)
    if decomposition.is_degenerate:
        raise DegenerateOperationError(f'{op.label} is degenerate; no non-trivial bound applies')
    if decomposition.base is BooleanOp.XOR:
        value = (m - 1) * alpha(n, p) + alpha_prime(n, p)
        return Prediction(value, bound_only=min(m, n, p) < 3)
    if decomposition.base is BooleanOp.AND:
        return Prediction(composed_bound(m, n, p), bound_only=True)
    return Prediction(union_count(m, n, p), bound_only=True)


# ============================================================================
# Verification
# ============================================================================

@dataclass
class VerificationReport:
    """
    Outcome of one verification run.

    bound_only reports only promise computed_sc <= predicted; otherwise the
    two must be equal for the report to pass.
    """
    m: int
    n: int
    p: int
    op: BooleanOp
    computed_sc: int
    predicted: int
    bound_only: bool
    accessible_count: int
    saturated_state_count: int
    elapsed: timedelta = field(default_factory=timedelta)

    @property
    def passed(self) -> bool:
        if self.bound_only:
            return self.computed_sc <= self.predicted
        return self.computed_sc == self.predicted

    @property
    def status(self) -> str:
        return 'PASSED' if self.passed else 'FAILED'


def verify(
    m: int,
    n: int,
    p: int,
    op: BooleanOp,
    budget: int = DEFAULT_BUDGET,
) -> VerificationReport:
    """
    Build D on the witness triple for `op`, minimize it and compare its size
    with the prediction.

    Raises:
        SizeTooSmallError: if any size is below 3
        StateBudgetExceededError: if m·2^{np} exceeds `budget`
        DegenerateOperationError: for degenerate operations
    """
    if min(m, n, p) < 3:
        raise SizeTooSmallError(f'verify needs m, n, p >= 3, got ({m}, {n}, {p})')
    if m * 2 ** (n * p) > budget:
        raise StateBudgetExceededError(
            f'm*2^(np) = {m * 2 ** (n * p)} exceeds the state budget of {budget}'
        )
    prediction = predicted_value(m, n, p, op)
    decomposition = canonicalize_op(op)

    started = perf_counter()
    a, b, c = witness_triple(m, n, p)
    if decomposition.complement_n:
        b = complement(b)
    if decomposition.complement_p:
        c = complement(c)

    explored = explore_combined(a, b, c, op, budget)
    minimal = minimize(explored.dfa)
    report = VerificationReport(
        m=m,
        n=n,
        p=p,
        op=op,
        computed_sc=minimal.state_count,
        predicted=prediction.value,
        bound_only=prediction.bound_only,
        accessible_count=explored.state_count,
        saturated_state_count=count_saturated_states(explored),
        elapsed=timedelta(seconds=perf_counter() - started),
    )

    message = (
        f'verify({m}, {n}, {p}, {op.label}): computed={report.computed_sc} '
        f'predicted={report.predicted} bound_only={report.bound_only} '
        f'accessible={report.accessible_count} saturated={report.saturated_state_count} '
        f'in {report.elapsed.total_seconds():.2f}s'
    )
    if report.passed:
        logger.info(f'✅ {message}')
    else:
        logger.warning(f'❌ {message}')
    return report

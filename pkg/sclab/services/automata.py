"""
sclab Automata Service

Complete DFA/NFA values and the classical constructions used by the rest of
the package: subset construction, minimization, complement, boolean product,
catenation, accessibility and language equivalence.

All automata here are complete and immutable. States are dense integer
indices; symbols are compared by their index in the shared, ordered alphabet,
so every construction is reproducible bit for bit.
"""

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence
import logging

from sclab.services.errors import (
    AlphabetMismatchError,
    InvalidAutomatonError,
    UnknownOperationError,
    UnknownSymbolError,
)

logger = logging.getLogger(__name__)

Word = Sequence[str]


# ============================================================================
# Boolean operations (the 16 binary boolean functions)
# ============================================================================

class BooleanOp(Enum):
    """
    One of the 16 binary boolean functions, as a 4-bit truth table.

    The code reads the table column top to bottom: the most significant bit
    is the value on (N=0, P=0), the least significant the value on (N=1, P=1).
    """
    EMPTY = (0, '∅')
    AND = (1, 'N∩P')
    N_MINUS_P = (2, 'N∩P̄')
    N = (3, 'N')
    P_MINUS_N = (4, 'N̄∩P')
    P = (5, 'P')
    XOR = (6, 'N⊕P')
    OR = (7, 'N∪P')
    NOR = (8, 'N̄∩P̄')
    XNOR = (9, 'N̄⊕P')
    NOT_P = (10, 'P̄')
    N_OR_NOT_P = (11, 'N∪P̄')
    NOT_N = (12, 'N̄')
    NOT_N_OR_P = (13, 'N̄∪P')
    NAND = (14, 'N̄∪P̄')
    ALL = (15, 'Σ*')

    def __init__(self, code: int, label: str):
        self.code = code
        self.label = label

    def truth(self, in_n: bool, in_p: bool) -> bool:
        """Evaluate the operation on membership in N and in P."""
        shift = 3 - (2 * int(bool(in_n)) + int(bool(in_p)))
        return bool((self.code >> shift) & 1)

    @property
    def is_degenerate(self) -> bool:
        """True for ∅, Σ*, N, P, N̄ and P̄ (the value ignores an argument)."""
        return self.code in _DEGENERATE_CODES

    @classmethod
    def from_code(cls, code: int) -> 'BooleanOp':
        for op in cls:
            if op.code == code:
                return op
        raise UnknownOperationError(f'No boolean operation with truth code {code}')

    @classmethod
    def from_name(cls, name: str) -> 'BooleanOp':
        """Resolve an operation from its symbol, enum name or descriptive alias."""
        key = name.strip().lower().replace('_', '-')
        op = _ALIASES.get(key)
        if op is None:
            raise UnknownOperationError(
                f'Unknown boolean operation {name!r}; '
                f'expected one of {sorted(_ALIASES)}'
            )
        return op


_DEGENERATE_CODES = frozenset({0, 3, 5, 10, 12, 15})

_ALIASES: dict[str, BooleanOp] = {}

for _op, _names in {
    BooleanOp.EMPTY: ('empty', 'false', '∅'),
    BooleanOp.AND: ('and', 'intersection', 'inter', '∩', '&'),
    BooleanOp.N_MINUS_P: ('n-minus-p', 'difference', 'minus', 'andnot', '-'),
    BooleanOp.N: ('n', 'left'),
    BooleanOp.P_MINUS_N: ('p-minus-n', 'notn-and-p'),
    BooleanOp.P: ('p', 'right'),
    BooleanOp.XOR: ('xor', 'symdiff', 'symmetric-difference', '⊕', '^'),
    BooleanOp.OR: ('or', 'union', '∪', '|'),
    BooleanOp.NOR: ('nor',),
    BooleanOp.XNOR: ('xnor', 'equiv', 'iff'),
    BooleanOp.NOT_P: ('not-p',),
    BooleanOp.N_OR_NOT_P: ('n-or-not-p', 'converse-implies'),
    BooleanOp.NOT_N: ('not-n',),
    BooleanOp.NOT_N_OR_P: ('not-n-or-p', 'implies'),
    BooleanOp.NAND: ('nand',),
    BooleanOp.ALL: ('all', 'true', 'sigma-star', 'σ*'),
}.items():
    for _name in _names + (_op.name.lower().replace('_', '-'), _op.label.lower()):
        _ALIASES[_name] = _op


# ============================================================================
# Automaton values
# ============================================================================

def _check_alphabet(alphabet: tuple) -> None:
    if len(alphabet) == 0:
        raise InvalidAutomatonError('Alphabet must not be empty')
    if len(set(alphabet)) != len(alphabet):
        raise InvalidAutomatonError(f'Alphabet symbols must be distinct: {list(alphabet)}')


@dataclass(frozen=True)
class Dfa:
    """
    Complete deterministic automaton.

    Attributes:
        alphabet: ordered, distinct symbols
        state_count: number of states, indexed 0..state_count-1
        initial: initial state
        finals: final states
        delta: delta[state][symbol_index] is the destination state
    """
    alphabet: tuple[str, ...]
    state_count: int
    initial: int
    finals: frozenset[int]
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_alphabet(self.alphabet)
        if self.state_count <= 0:
            raise InvalidAutomatonError('A DFA needs at least one state')
        if not 0 <= self.initial < self.state_count:
            raise InvalidAutomatonError(f'Initial state {self.initial} out of range')
        if any(not 0 <= f < self.state_count for f in self.finals):
            raise InvalidAutomatonError(f'Final states {sorted(self.finals)} out of range')
        if len(self.delta) != self.state_count:
            raise InvalidAutomatonError('Transition table must have one row per state')
        width = len(self.alphabet)
        for row in self.delta:
            if len(row) != width:
                raise InvalidAutomatonError('Transition table must be complete')
            for target in row:
                if not 0 <= target < self.state_count:
                    raise InvalidAutomatonError(f'Transition target {target} out of range')

    def symbol_index(self, symbol: str) -> int:
        try:
            return self.alphabet.index(symbol)
        except ValueError:
            raise UnknownSymbolError(symbol, self.alphabet) from None

    def step(self, state: int, symbol: str) -> int:
        return self.delta[state][self.symbol_index(symbol)]

    def run(self, state: int, word: Word) -> int:
        """Return the state reached from `state` after reading `word`."""
        for symbol in word:
            state = self.delta[state][self.symbol_index(symbol)]
        return state

    def accepts(self, word: Word) -> bool:
        return self.run(self.initial, word) in self.finals


@dataclass(frozen=True)
class Nfa:
    """
    Complete nondeterministic automaton without ε-transitions.

    delta[state][symbol_index] is a (possibly empty) set of destinations.
    """
    alphabet: tuple[str, ...]
    state_count: int
    initials: frozenset[int]
    finals: frozenset[int]
    delta: tuple[tuple[frozenset[int], ...], ...]

    def __post_init__(self):
        _check_alphabet(self.alphabet)
        if self.state_count <= 0:
            raise InvalidAutomatonError('An NFA needs at least one state')
        for name, states in (('initial', self.initials), ('final', self.finals)):
            if any(not 0 <= s < self.state_count for s in states):
                raise InvalidAutomatonError(f'{name.capitalize()} states {sorted(states)} out of range')
        if len(self.delta) != self.state_count:
            raise InvalidAutomatonError('Transition table must have one row per state')
        width = len(self.alphabet)
        for row in self.delta:
            if len(row) != width:
                raise InvalidAutomatonError('Transition table must be defined on every symbol')
            for targets in row:
                if any(not 0 <= t < self.state_count for t in targets):
                    raise InvalidAutomatonError(f'Transition targets {sorted(targets)} out of range')

    def symbol_index(self, symbol: str) -> int:
        try:
            return self.alphabet.index(symbol)
        except ValueError:
            raise UnknownSymbolError(symbol, self.alphabet) from None

    def accepts(self, word: Word) -> bool:
        current = set(self.initials)
        for symbol in word:
            index = self.symbol_index(symbol)
            current = {t for s in current for t in self.delta[s][index]}
        return not current.isdisjoint(self.finals)


def dfa_from_table(
    alphabet: Iterable[str],
    initial: int,
    finals: Iterable[int],
    transitions: dict[str, Sequence[int]],
) -> Dfa:
    """
    Build a Dfa from the file-format layout: one destination array per symbol.
    """
    alphabet = tuple(alphabet)
    missing = [s for s in alphabet if s not in transitions]
    if missing:
        raise InvalidAutomatonError(f'No transitions given for symbols {missing}')
    columns = [list(transitions[s]) for s in alphabet]
    state_count = len(columns[0])
    if any(len(column) != state_count for column in columns):
        raise InvalidAutomatonError('Every symbol needs one destination per state')
    delta = tuple(tuple(column[q] for column in columns) for q in range(state_count))
    return Dfa(alphabet, state_count, initial, frozenset(finals), delta)


def _same_alphabet(left, right) -> None:
    if left.alphabet != right.alphabet:
        raise AlphabetMismatchError(left.alphabet, right.alphabet)


# ============================================================================
# Operations
# ============================================================================

def accepts(d: Dfa, word: Word) -> bool:
    """True iff the initial state reaches a final state on `word`."""
    return d.accepts(word)


def accessible(d: Dfa) -> Dfa:
    """Restrict `d` to its accessible states, renumbered in BFS order."""
    index = {d.initial: 0}
    order = [d.initial]
    queue = deque(order)
    while queue:
        state = queue.popleft()
        for target in d.delta[state]:
            if target not in index:
                index[target] = len(order)
                order.append(target)
                queue.append(target)
    delta = tuple(tuple(index[t] for t in d.delta[s]) for s in order)
    finals = frozenset(index[s] for s in order if s in d.finals)
    return Dfa(d.alphabet, len(order), 0, finals, delta)


def complement(d: Dfa) -> Dfa:
    """Interchange the finality of every state."""
    finals = frozenset(range(d.state_count)) - d.finals
    return Dfa(d.alphabet, d.state_count, d.initial, finals, d.delta)


def determinize(n: Nfa) -> Dfa:
    """
    Subset construction restricted to its accessible part.

    Subsets are held as bitmasks (a canonical form of the sorted index list)
    and numbered in BFS discovery order. The empty subset, when reached, is an
    ordinary sink state.
    """
    width = len(n.alphabet)
    images = [
        [sum(1 << t for t in n.delta[q][a]) for a in range(width)]
        for q in range(n.state_count)
    ]
    final_mask = sum(1 << f for f in n.finals)

    start = sum(1 << q for q in n.initials)
    index = {start: 0}
    order = [start]
    rows: list[tuple[int, ...]] = []
    queue = deque(order)
    while queue:
        subset = queue.popleft()
        members = [q for q in range(n.state_count) if subset >> q & 1]
        row = []
        for a in range(width):
            target = 0
            for q in members:
                target |= images[q][a]
            if target not in index:
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            row.append(index[target])
        rows.append(tuple(row))

    finals = frozenset(i for i, subset in enumerate(order) if subset & final_mask)
    logger.debug(f'Subset construction: {n.state_count} NFA states -> {len(order)} DFA states')
    return Dfa(n.alphabet, len(order), 0, finals, tuple(rows))


def equivalence_classes(d: Dfa) -> list[int]:
    """
    Class id of every state under language equivalence ∼.

    Moore-style partition refinement: each round splits blocks by the tuple
    (own block, block of each successor) until the block count is stable.
    """
    block = [1 if s in d.finals else 0 for s in range(d.state_count)]
    count = len(set(block))
    rounds = 0
    while True:
        rounds += 1
        signatures: dict[tuple, int] = {}
        refined = []
        for state, row in enumerate(d.delta):
            key = (block[state], *(block[t] for t in row))
            refined.append(signatures.setdefault(key, len(signatures)))
        if len(signatures) == count:
            logger.debug(f'Partition refinement stable after {rounds} rounds: {count} classes')
            return block
        block, count = refined, len(signatures)


def minimize(d: Dfa) -> Dfa:
    """
    Accessible quotient of `d` by state equivalence.

    Result states are numbered by BFS over the quotient from the initial
    class, following the alphabet order.
    """
    d = accessible(d)
    block = equivalence_classes(d)

    representative: dict[int, int] = {}
    for state in range(d.state_count):
        representative.setdefault(block[state], state)

    start = block[d.initial]
    number = {start: 0}
    order = [start]
    queue = deque(order)
    while queue:
        cls = queue.popleft()
        for target in d.delta[representative[cls]]:
            target_cls = block[target]
            if target_cls not in number:
                number[target_cls] = len(order)
                order.append(target_cls)
                queue.append(target_cls)

    delta = tuple(
        tuple(number[block[t]] for t in d.delta[representative[cls]])
        for cls in order
    )
    finals = frozenset(number[cls] for cls in order if representative[cls] in d.finals)
    logger.debug(f'Minimization: {d.state_count} -> {len(order)} states')
    return Dfa(d.alphabet, len(order), 0, finals, delta)


def boolean_product(b: Dfa, c: Dfa, op: BooleanOp) -> Dfa:
    """
    Cartesian product of `b` and `c`; (q, r) is indexed q * |Q_C| + r and is
    final iff op(q in F_B, r in F_C).
    """
    _same_alphabet(b, c)
    width = c.state_count
    delta = tuple(
        tuple(b.delta[q][a] * width + c.delta[r][a] for a in range(len(b.alphabet)))
        for q in range(b.state_count)
        for r in range(c.state_count)
    )
    finals = frozenset(
        q * width + r
        for q in range(b.state_count)
        for r in range(c.state_count)
        if op.truth(q in b.finals, r in c.finals)
    )
    return Dfa(b.alphabet, b.state_count * width, b.initial * width + c.initial, finals, delta)


def catenate(a: Dfa, b: Dfa) -> Nfa:
    """
    Catenation automaton A·B.

    States of A keep their indices, states of B are shifted by |Q_A|. A move
    of A landing in F_A also enters the initial state of B; B's transitions
    are copied unchanged.
    """
    _same_alphabet(a, b)
    offset = a.state_count
    b_initial = b.initial + offset

    initials = {a.initial}
    if a.initial in a.finals:
        initials.add(b_initial)
    finals = {f + offset for f in b.finals}
    if b.initial in b.finals:
        finals |= a.finals

    rows = []
    for q in range(a.state_count):
        row = []
        for target in a.delta[q]:
            targets = {target, b_initial} if target in a.finals else {target}
            row.append(frozenset(targets))
        rows.append(tuple(row))
    for q in range(b.state_count):
        rows.append(tuple(frozenset({t + offset}) for t in b.delta[q]))

    return Nfa(
        a.alphabet,
        a.state_count + b.state_count,
        frozenset(initials),
        frozenset(finals),
        tuple(rows),
    )


def equivalent(a: Dfa, b: Dfa) -> bool:
    """True iff L(a) = L(b), by BFS over the accessible product."""
    _same_alphabet(a, b)
    start = (a.initial, b.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if (p in a.finals) != (q in b.finals):
            return False
        for target in zip(a.delta[p], b.delta[q]):
            if target not in seen:
                seen.add(target)
                queue.append(target)
    return True


def separating_word(d: Dfa, s: int, t: int) -> Optional[tuple[str, ...]]:
    """
    Shortest word (first in alphabet order) sending exactly one of `s`, `t`
    to a final state, or None when the two states are equivalent.
    """
    start = (s, t)
    parent: dict[tuple[int, int], Optional[tuple[tuple[int, int], int]]] = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if (p in d.finals) != (q in d.finals):
            word = []
            while parent[pair] is not None:
                pair, symbol = parent[pair]
                word.append(d.alphabet[symbol])
            return tuple(reversed(word))
        for symbol, target in enumerate(zip(d.delta[p], d.delta[q])):
            if target not in parent:
                parent[target] = (pair, symbol)
                queue.append(target)
    return None

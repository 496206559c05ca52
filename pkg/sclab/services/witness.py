"""
sclab Witness Service

Brzozowski automata W_n with a letter-role assignment, the transformations
induced by words, and the witness triple A = W_m(a,c,b,d), B = W_n(a,b,c,d),
C = W_p(d,b,c,a) over the shared alphabet (a, b, c, d).
"""

from dataclasses import dataclass
import logging

from sclab.services.automata import Dfa, Word
from sclab.services.errors import SizeTooSmallError

logger = logging.getLogger(__name__)

ALPHABET: tuple[str, ...] = ('a', 'b', 'c', 'd')

Transformation = tuple[int, ...]


@dataclass(frozen=True)
class LetterRoles:
    """
    Which symbol acts as the cycle (0, 1, ..., n-1), the transposition
    (n-2, n-1), the contraction 1 → 0 and the identity.
    """
    cycle: str = 'a'
    transposition: str = 'b'
    contraction: str = 'c'
    identity: str = 'd'

    def __post_init__(self):
        symbols = (self.cycle, self.transposition, self.contraction, self.identity)
        if len(set(symbols)) != 4:
            raise ValueError(f'Letter roles must use four distinct symbols, got {symbols}')
        if not set(symbols) <= set(ALPHABET):
            raise ValueError(f'Letter roles must be drawn from {ALPHABET}, got {symbols}')


STANDARD_ROLES = LetterRoles('a', 'b', 'c', 'd')


def rotation(n: int, k: int) -> Transformation:
    """The k-rotation q → q + k (mod n)."""
    return tuple((q + k) % n for q in range(n))


def brzozowski(n: int, roles: LetterRoles = STANDARD_ROLES) -> Dfa:
    """
    W_n(roles): states 0..n-1, initial 0, single final state n-1.

    Raises:
        SizeTooSmallError: if n < 3
    """
    if n < 3:
        raise SizeTooSmallError(f'Brzozowski automata need at least 3 states, got {n}')

    def transposition(q: int) -> int:
        return {n - 2: n - 1, n - 1: n - 2}.get(q, q)

    actions = {
        roles.cycle: rotation(n, 1),
        roles.transposition: tuple(transposition(q) for q in range(n)),
        roles.contraction: tuple(0 if q == 1 else q for q in range(n)),
        roles.identity: tuple(range(n)),
    }
    delta = tuple(tuple(actions[symbol][q] for symbol in ALPHABET) for q in range(n))
    return Dfa(ALPHABET, n, 0, frozenset({n - 1}), delta)


def witness_triple(m: int, n: int, p: int) -> tuple[Dfa, Dfa, Dfa]:
    """
    A = W_m(a,c,b,d), B = W_n(a,b,c,d), C = W_p(d,b,c,a).

    Raises:
        SizeTooSmallError: if any size is below 3
    """
    if min(m, n, p) < 3:
        raise SizeTooSmallError(f'The witness triple needs m, n, p >= 3, got ({m}, {n}, {p})')
    logger.debug(f'Building witness triple for ({m}, {n}, {p})')
    return (
        brzozowski(m, LetterRoles(cycle='a', transposition='c', contraction='b', identity='d')),
        brzozowski(n, LetterRoles(cycle='a', transposition='b', contraction='c', identity='d')),
        brzozowski(p, LetterRoles(cycle='d', transposition='b', contraction='c', identity='a')),
    )


def word_action(d: Dfa, word: Word) -> Transformation:
    """The transformation of d's states induced by reading `word`."""
    indices = [d.symbol_index(symbol) for symbol in word]
    result = []
    for state in range(d.state_count):
        for index in indices:
            state = d.delta[state][index]
        result.append(state)
    return tuple(result)


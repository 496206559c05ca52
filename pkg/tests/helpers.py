"""Random automata, word strategies and transformation helpers shared by the suites."""

from random import Random

from hypothesis import strategies as st

from sclab.services.automata import Dfa, Nfa, minimize
from sclab.services.witness import word_action

SMALL_ALPHABET = ('a', 'b')


def random_dfa(rng: Random, size: int, alphabet=SMALL_ALPHABET) -> Dfa:
    delta = tuple(
        tuple(rng.randrange(size) for _ in alphabet) for _ in range(size)
    )
    finals = frozenset(q for q in range(size) if rng.random() < 0.5)
    return Dfa(tuple(alphabet), size, 0, finals, delta)


def random_minimal_dfa(rng: Random, size: int, alphabet=SMALL_ALPHABET) -> Dfa:
    """Draw until the minimal automaton keeps exactly `size` states."""
    while True:
        d = minimize(random_dfa(rng, size, alphabet))
        if d.state_count == size:
            return d


@st.composite
def dfas(draw, max_states: int = 5, alphabet=SMALL_ALPHABET) -> Dfa:
    size = draw(st.integers(1, max_states))
    state = st.integers(0, size - 1)
    delta = tuple(
        tuple(draw(state) for _ in alphabet) for _ in range(size)
    )
    finals = frozenset(draw(st.sets(state)))
    return Dfa(tuple(alphabet), size, draw(state), finals, delta)


@st.composite
def nfas(draw, max_states: int = 5, alphabet=SMALL_ALPHABET) -> Nfa:
    size = draw(st.integers(1, max_states))
    subsets = st.frozensets(st.integers(0, size - 1))
    delta = tuple(
        tuple(draw(subsets) for _ in alphabet) for _ in range(size)
    )
    return Nfa(tuple(alphabet), size, draw(subsets), draw(subsets), delta)


def words(alphabet=SMALL_ALPHABET, max_size: int = 8):
    return st.lists(st.sampled_from(alphabet), max_size=max_size).map(tuple)


def product_action(b: Dfa, c: Dfa, word) -> dict[tuple[int, int], tuple[int, int]]:
    """The action of `word` on couples (q, r) of Q_B × Q_C."""
    on_b, on_c = word_action(b, word), word_action(c, word)
    return {
        (q, r): (on_b[q], on_c[r])
        for q in range(b.state_count)
        for r in range(c.state_count)
    }


def is_permutation(transformation) -> bool:
    values = list(transformation.values()) if isinstance(transformation, dict) else list(transformation)
    return len(set(values)) == len(values)


def image(transformation, states) -> frozenset[int]:
    return frozenset(transformation[q] for q in states)

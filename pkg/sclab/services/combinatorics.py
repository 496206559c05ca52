"""
sclab Combinatorics Service

Exact integer and polynomial combinatorics behind the saturated-tableau
counts: integer and set partitions, the Bell / Stirling / Rao
Uppuluri-Carpenter families, complete Bell polynomials at integer weights,
the generating polynomial α_{n,p}(t) of saturated tableaux by number of
marked cells, the counts α_{n,p} and α′_{n,p}, monoid-series coefficients and
the union-case counting formula.

Everything is arbitrary-precision: Bell-family values overflow 64 bits
quickly, and the alternating sums in the closed forms only become integral
once every term is added. Sums over rationals are asserted integral at the
end; a violation raises ArithmeticInvariantError.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable, Iterator, Sequence, Union
import logging

from sclab.services.errors import ArithmeticInvariantError, NonPositiveDimensionError

logger = logging.getLogger(__name__)


# ============================================================================
# Value types
# ============================================================================

@dataclass(frozen=True)
class IntegerPartition:
    """
    A decreasing sequence of positive integers.

    Attributes:
        parts: the parts, largest first
    """
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(part <= 0 for part in parts):
            raise ValueError(f'Partition parts must be positive: {list(parts)}')
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f'Partition parts must be decreasing: {list(parts)}')
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def of(cls, *parts: int) -> 'IntegerPartition':
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        """Number of parts (#λ)."""
        return len(self.parts)

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)


@dataclass(frozen=True)
class IntPolynomial:
    """
    Dense polynomial in t with arbitrary-precision integer coefficients.

    coeffs[j] is the coefficient of t^j; trailing zeros are trimmed, so the
    zero polynomial has no coefficients and degree -1.
    """
    coeffs: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    @classmethod
    def constant(cls, value: int) -> 'IntPolynomial':
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> 'IntPolynomial':
        return cls((0,) * degree + (coefficient,))

    @classmethod
    def from_fractions(cls, values: Sequence[Fraction]) -> 'IntPolynomial':
        """Convert exact rational coefficients, insisting they are integers."""
        coeffs = []
        for j, value in enumerate(values):
            value = Fraction(value)
            if value.denominator != 1:
                raise ArithmeticInvariantError(f'Coefficient of t^{j} is not integral: {value}')
            coeffs.append(value.numerator)
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, j: int) -> int:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def evaluate(self, t: Union[int, Fraction]) -> Union[int, Fraction]:
        result = 0
        for c in reversed(self.coeffs):
            result = result * t + c
        return result

    def derivative(self) -> 'IntPolynomial':
        return IntPolynomial(tuple(j * c for j, c in enumerate(self.coeffs))[1:])

    def to_strings(self) -> list[str]:
        """Coefficients lowest degree first, as decimal strings."""
        return [str(c) for c in self.coeffs] or ['0']

    def __add__(self, other: Union['IntPolynomial', int]) -> 'IntPolynomial':
        other = _as_polynomial(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self.coefficient(j) + other.coefficient(j) for j in range(size)))

    __radd__ = __add__

    def __neg__(self) -> 'IntPolynomial':
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union['IntPolynomial', int]) -> 'IntPolynomial':
        return self + (-_as_polynomial(other))

    def __rsub__(self, other: int) -> 'IntPolynomial':
        return _as_polynomial(other) - self

    def __mul__(self, other: Union['IntPolynomial', int]) -> 'IntPolynomial':
        other = _as_polynomial(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        result = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    result[i + j] += a * b
        return IntPolynomial(tuple(result))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'IntPolynomial':
        if exponent < 0:
            raise ValueError('Negative powers are not polynomials')
        result, base = IntPolynomial.constant(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __str__(self) -> str:
        terms = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c:
                power = '' if j == 0 else ('t' if j == 1 else f't^{j}')
                scale = str(c) if (c != 1 or j == 0) else ''
                terms.append(f'{scale}{power}')
        return ' + '.join(terms).replace('+ -', '- ') or '0'


def _as_polynomial(value: Union[IntPolynomial, int]) -> IntPolynomial:
    return value if isinstance(value, IntPolynomial) else IntPolynomial.constant(value)


# ============================================================================
# Partitions
# ============================================================================

def _partition_parts(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partition_parts(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partitions(n: int) -> tuple[IntegerPartition, ...]:
    return tuple(IntegerPartition(parts) for parts in _partition_parts(n, n))


def partitions(n: int) -> list[IntegerPartition]:
    """All partitions of n in reverse-lexicographic order ([n] first)."""
    if n < 0:
        raise ValueError(f'Cannot partition a negative integer: {n}')
    return list(_partitions(n))


def set_partitions(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Set partitions of {0, ..., n-1} via restricted growth strings."""
    if n == 0:
        yield ()
        return
    growth = [0] * n

    def extend(position: int, blocks: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if position == n:
            yield tuple(
                tuple(i for i in range(n) if growth[i] == b) for b in range(blocks)
            )
            return
        for b in range(blocks + 1):
            growth[position] = b
            yield from extend(position + 1, max(blocks, b + 1))

    yield from extend(1, 1)


def partition_factorial(partition: IntegerPartition) -> int:
    """λ! = (∏ λ_i!) · (∏ mult_i(λ)!)."""
    return prod(factorial(part) for part in partition.parts) * prod(
        factorial(m) for m in partition.multiplicities.values()
    )


def shape_count(partition: IntegerPartition) -> int:
    """Number of set partitions of a weight(λ)-set with block sizes λ."""
    count, remainder = divmod(factorial(partition.weight), partition_factorial(partition))
    if remainder:
        raise ArithmeticInvariantError(f'{partition.weight}!/λ! is not integral for {partition.parts}')
    return count


# ============================================================================
# Bell-family sequences
# ============================================================================

@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Number of set partitions of an n-set into k blocks."""
    if n < 0 or k < 0:
        raise ValueError(f'stirling2 needs non-negative arguments, got ({n}, {k})')
    if n == k:
        return 1
    if n == 0 or k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def bell(k: int) -> list[int]:
    """B_0, ..., B_k computed with the Bell triangle."""
    if k < 0:
        raise ValueError('Sequence length must be non-negative')
    values = [1]
    row = [1]
    for _ in range(k):
        next_row = [row[-1]]
        for value in row:
            next_row.append(next_row[-1] + value)
        row = next_row
        values.append(row[0])
    return values


def rao(k: int) -> list[int]:
    """Rao Uppuluri-Carpenter numbers r_0, ..., r_k: r_n = Σ_j (-1)^j S(n, j)."""
    if k < 0:
        raise ValueError('Sequence length must be non-negative')
    return [sum((-1) ** j * stirling2(n, j) for j in range(n + 1)) for n in range(k + 1)]


def a296(k: int) -> list[int]:
    """
    Set partitions without singleton blocks, A_n(0, 1, 1, ...), for n = 0..k.

    Inverse binomial transform of the Bell numbers.
    """
    bells = bell(k)
    return [
        sum((-1) ** (n - i) * comb(n, i) * bells[i] for i in range(n + 1))
        for n in range(k + 1)
    ]


def complete_bell(n: int, weights: Sequence[int]) -> int:
    """
    Complete Bell polynomial A_n(a_1, ..., a_n) at integer weights.

    `weights[0]` is a_1. Evaluated through the partition expansion, each
    shape λ ⊢ n contributing n!/λ! · a_{λ_1} ⋯ a_{λ_k}.
    """
    if n < 0:
        raise ValueError('complete_bell needs n >= 0')
    if len(weights) < n:
        raise ValueError(f'complete_bell({n}) needs {n} weights, got {len(weights)}')
    return sum(
        shape_count(partition) * prod(weights[part - 1] for part in partition.parts)
        for partition in partitions(n)
    )


# ============================================================================
# Saturated tableaux counts
# ============================================================================

def p_lambda(partition: IntegerPartition) -> IntPolynomial:
    """P_λ(t) = Σ_i t^{λ_i}."""
    result = IntPolynomial()
    for part in partition.parts:
        result = result + IntPolynomial.monomial(part)
    return result


def _shape_weight(n: int, i: int, partition: IntegerPartition, raos: list[int]) -> Fraction:
    """-n! · r_{n-i+1} / ((n-i)! · λ!), the weight of λ ⊢ i in the closed form."""
    return Fraction(-factorial(n) * raos[n - i + 1], factorial(n - i) * partition_factorial(partition))


def _shape_terms(n: int) -> Iterator[tuple[int, IntegerPartition, Fraction]]:
    raos = rao(n + 1)
    for i in range(n + 1):
        for partition in partitions(i):
            yield i, partition, _shape_weight(n, i, partition, raos)


@lru_cache(maxsize=None)
def alpha_poly(n: int, p: int) -> IntPolynomial:
    """
    α_{n,p}(t): the coefficient of t^j counts saturated n×p tableaux with j
    marked cells.

    α_{n,p}(t) = -n! Σ_{i=0..n} r_{n-i+1}/(n-i)! Σ_{λ⊢i} (1 + P_λ(t))^p / λ!
    """
    if n < 0 or p < 0:
        raise ValueError(f'alpha_poly needs non-negative sizes, got ({n}, {p})')
    acc: list[Fraction] = [Fraction(0)] * (n * p + 1)
    for _, partition, weight in _shape_terms(n):
        if weight == 0:
            continue
        term = (1 + p_lambda(partition)) ** p
        for j, c in enumerate(term.coeffs):
            acc[j] += weight * c
    result = IntPolynomial.from_fractions(acc)
    if any(c < 0 for c in result.coeffs):
        raise ArithmeticInvariantError(f'alpha_poly({n}, {p}) has a negative coefficient: {result.coeffs}')
    logger.debug(f'alpha_poly({n}, {p}) = {result}')
    return result


def alpha(n: int, p: int) -> int:
    """Number of saturated n×p tableaux, α_{n,p}(1)."""
    return alpha_poly(n, p).evaluate(1)


def alpha_by_shape_sum(n: int, p: int) -> int:
    """
    α_{n,p} through the double sum over shapes, with (1 + #λ)^p in place of
    the polynomial; used to cross-check `alpha`.
    """
    total = sum(
        weight * (1 + partition.length) ** p for _, partition, weight in _shape_terms(n)
    )
    return _as_integer(total, f'alpha_by_shape_sum({n}, {p})')


def alpha_prime(n: int, p: int) -> int:
    """
    Number of saturated n×p tableaux with cell (0, 0) marked.

    Computed as (1/np) · dα_{n,p}/dt at t = 1 and checked against the closed
    form over shapes; both the division and the agreement are asserted.
    """
    if n <= 0 or p <= 0:
        raise NonPositiveDimensionError(f'alpha_prime needs positive sizes, got ({n}, {p})')
    marked_total = alpha_poly(n, p).derivative().evaluate(1)
    value, remainder = divmod(marked_total, n * p)
    if remainder:
        raise ArithmeticInvariantError(
            f'Total marked cells {marked_total} is not divisible by {n}*{p}'
        )
    closed_form = alpha_prime_by_shape_sum(n, p)
    if closed_form != value:
        raise ArithmeticInvariantError(
            f'alpha_prime({n}, {p}) disagrees: derivative gives {value}, shapes give {closed_form}'
        )
    return value


def alpha_prime_by_shape_sum(n: int, p: int) -> int:
    """
    -(n-1)! Σ_i r_{n-i+1}/(n-i)! Σ_{λ⊢i} P′_λ(1) (1 + P_λ(1))^{p-1} / λ!
    """
    if n <= 0 or p <= 0:
        raise NonPositiveDimensionError(f'alpha_prime needs positive sizes, got ({n}, {p})')
    total = sum(
        weight / n * partition.weight * (1 + partition.length) ** (p - 1)
        for _, partition, weight in _shape_terms(n)
    )
    return _as_integer(total, f'alpha_prime_by_shape_sum({n}, {p})')


def _exponential_form(n: int, derived: bool) -> dict[int, int]:
    coefficients: dict[int, Fraction] = {}
    for _, partition, weight in _shape_terms(n):
        if derived:
            weight = weight / n * partition.weight
        if weight:
            base = 1 + partition.length
            coefficients[base] = coefficients.get(base, Fraction(0)) + weight
    return {
        base: _as_integer(value, f'coefficient of base {base}')
        for base, value in sorted(coefficients.items(), reverse=True)
        if value
    }


def alpha_exponential_form(n: int) -> dict[int, int]:
    """{b: c_b} with α_{n,p} = Σ_b c_b · b^p for every p ≥ 0."""
    return _exponential_form(n, derived=False)


def alpha_prime_exponential_form(n: int) -> dict[int, int]:
    """{b: c_b} with α′_{n,p} = Σ_b c_b · b^{p-1} for every p ≥ 1."""
    if n <= 0:
        raise NonPositiveDimensionError(f'alpha_prime needs a positive row count, got {n}')
    return _exponential_form(n, derived=True)


def alpha_table(max_n: int) -> list[list[int]]:
    """Rows n = 0..max_n of α_{n,p} for p = 0..n."""
    return [[alpha(n, p) for p in range(n + 1)] for n in range(max_n + 1)]


def kappa(partition: IntegerPartition, i: int, j: int) -> int:
    """
    Coefficient of x^i t^j in 1 / (1 - (1 + P_λ(t)) x): the number of length-i
    words of total weight j over c_∅ and the letters of any set of shape λ.
    """
    if i < 0 or j < 0:
        raise ValueError(f'kappa needs non-negative indices, got ({i}, {j})')
    return ((1 + p_lambda(partition)) ** i).coefficient(j)


# ============================================================================
# Union and catenation formulas
# ============================================================================

def union_count(m: int, n: int, p: int) -> int:
    """(m-1)((2^n-1)(2^p-1)+1) + 2^{n-1}·2^{p-1}."""
    if m < 1:
        raise NonPositiveDimensionError(f'union_count needs positive sizes, got ({m}, {n}, {p})')
    all_tableaux, origin_tableaux = union_tableau_counts(n, p)
    return (m - 1) * all_tableaux + origin_tableaux


def union_tableau_counts(n: int, p: int) -> tuple[int, int]:
    """
    Distinguishable tableaux for the union case: all of them, and those with
    the origin cell forced.
    """
    if n < 1 or p < 1:
        raise NonPositiveDimensionError(f'union_tableau_counts needs positive sizes, got ({n}, {p})')
    return (2 ** n - 1) * (2 ** p - 1) + 1, 2 ** (n - 1) * 2 ** (p - 1)


def _as_integer(value: Fraction, what: str) -> int:
    value = Fraction(value)
    if value.denominator != 1:
        raise ArithmeticInvariantError(f'{what} is not integral: {value}')
    return value.numerator


def sequence(name: str, k: int) -> list[int]:
    """Dispatch used by the CLI and API: bell, rao or a296 prefixes."""
    generators = {'bell': bell, 'rao': rao, 'a296': a296}
    try:
        return generators[name.lower()](k)
    except KeyError:
        raise ValueError(f'Unknown sequence {name!r}; expected one of {sorted(generators)}') from None


def binomial_transform(values: Iterable[int]) -> list[int]:
    """b_n = Σ_i C(n, i) · a_i."""
    values = list(values)
    return [sum(comb(n, i) * values[i] for i in range(n + 1)) for n in range(len(values))]

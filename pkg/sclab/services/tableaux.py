"""
sclab Tableaux Service

The n×p tableau model of subset states S ⊆ Q_B×Q_C: right triangles, the
rewriting step that completes them into rectangles, the saturation closure
Sat(S), enumeration of saturated tableaux, the column-word encoding and
tableau finality.

Cell (j, k) is marked iff the couple (q_j, r_k) belongs to S. Indices are
0-based everywhere; the bit of cell (j, k) is j * cols + k.
"""

from dataclasses import dataclass
from random import Random
from typing import Iterable, Iterator, Optional
import heapq
import logging

from sclab.services.errors import SizeGuardExceededError

logger = logging.getLogger(__name__)

DEFAULT_CELL_GUARD = 25

MARKED = 'X'
UNMARKED = '.'


def _members(mask: int) -> Iterator[int]:
    index = 0
    while mask:
        if mask & 1:
            yield index
        mask >>= 1
        index += 1


@dataclass(frozen=True)
class Tableau:
    """
    Immutable n×p bit matrix.

    Attributes:
        rows: number of rows n (states of B)
        cols: number of columns p (states of C)
        bits: bit j * cols + k is set iff cell (j, k) is marked
    """
    rows: int
    cols: int
    bits: int = 0

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f'Tableau dimensions must be non-negative, got {self.rows}x{self.cols}')
        if self.bits < 0 or self.bits >> (self.rows * self.cols):
            raise ValueError(f'Cell bits {self.bits:#x} do not fit a {self.rows}x{self.cols} tableau')

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def empty(cls, rows: int, cols: int) -> 'Tableau':
        return cls(rows, cols, 0)

    @classmethod
    def full(cls, rows: int, cols: int) -> 'Tableau':
        return cls(rows, cols, (1 << (rows * cols)) - 1)

    @classmethod
    def from_cells(cls, rows: int, cols: int, cells: Iterable[tuple[int, int]]) -> 'Tableau':
        bits = 0
        for j, k in cells:
            if not (0 <= j < rows and 0 <= k < cols):
                raise ValueError(f'Cell {(j, k)} outside a {rows}x{cols} tableau')
            bits |= 1 << (j * cols + k)
        return cls(rows, cols, bits)

    @classmethod
    def from_row_masks(cls, cols: int, masks: Iterable[int]) -> 'Tableau':
        masks = list(masks)
        bits = 0
        for j, mask in enumerate(masks):
            bits |= mask << (j * cols)
        return cls(len(masks), cols, bits)

    @classmethod
    def from_text(cls, text: str) -> 'Tableau':
        """Parse n lines of p characters, 'X' marked and '.' unmarked."""
        lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
        if not lines:
            return cls(0, 0)
        cols = len(lines[0])
        cells = []
        for j, line in enumerate(lines):
            if len(line) != cols:
                raise ValueError(f'Row {j} has {len(line)} cells, expected {cols}')
            for k, char in enumerate(line):
                if char == MARKED:
                    cells.append((j, k))
                elif char != UNMARKED:
                    raise ValueError(f'Unexpected character {char!r} in row {j}')
        return cls.from_cells(len(lines), cols, cells)

    def to_text(self) -> str:
        return '\n'.join(
            ''.join(MARKED if self.is_marked(j, k) else UNMARKED for k in range(self.cols))
            for j in range(self.rows)
        )

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def is_marked(self, j: int, k: int) -> bool:
        return bool(self.bits >> (j * self.cols + k) & 1)

    def cells(self) -> list[tuple[int, int]]:
        return [divmod(index, self.cols) for index in _members(self.bits)]

    @property
    def marked_count(self) -> int:
        return bin(self.bits).count('1')

    def row_mask(self, j: int) -> int:
        """Columns marked on row j, as a bitmask."""
        return (self.bits >> (j * self.cols)) & ((1 << self.cols) - 1)

    def row_masks(self) -> list[int]:
        return [self.row_mask(j) for j in range(self.rows)]

    def col_mask(self, k: int) -> int:
        """Rows marked on column k, as a bitmask."""
        return sum(1 << j for j in range(self.rows) if self.is_marked(j, k))

    def issubset(self, other: 'Tableau') -> bool:
        self._same_shape(other)
        return self.bits & ~other.bits == 0

    def __le__(self, other: 'Tableau') -> bool:
        return self.issubset(other)

    # ------------------------------------------------------------------
    # Derived tableaux
    # ------------------------------------------------------------------

    def with_cell(self, j: int, k: int) -> 'Tableau':
        return Tableau(self.rows, self.cols, self.bits | 1 << (j * self.cols + k))

    def union(self, other: 'Tableau') -> 'Tableau':
        self._same_shape(other)
        return Tableau(self.rows, self.cols, self.bits | other.bits)

    def intersection(self, other: 'Tableau') -> 'Tableau':
        self._same_shape(other)
        return Tableau(self.rows, self.cols, self.bits & other.bits)

    def transpose(self) -> 'Tableau':
        return Tableau.from_cells(self.cols, self.rows, ((k, j) for j, k in self.cells()))

    def hconcat(self, other: 'Tableau') -> 'Tableau':
        """Glue `other` to the right of this tableau (the monoid product)."""
        if self.rows != other.rows:
            raise ValueError(f'Cannot glue {self.rows}-row and {other.rows}-row tableaux')
        cols = self.cols + other.cols
        masks = (a | b << self.cols for a, b in zip(self.row_masks(), other.row_masks()))
        return Tableau.from_row_masks(cols, masks)

    def _same_shape(self, other: 'Tableau') -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(
                f'Shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}'
            )


@dataclass(frozen=True)
class TableauWord:
    """
    Column-by-column encoding of a tableau: one letter c_E per column, where
    E is the set of marked rows of that column.
    """
    n: int
    letters: tuple[frozenset[int], ...] = ()

    def __post_init__(self):
        for letter in self.letters:
            if any(not 0 <= j < self.n for j in letter):
                raise ValueError(f'Letter {sorted(letter)} uses rows outside 0..{self.n - 1}')

    def __len__(self) -> int:
        return len(self.letters)

    def concat(self, other: 'TableauWord') -> 'TableauWord':
        if self.n != other.n:
            raise ValueError(f'Cannot concatenate words over C_{self.n} and C_{other.n}')
        return TableauWord(self.n, self.letters + other.letters)

    @property
    def is_partial_partition(self) -> bool:
        """True iff the distinct nonempty letters are pairwise disjoint."""
        seen: set[int] = set()
        for letter in {letter for letter in self.letters if letter}:
            if not seen.isdisjoint(letter):
                return False
            seen |= letter
        return True


# ============================================================================
# Saturation
# ============================================================================

def is_saturated(t: Tableau) -> bool:
    """
    True iff no three marked cells form a right triangle.

    Equivalently the marked-column sets of any two rows are equal or
    disjoint.
    """
    seen = 0
    for mask in {mask for mask in t.row_masks() if mask}:
        if mask & seen:
            return False
        seen |= mask
    return True


def saturate(t: Tableau) -> Tableau:
    """
    Sat(t): the least saturated tableau containing t.

    Worklist closure over row pairs: two rows whose column sets intersect
    both receive the union of their column sets.
    """
    masks = t.row_masks()
    changed = True
    while changed:
        changed = False
        for j in range(t.rows):
            for j2 in range(j + 1, t.rows):
                if masks[j] & masks[j2] and masks[j] != masks[j2]:
                    masks[j] = masks[j2] = masks[j] | masks[j2]
                    changed = True
    return Tableau.from_row_masks(t.cols, masks)


def completions(t: Tableau) -> list[tuple[int, int]]:
    """Unmarked cells that complete a right triangle of t into a rectangle."""
    masks = t.row_masks()
    cells = set()
    for j in range(t.rows):
        for j2 in range(t.rows):
            if j != j2 and masks[j] & masks[j2]:
                for k in _members(masks[j] & ~masks[j2]):
                    cells.add((j2, k))
    return sorted(cells)


def rewrite(t: Tableau, cell: tuple[int, int]) -> Tableau:
    """One rewriting step S → S′ marking `cell`."""
    if cell not in completions(t):
        raise ValueError(f'Cell {cell} does not complete a right triangle')
    return t.with_cell(*cell)


def saturate_by_rewriting(t: Tableau, rng: Optional[Random] = None) -> Tableau:
    """Apply rewriting steps in a random order until no triangle remains."""
    rng = rng or Random()
    while True:
        candidates = completions(t)
        if not candidates:
            return t
        t = t.with_cell(*rng.choice(candidates))


# ============================================================================
# Enumeration
# ============================================================================

def _guard(n: int, p: int, limit: int) -> None:
    if n < 0 or p < 0:
        raise ValueError(f'Tableau dimensions must be non-negative, got {n}x{p}')
    if n * p > limit:
        raise SizeGuardExceededError(
            f'{n}x{p} tableaux have {n * p} cells, above the enumeration guard of {limit}'
        )


def _submasks_increasing(mask: int) -> Iterator[int]:
    """Every submask of `mask`, 0 and `mask` included, in increasing order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def _saturated_row_masks(n: int, p: int) -> Iterator[list[int]]:
    """
    Row masks of every saturated n×p tableau, in increasing bit order.

    Rows are chosen from the most significant (row n-1) down to row 0. A row
    is empty, repeats a block already in use, or opens a new block disjoint
    from every column used so far; candidates are tried in increasing order,
    so the tableaux come out sorted without being collected.
    """
    everything = (1 << p) - 1
    masks = [0] * n

    def extend(j: int, used: int, blocks: tuple[int, ...]) -> Iterator[list[int]]:
        if j < 0:
            yield masks
            return
        for mask in heapq.merge(blocks, _submasks_increasing(everything & ~used)):
            masks[j] = mask
            if mask == 0 or mask & used:
                yield from extend(j - 1, used, blocks)
            else:
                yield from extend(j - 1, used | mask, tuple(sorted((*blocks, mask))))

    yield from extend(n - 1, 0, ())


def enumerate_saturated(n: int, p: int, limit: int = DEFAULT_CELL_GUARD) -> Iterator[Tableau]:
    """
    Yield every saturated n×p tableau exactly once, in increasing bit order.

    Generation is lazy: the first tableau is available immediately and
    memory stays proportional to n.

    Raises:
        SizeGuardExceededError: if n * p exceeds `limit`
    """
    _guard(n, p, limit)
    logger.debug(f'Enumerating saturated {n}x{p} tableaux')
    for masks in _saturated_row_masks(n, p):
        yield Tableau.from_row_masks(p, masks)


def enumerate_saturated_bruteforce(n: int, p: int, limit: int = 20) -> Iterator[Tableau]:
    """Filter all 2^(np) tableaux; the reference oracle for enumerate_saturated."""
    _guard(n, p, limit)
    for bits in range(1 << (n * p)):
        t = Tableau(n, p, bits)
        if is_saturated(t):
            yield t


def count_saturated(n: int, p: int, limit: int = DEFAULT_CELL_GUARD) -> int:
    return sum(1 for _ in enumerate_saturated(n, p, limit))


def count_saturated_with_origin(n: int, p: int, limit: int = DEFAULT_CELL_GUARD) -> int:
    """Number of saturated n×p tableaux whose cell (0, 0) is marked."""
    return sum(1 for t in enumerate_saturated(n, p, limit) if t.bits & 1)


def count_saturated_by_marks(n: int, p: int, limit: int = DEFAULT_CELL_GUARD) -> list[int]:
    """counts[j] = number of saturated n×p tableaux with j marked cells."""
    counts = [0] * (n * p + 1)
    for t in enumerate_saturated(n, p, limit):
        counts[t.marked_count] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


# ============================================================================
# Word encoding
# ============================================================================

def encode(t: Tableau) -> TableauWord:
    """Map column k to the letter of its marked rows."""
    return TableauWord(
        t.rows,
        tuple(frozenset(_members(t.col_mask(k))) for k in range(t.cols)),
    )


def decode(w: TableauWord) -> Tableau:
    return Tableau.from_cells(
        w.n,
        len(w.letters),
        ((j, k) for k, letter in enumerate(w.letters) for j in letter),
    )


# ============================================================================
# Finality
# ============================================================================

def final_cell_mask(rows: int, cols: int, final_rows: Iterable[int], final_cols: Iterable[int]) -> int:
    """Cells lying on a final row or a final column but not on both."""
    final_rows, final_cols = set(final_rows), set(final_cols)
    if any(not 0 <= j < rows for j in final_rows) or any(not 0 <= k < cols for k in final_cols):
        raise ValueError(
            f'Final rows {sorted(final_rows)} or columns {sorted(final_cols)} '
            f'outside a {rows}x{cols} tableau'
        )
    mask = 0
    for j in range(rows):
        for k in range(cols):
            if (j in final_rows) != (k in final_cols):
                mask |= 1 << (j * cols + k)
    return mask


def is_final_tableau(t: Tableau, final_rows: Iterable[int], final_cols: Iterable[int]) -> bool:
    """True iff some marked cell is on a final row xor a final column."""
    return bool(t.bits & final_cell_mask(t.rows, t.cols, final_rows, final_cols))

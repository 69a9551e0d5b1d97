"""Matrices of words.

A word matrix has exactly one unit per row, so it is stored as the map
``row -> column of its unit``.  Products compose these maps; the dense 0/1
form is only built for printing and for the linear-algebra layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .automaton import Dfa, StateSet


@dataclass(frozen=True)
class WordMatrix:
    row_target: tuple[int, ...]

    def __post_init__(self):
        n = len(self.row_target)
        if n == 0:
            raise ValueError("word matrices are at least 1x1")
        for i, j in enumerate(self.row_target):
            if not 0 <= j < n:
                raise ValueError(f"row {i}: unit in column {j} outside range({n})")

    @property
    def n(self) -> int:
        return len(self.row_target)

    @classmethod
    def identity(cls, n: int) -> WordMatrix:
        return cls(tuple(range(n)))

    @classmethod
    def constant(cls, n: int, col: int) -> WordMatrix:
        """All units in column ``col`` (the matrix of a reset word)."""
        return cls((col,) * n)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> WordMatrix:
        targets = []
        for i, row in enumerate(rows):
            ones = [j for j, v in enumerate(row) if v == 1]
            if len(ones) != 1 or any(v not in (0, 1) for v in row):
                raise ValueError(f"row {i} is not a unit row: {list(row)}")
            targets.append(ones[0])
        return cls(tuple(targets))

    def __matmul__(self, other: WordMatrix) -> WordMatrix:
        return multiply(self, other)

    def dense(self) -> list[list[int]]:
        return [[1 if j == t else 0 for j in range(self.n)] for t in self.row_target]

    def vector(self) -> tuple[int, ...]:
        """Row-major flattening of the dense form, length ``n*n``."""
        out = [0] * (self.n * self.n)
        for i, t in enumerate(self.row_target):
            out[i * self.n + t] = 1
        return tuple(out)

    def render(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.dense())

    def is_permutation(self) -> bool:
        return len(set(self.row_target)) == self.n

    def inverse(self) -> WordMatrix:
        if not self.is_permutation():
            raise ValueError("matrix is singular")
        inv = [0] * self.n
        for i, t in enumerate(self.row_target):
            inv[t] = i
        return WordMatrix(tuple(inv))


def matrix_of_word(a: Dfa, word: str) -> WordMatrix:
    """Unit at ``(i, j)`` iff ``word`` sends state ``i`` to state ``j``."""
    a.check_word(word)
    targets = list(range(a.n))
    for letter in word:
        row = a.delta[letter]
        targets = [row[t] for t in targets]
    return WordMatrix(tuple(targets))


def multiply(x: WordMatrix, y: WordMatrix) -> WordMatrix:
    if x.n != y.n:
        raise ValueError(f"dimension mismatch: {x.n} vs {y.n}")
    return WordMatrix(tuple(y.row_target[t] for t in x.row_target))


def nonzero_columns(m: WordMatrix) -> frozenset[int]:
    """The column set ``R(u)`` of ``m``."""
    return frozenset(m.row_target)


def rank(m: WordMatrix) -> int:
    return len(set(m.row_target))


def column_units(m: WordMatrix, col: int) -> frozenset[int]:
    """Rows whose unit lies in column ``col``."""
    if not 0 <= col < m.n:
        raise ValueError(f"column {col} outside range({m.n})")
    return frozenset(i for i, t in enumerate(m.row_target) if t == col)


def column_as_states(m: WordMatrix, col: int) -> StateSet:
    return StateSet.of(m.n, column_units(m, col))


def dense_rank(rows: Sequence[Sequence]) -> int:
    """Rank of an arbitrary matrix over the rationals (plain Gaussian elimination)."""
    work = [[Fraction(v) for v in row] for row in rows]
    r = 0
    ncols = len(work[0]) if work else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c] / work[r][c]
                work[i] = [u - f * v for u, v in zip(work[i], work[r])]
        r += 1
    return r

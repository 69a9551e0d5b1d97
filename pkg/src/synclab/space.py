"""Exact linear algebra over vectorised word matrices.

Independence decisions are exact.  Basis rows are kept as primitive integer
vectors in echelon form, which spans the same rational subspace as a reduced
row-echelon basis over the rationals without paying for ``Fraction``;
:meth:`SpanBasis.rref` and :func:`express` return genuine rationals when the
coefficients themselves are wanted.  Vectorisation is row-major.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .matrices import WordMatrix

DenseMatrix = list[list[Fraction]]


@dataclass(frozen=True)
class RationalCombo:
    """Formal sum ``sum(coef * M)``; the empty combo is the additive zero."""

    n: int
    terms: tuple[tuple[Fraction, WordMatrix], ...] = ()

    def __post_init__(self):
        for _, m in self.terms:
            if m.n != self.n:
                raise ValueError(f"term of size {m.n} in a combo of size {self.n}")

    @classmethod
    def of(cls, terms: Iterable[tuple], n: int | None = None) -> RationalCombo:
        terms = tuple((Fraction(c), m) for c, m in terms)
        if n is None:
            if not terms:
                raise ValueError("size of an empty combo must be given")
            n = terms[0][1].n
        return cls(n, terms)

    def coefficient_sum(self) -> Fraction:
        return sum((c for c, _ in self.terms), Fraction(0))

    def left_multiply(self, b: WordMatrix) -> RationalCombo:
        """Termwise ``M_b * M`` (the right side of left distributivity)."""
        return RationalCombo(self.n, tuple((c, b @ m) for c, m in self.terms))

    def right_multiply(self, b: WordMatrix) -> RationalCombo:
        return RationalCombo(self.n, tuple((c, m @ b) for c, m in self.terms))


def evaluate_combo(c: RationalCombo) -> DenseMatrix:
    out = [[Fraction(0)] * c.n for _ in range(c.n)]
    for coef, m in c.terms:
        if m.n != c.n:
            raise ValueError("dimension mismatch")
        for i, j in enumerate(m.row_target):
            out[i][j] += coef
    return out


def zero_matrix(n: int) -> DenseMatrix:
    return [[Fraction(0)] * n for _ in range(n)]


def dense_of(m: WordMatrix) -> DenseMatrix:
    return [[Fraction(v) for v in row] for row in m.dense()]


def dense_matmul(x: Sequence[Sequence], y: Sequence[Sequence]) -> DenseMatrix:
    if len(x[0]) != len(y):
        raise ValueError("dimension mismatch")
    cols = range(len(y[0]))
    return [[sum((Fraction(row[k]) * y[k][j] for k in range(len(y))), Fraction(0)) for j in cols] for row in x]


def is_word_matrix(m: Sequence[Sequence]) -> WordMatrix | None:
    """The word matrix equal to ``m``, or ``None`` (the zero matrix is not one)."""
    n = len(m)
    targets = []
    for row in m:
        if len(row) != n:
            raise ValueError("matrix is not square")
        ones = [j for j, v in enumerate(row) if v == 1]
        if len(ones) != 1 or any(v != 0 for j, v in enumerate(row) if j != ones[0]):
            return None
        targets.append(ones[0])
    return WordMatrix(tuple(targets))


def _primitive(v: list[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        if x:
            g = gcd(g, x)
    if g > 1:
        v = [x // g for x in v]
    return tuple(v)


def _reduce(rows: Sequence[tuple[int, tuple[int, ...]]], v: Sequence[int]) -> list[int]:
    v = list(v)
    for pivot, row in rows:
        x = v[pivot]
        if x:
            p = row[pivot]
            v = [p * a - x * b for a, b in zip(v, row)]
            g = 0
            for a in v:
                if a:
                    g = gcd(g, a)
            if g > 1:
                v = [a // g for a in v]
    return v


@dataclass(frozen=True)
class SpanBasis:
    """Subspace of ``Q^(n*n)`` spanned by the independent members added so far."""

    n: int
    rows: tuple[tuple[int, tuple[int, ...]], ...] = ()
    members: tuple[tuple[int, ...], ...] = field(default=(), repr=False)

    @property
    def member_count(self) -> int:
        return len(self.members)

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def residue(self, vector: Sequence[int]) -> list[int]:
        if len(vector) != self.n * self.n:
            raise ValueError(f"expected a vector of length {self.n * self.n}")
        return _reduce(self.rows, vector)

    def contains(self, m: WordMatrix | Sequence[int]) -> bool:
        vec = m.vector() if isinstance(m, WordMatrix) else m
        return not any(self.residue(vec))

    def rref(self) -> list[list[Fraction]]:
        """Reduced row-echelon form over the rationals, rows ordered by pivot."""
        out = []
        for pivot, row in sorted(self.rows):
            out.append([Fraction(x, row[pivot]) for x in row])
        for i, (pivot, _) in enumerate(sorted(self.rows)):
            for k in range(len(out)):
                if k != i and out[k][pivot]:
                    f = out[k][pivot]
                    out[k] = [a - f * b for a, b in zip(out[k], out[i])]
        return out


def extend_basis(b: SpanBasis, m: WordMatrix | Sequence[int]) -> tuple[SpanBasis, bool]:
    """Add ``m`` if it is outside the span; returns the (possibly unchanged) basis and whether it was added."""
    vec = tuple(m.vector()) if isinstance(m, WordMatrix) else tuple(m)
    if isinstance(m, WordMatrix) and m.n != b.n:
        raise ValueError(f"matrix of size {m.n}, basis of size {b.n}")
    res = b.residue(vec)
    pivot = next((i for i, x in enumerate(res) if x), None)
    if pivot is None:
        return b, False
    if res[pivot] < 0:
        res = [-x for x in res]
    return SpanBasis(b.n, b.rows + ((pivot, _primitive(res)),), b.members + (vec,)), True


def span_of(matrices: Iterable[WordMatrix], n: int) -> SpanBasis:
    basis = SpanBasis(n)
    for m in matrices:
        basis, _ = extend_basis(basis, m)
    return basis


def express(members: Sequence[WordMatrix], target: WordMatrix) -> list[Fraction] | None:
    """Rational coefficients writing ``target`` as a combination of ``members``, if any."""
    cols = [m.vector() for m in members]
    tv = target.vector()
    k = len(cols)
    # augmented system: rows indexed by matrix cells, unknowns are the coefficients
    aug = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(tv[i])] for i in range(len(tv))]
    where = [-1] * k
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        lead = aug[r][c]
        aug[r] = [x / lead for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        where[c] = r
        r += 1
    if any(aug[i][k] != 0 for i in range(r, len(aug))):
        return None
    return [aug[where[c]][k] if where[c] >= 0 else Fraction(0) for c in range(k)]


def column_basis(n: int, k: int) -> list[WordMatrix]:
    """Basis of the span of word matrices whose units lie in columns ``0..k-1``.

    ``V[i][j]`` (``j < k-1``) has its row ``i`` unit in column ``j`` and every
    other row in column ``k-1``; ``K`` has every row in column ``k-1``.  The
    list is ``V`` in row-major ``(i, j)`` order followed by ``K``:
    ``n*(k-1) + 1`` matrices.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    last = k - 1
    out = []
    for i in range(n):
        for j in range(last):
            targets = [last] * n
            targets[i] = j
            out.append(WordMatrix(tuple(targets)))
    out.append(WordMatrix.constant(n, last))
    return out


def column_basis_cell(n: int, k: int, i: int, j: int) -> WordMatrix:
    targets = [k - 1] * n
    targets[i] = j
    return WordMatrix(tuple(targets))


def column_basis_combo(t: WordMatrix, k: int) -> RationalCombo:
    """``sum V[i][j] - (m-1) K`` over the units of ``t`` outside column ``k-1``."""
    n = t.n
    if any(col >= k for col in t.row_target):
        raise ValueError(f"matrix has units outside columns 0..{k - 1}")
    cells = [(i, j) for i, j in enumerate(t.row_target) if j < k - 1]
    terms = [(Fraction(1), column_basis_cell(n, k, i, j)) for i, j in cells]
    m = len(cells)
    if m != 1:
        terms.append((Fraction(-(m - 1)), WordMatrix.constant(n, k - 1)))
    return RationalCombo(n, tuple(terms))


def dimension_bound(n: int, zero_columns: int) -> int:
    """Independent word matrices possible when ``zero_columns`` fixed columns are empty."""
    if not 0 <= zero_columns < n:
        raise ValueError(f"need 0 <= zero_columns < n, got {zero_columns}")
    return n * (n - zero_columns - 1) + 1

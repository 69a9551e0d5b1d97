"""Rational series of a state set, the equation ``M_u L = M_s`` and right pseudoinverses."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .automaton import Dfa, StateSet, image_of_automaton
from .matrices import WordMatrix, column_units, matrix_of_word, nonzero_columns
from .space import RationalCombo, evaluate_combo, is_word_matrix


class NotSynchronizingWordError(ValueError):
    pass


@dataclass(frozen=True)
class SeriesContext:
    automaton: Dfa
    p_set: StateSet

    def __post_init__(self):
        if self.p_set.n != self.automaton.n:
            raise ValueError("state set and automaton sizes differ")
        if not len(self.p_set):
            raise ValueError("the state set P must be nonempty")

    @classmethod
    def single(cls, a: Dfa, q: int) -> SeriesContext:
        return cls(a, StateSet.of(a.n, [q]))


def series_of_matrix(m: WordMatrix, p_set: StateSet) -> int:
    """``C M P^t - C P^t``: units of ``m`` inside the columns of ``P``, minus ``|P|``."""
    return sum(1 for t in m.row_target if t in p_set) - len(p_set)


def series(ctx: SeriesContext, word: str) -> int:
    return series_of_matrix(matrix_of_word(ctx.automaton, word), ctx.p_set)


def series_of_dense(m: Sequence[Sequence], p_set: StateSet) -> Fraction:
    total = sum((Fraction(row[j]) for row in m for j in p_set), Fraction(0))
    return total - len(p_set)


def series_linearity_check(ctx: SeriesContext, combo: RationalCombo) -> bool:
    """Whether the series of the combined matrix is the combination of the term series."""
    dense = evaluate_combo(combo)
    if is_word_matrix(dense) is None:
        raise ValueError("combination does not evaluate to a word matrix")
    lhs = series_of_dense(dense, ctx.p_set)
    rhs = sum((c * series_of_matrix(m, ctx.p_set) for c, m in combo.terms), Fraction(0))
    return lhs == rhs


def sink_state(a: Dfa, s: str) -> int:
    image = image_of_automaton(a, s)
    if len(image) != 1:
        raise NotSynchronizingWordError(f"word {s!r} leaves {len(image)} states")
    return image.members()[0]


@dataclass(frozen=True)
class SolutionSet:
    """All ``L`` with ``M_u L = M_s``: rows of ``R(u)`` go to ``q``, the rest are free."""

    n: int
    q: int
    forced_rows: frozenset[int]
    free_rows: tuple[int, ...]

    @property
    def minimal_series(self) -> int:
        return len(self.forced_rows) - 1

    @property
    def max_minimal_rank(self) -> int:
        """Largest ``|R(x)|`` over minimal solutions."""
        return 1 + min(len(self.free_rows), self.n - 1)

    def contains(self, L: WordMatrix) -> bool:
        return L.n == self.n and self.forced_rows <= column_units(L, self.q)

    def is_minimal(self, L: WordMatrix) -> bool:
        return self.contains(L) and column_units(L, self.q) == self.forced_rows

    def complete(self, fill: dict[int, int]) -> WordMatrix:
        targets = [self.q] * self.n
        for r in self.free_rows:
            targets[r] = fill[r]
        return WordMatrix(tuple(targets))

    def other_columns(self) -> list[int]:
        return [c for c in range(self.n) if c != self.q]

    def minimal(self, fill_column: int | None = None) -> WordMatrix:
        """Every free row in one non-``q`` column (lowest index unless given)."""
        if not self.free_rows:
            return self.complete({})
        others = self.other_columns()
        col = others[0] if fill_column is None else fill_column
        if col == self.q:
            raise ValueError("a minimal completion keeps free rows out of column q")
        return self.complete({r: col for r in self.free_rows})

    def max_rank_minimal(self, columns: Sequence[int] | None = None) -> WordMatrix:
        """Free rows spread over distinct non-``q`` columns, cycling if there are too few."""
        others = list(columns) if columns is not None else self.other_columns()
        return self.complete({r: others[i % len(others)] for i, r in enumerate(self.free_rows)})

    def iter_completions(self, minimal_only: bool = True, limit: int | None = None) -> Iterator[WordMatrix]:
        """Completions in lexicographic order of the free-row targets."""
        cols = self.other_columns() if minimal_only else list(range(self.n))
        if not cols:
            cols = [self.q]
        gen = itertools.product(cols, repeat=len(self.free_rows))
        for choice in itertools.islice(gen, limit):
            yield self.complete(dict(zip(self.free_rows, choice)))

    def spanning_completions(self, minimal_only: bool = True) -> list[WordMatrix]:
        """A base completion plus all single-row moves; these span every completion."""
        cols = self.other_columns() if minimal_only else list(range(self.n))
        if not self.free_rows or not cols:
            return [self.complete({r: self.q for r in self.free_rows})]
        base_col = cols[0]
        base = {r: base_col for r in self.free_rows}
        out = [self.complete(base)]
        for r in self.free_rows:
            for c in cols:
                if c != base_col:
                    out.append(self.complete({**base, r: c}))
        return out


def solve_equation(a: Dfa, u: str, s: str) -> SolutionSet:
    q = sink_state(a, s)
    forced = image_of_automaton(a, u)
    return SolutionSet(
        a.n,
        q,
        frozenset(forced.members()),
        tuple(r for r in range(a.n) if r not in forced),
    )


def is_solution(a: Dfa, u: str, s: str, L: WordMatrix) -> bool:
    return matrix_of_word(a, u) @ L == matrix_of_word(a, s)


# -- right pseudoinverses ---------------------------------------------------


def preimages(m: WordMatrix) -> dict[int, list[int]]:
    """Nonzero column -> rows holding its units, ascending."""
    out: dict[int, list[int]] = {}
    for i, j in enumerate(m.row_target):
        out.setdefault(j, []).append(i)
    return dict(sorted(out.items()))


def pseudoinverse_cores(m: WordMatrix, prefer: frozenset[int] | None = None) -> Iterator[dict[int, int]]:
    """Every choice of one unit per nonzero column; preferred rows are tried first."""
    pre = preimages(m)
    order = []
    for col, rows in pre.items():
        if prefer is not None:
            rows = [r for r in rows if r in prefer] + [r for r in rows if r not in prefer]
        order.append((col, rows))
    for choice in itertools.product(*(rows for _, rows in order)):
        yield {col: row for (col, _), row in zip(order, choice)}


def complete_pseudoinverse(m: WordMatrix, core: dict[int, int], fill: Sequence[int] | None = None) -> WordMatrix:
    """Pseudoinverse with row ``j`` -> ``core[j]`` on nonzero columns.

    Rows at zero columns of ``m`` take ``fill`` in ascending row order; by
    default they take the targets unused by the core, which always yields a
    permutation matrix.
    """
    n = m.n
    if set(core) != nonzero_columns(m):
        raise ValueError("core must choose exactly one row per nonzero column")
    for col, row in core.items():
        if m.row_target[row] != col:
            raise ValueError(f"row {row} has no unit in column {col}")
    free = [r for r in range(n) if r not in core]
    if fill is None:
        fill = sorted(set(range(n)) - set(core.values()))
    if len(fill) != len(free):
        raise ValueError(f"need {len(free)} fill targets, got {len(fill)}")
    targets = [0] * n
    for col, row in core.items():
        targets[col] = row
    for r, t in zip(free, fill):
        targets[r] = t
    return WordMatrix(tuple(targets))


def canonical_pseudoinverse(m: WordMatrix, prefer: frozenset[int] | None = None) -> WordMatrix:
    """Smallest (preferred) preimage per nonzero column, free rows filled to a permutation."""
    return complete_pseudoinverse(m, next(pseudoinverse_cores(m, prefer)))


def pseudoinverses(m: WordMatrix, limit: int | None = None) -> Iterator[WordMatrix]:
    """All right pseudoinverses of ``m``: the canonical one first, then lexicographic order."""
    canonical = canonical_pseudoinverse(m)
    yield canonical
    emitted = 1
    free = [r for r in range(m.n) if r not in nonzero_columns(m)]
    for core in pseudoinverse_cores(m):
        for fill in itertools.product(range(m.n), repeat=len(free)):
            if limit is not None and emitted >= limit:
                return
            p = complete_pseudoinverse(m, core, fill)
            if p != canonical:
                emitted += 1
                yield p


def sample_pseudoinverses(m: WordMatrix, count: int, seed: int = 0) -> list[WordMatrix]:
    rng = random.Random(seed)
    pre = preimages(m)
    free = [r for r in range(m.n) if r not in pre]
    out = []
    for _ in range(count):
        core = {col: rng.choice(rows) for col, rows in pre.items()}
        fill = [rng.randrange(m.n) for _ in free]
        out.append(complete_pseudoinverse(m, core, fill))
    return out


def is_pseudoinverse(m: WordMatrix, p: WordMatrix) -> bool:
    return all(m.row_target[p.row_target[j]] == j for j in nonzero_columns(m))


def propagating_pseudoinverses(a: Dfa, u: str, beta: str, limit: int | None = None) -> Iterator[WordMatrix]:
    """Pseudoinverses ``P`` of ``M_beta`` for which ``P L_x`` solves the extended equation for every solution ``L_x`` for ``u``.

    On columns of ``R(u beta)`` the chosen preimage must lie in ``R(u)``.
    """
    mb = matrix_of_word(a, beta)
    ru = frozenset(image_of_automaton(a, u).members())
    rub = frozenset(image_of_automaton(a, u + beta).members())
    pre = preimages(mb)
    choices = []
    for col, rows in pre.items():
        if col in rub:
            rows = [r for r in rows if r in ru]
        choices.append((col, rows))
    count = 0
    for choice in itertools.product(*(rows for _, rows in choices)):
        if limit is not None and count >= limit:
            return
        count += 1
        yield complete_pseudoinverse(mb, {col: row for (col, _), row in zip(choices, choice)})


def propagate_solution(a: Dfa, u: str, beta: str, L_x: WordMatrix, s: str) -> WordMatrix:
    """A solution ``L_y = M_{beta^-} L_x`` of ``M_{u beta} L_y = M_s``."""
    if len(beta) != 1:
        raise ValueError("beta must be a single letter")
    if not is_solution(a, u, s, L_x):
        raise ValueError("L_x does not solve the equation for u")
    p = next(propagating_pseudoinverses(a, u, beta))
    L_y = p @ L_x
    assert is_solution(a, u + beta, s, L_y)
    return L_y

"""Ascending chain of solution spans.

Starting from ``W_0 = span{M_s}``, each row adds one word ``u`` of length at
most the row number together with a solution of ``M_u L = M_s`` lying
outside the current span.  The run is an experiment: it ends by reaching a
rank-one word, by stalling (no word short enough has an independent
solution) or by exhausting the ``n(n-2)+1`` row budget.
"""

from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass, field

from .automaton import Dfa, StateSet, image_of_automaton, is_strongly_connected
from .matrices import WordMatrix, column_units, matrix_of_word, rank
from .series import (
    SolutionSet,
    propagating_pseudoinverses,
    series_of_matrix,
    sink_state,
    solve_equation,
)
from .space import extend_basis, span_of
from .words import compress_word

REACHED = "reached-rank-1"
STALLED = "stalled"
BUDGET = "budget-exceeded"


@dataclass(frozen=True)
class ChainLimits:
    max_rows: int | None = None  # default: n(n-2)+1
    max_completions: int = 64  # lexicographic completions tried per tier before the spanning set
    max_propagations: int = 8
    search_all_words: bool = True  # fall back to every reachable image once guided words fail


@dataclass(frozen=True)
class ChainRow:
    word: str
    image: StateSet
    solution: WordMatrix
    series: int
    kind: str  # minimal | propagated | non-minimal
    dim: int

    @property
    def rank(self) -> int:
        return len(self.image)

    @property
    def solution_rank(self) -> int:
        return rank(self.solution)

    @property
    def is_minimal(self) -> bool:
        return self.series == self.rank - 1


@dataclass
class ChainTrace:
    automaton: Dfa
    s: str
    q: int
    rows: list[ChainRow] = field(default_factory=list)
    outcome: str = REACHED
    power_notation: bool = True
    common_zero_stalls: list[dict] = field(default_factory=list)
    stall_state: dict | None = None

    @property
    def final_word(self) -> str | None:
        if self.outcome != REACHED:
            return None
        return self.rows[-1].word if self.rows else ""

    def column_vector(self, row: ChainRow) -> str:
        return StateSet.of(self.automaton.n, column_units(row.solution, self.q)).vector()

    def spell(self, word: str) -> str:
        return compress_word(word) if self.power_notation else word

    def render_row(self, row: ChainRow) -> str:
        word = self.spell(row.word) + ("=s" if row.word == self.s else "")
        col = self.column_vector(row)
        if row.is_minimal:
            tag = "|R(s)|" if row.word == self.s else "|R(u)|"
            ann = f"{tag}={row.rank}"
        else:
            ann = f"|R(v)|={col.count('1')} ({row.image.vector()} of |R(u)|<|R(v)|)"
        return f"({word}, {col}) {ann} [{row.kind} |R(x)|={row.solution_rank} dim={row.dim}]"

    def render(self) -> str:
        lines = [self.render_row(r) for r in self.rows]
        lines.append(f"# outcome: {self.outcome}")
        return "\n".join(lines) + "\n"


def _candidates(sol: SolutionSet, limits: ChainLimits, propagated: list[WordMatrix]) -> list[tuple[WordMatrix, str]]:
    """Candidate solutions in preference order: smaller series, larger rank, then lexicographic."""
    pool: dict[WordMatrix, str] = {}
    free = len(sol.free_rows)
    others = sol.other_columns() or [sol.q]
    for choice in itertools.islice(itertools.permutations(others, free), limits.max_completions):
        pool.setdefault(sol.complete(dict(zip(sol.free_rows, choice))), "minimal")
    for L in sol.iter_completions(True, limits.max_completions):
        pool.setdefault(L, "minimal")
    for L in sol.spanning_completions(True):
        pool.setdefault(L, "minimal")
    for L in propagated:
        if sol.contains(L):
            pool.setdefault(L, "propagated")
    for L in sol.iter_completions(False, limits.max_completions):
        pool.setdefault(L, "non-minimal")
    for L in sol.spanning_completions(False):
        pool.setdefault(L, "non-minimal")
    ordered = sorted(
        pool.items(),
        key=lambda kv: (len(column_units(kv[0], sol.q)), -rank(kv[0]), kv[1] != "propagated", kv[0].row_target),
    )
    out = []
    for L, kind in ordered:
        if kind != "propagated" and not sol.is_minimal(L):
            kind = "non-minimal"
        out.append((L, kind))
    return out


def _reachable_words(a: Dfa) -> list[tuple[int, str]]:
    """(image mask, lexicographically least shortest word) for every reachable image, BFS order."""
    full = (1 << a.n) - 1
    seen = {full: ""}
    order = [(full, "")]
    queue = deque([full])
    while queue:
        mask = queue.popleft()
        w = seen[mask]
        for letter in a.alphabet:
            nxt = a.image_mask(mask, letter)
            if nxt not in seen:
                seen[nxt] = w + letter
                order.append((nxt, w + letter))
                queue.append(nxt)
    return order


def _common_zero_column(n: int, basis_mats: list[WordMatrix]) -> bool:
    used = set()
    for m in basis_mats:
        used.update(m.row_target)
    return len(used) < n


def build_chain(
    a: Dfa,
    s: str,
    limits: ChainLimits | None = None,
    words: list[str] | None = None,
    power_notation: bool = True,
) -> ChainTrace:
    """Grow the chain guided by the prefixes of ``s``.

    Each row tries, in order: the next prefix of ``s``, the one-letter
    extensions of the previous row's word, and finally (``search_all_words``)
    a shortest word for every reachable image, shortest first.  Solutions
    depend on a word only through its image, so the last tier covers every
    word of admissible length.  With ``words`` given, exactly those words are
    used, one per row.
    """
    limits = limits or ChainLimits()
    q = sink_state(a, s)
    if not is_strongly_connected(a):
        warnings.warn("automaton is not strongly connected; running the chain anyway", stacklevel=2)
    n = a.n
    budget = limits.max_rows if limits.max_rows is not None else n * (n - 2) + 1
    ms = matrix_of_word(a, s)
    basis = span_of([ms], n)
    generators = [ms]
    trace = ChainTrace(a, s, q, power_notation=power_notation)
    if n == 1:
        return trace
    reachable = _reachable_words(a) if limits.search_all_words and words is None else []
    prev_word, prev_solution = "", ms

    j = 0
    while True:
        j += 1
        if words is not None:
            if j > len(words):
                trace.outcome = STALLED
                trace.stall_state = {"row": j, "reason": "word list exhausted before rank 1"}
                return trace
        if j > budget:
            trace.outcome = BUDGET
            trace.stall_state = {"row": j, "budget": budget, "basis_dimension": basis.dimension}
            return trace
        if words is not None:
            tried = [words[j - 1]]
        else:
            tried = []
            if j <= len(s):
                tried.append(s[:j])
            tried.extend(prev_word + x for x in a.alphabet)
            tried.extend(w for _, w in reachable if len(w) <= j)
        seen_images = set()
        accepted = None
        for u in tried:
            image = image_of_automaton(a, u)
            if image.mask in seen_images:
                continue
            seen_images.add(image.mask)
            sol = solve_equation(a, u, s)
            propagated = []
            if len(u) == len(prev_word) + 1 and u.startswith(prev_word):
                for p in propagating_pseudoinverses(a, prev_word, u[-1], limits.max_propagations):
                    propagated.append(p @ prev_solution)
            for L, kind in _candidates(sol, limits, propagated):
                new_basis, added = extend_basis(basis, L)
                if added:
                    accepted = (u, image, L, kind, new_basis)
                    break
            if accepted:
                break
        common_zero = _common_zero_column(n, generators)
        if accepted is None:
            trace.outcome = STALLED
            trace.stall_state = {
                "row": j,
                "basis_dimension": basis.dimension,
                "words_tried": len(seen_images),
                "last_word": prev_word,
            }
            if common_zero:
                trace.common_zero_stalls.append(dict(trace.stall_state))
            return trace
        u, image, L, kind, basis = accepted
        generators.append(L)
        row = ChainRow(u, image, L, series_of_matrix(L, StateSet.of(n, [q])), kind, basis.dimension)
        trace.rows.append(row)
        prev_word, prev_solution = u, L
        if len(image) == 1:
            trace.outcome = REACHED
            return trace


def verify_dimension_law(t: ChainTrace) -> bool:
    """Recompute the spans: every row independent, ``dim = row + 2`` and ``|u| <= row + 1``."""
    if not t.rows:
        return True
    n = t.automaton.n
    basis = span_of([matrix_of_word(t.automaton, t.s)], n)
    for i, row in enumerate(t.rows):
        basis, added = extend_basis(basis, row.solution)
        if not added or basis.dimension != i + 2 or row.dim != i + 2 or len(row.word) > i + 1:
            return False
        if row.solution.n != n or not solve_equation(t.automaton, row.word, t.s).contains(row.solution):
            return False
    return True


@dataclass(frozen=True)
class SubspaceGroup:
    series: int
    size: int
    cumulative_dimension: int  # span of accepted solutions with series >= this value
    bound: int | None  # n(n-d-1) for d = series >= 1
    within_bound: bool | None


def subspace_report(t: ChainTrace) -> list[SubspaceGroup]:
    """Accepted solutions grouped by series value, largest first."""
    n = t.automaton.n
    values = sorted({r.series for r in t.rows}, reverse=True)
    out = []
    for d in values:
        size = sum(1 for r in t.rows if r.series == d)
        dim = span_of([r.solution for r in t.rows if r.series >= d], n).dimension
        bound = n * (n - d - 1) if d >= 1 else None
        out.append(SubspaceGroup(d, size, dim, bound, None if bound is None else dim <= bound))
    return out

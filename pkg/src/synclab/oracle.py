"""Ground truth for reset words.

``shortest_reset`` is breadth-first search over the power automaton;
``shortest_reset_iddfs`` reaches the same length by a different route
(depth-first iterative deepening pruned by pair-merging distances) and is
kept only as a cross-check.  ``greedy_reset`` is the usual pair-merging upper
bound.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automaton import Dfa, image_of_automaton, is_synchronizing, pair_merge_distances

EXACT_MAX_N = 24


class OracleBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleResult:
    """``length``/``word`` are ``None`` when no word exists or the search gave up.

    ``status`` is ``"ok"``, ``"not-synchronizing"``, ``"unreachable"`` (no
    word compresses that far) or ``"budget-exceeded"``.
    """

    method: str
    status: str
    length: int | None
    word: str | None
    explored: int
    target_size: int = 1
    bound: int | None = None

    @property
    def found(self) -> bool:
        return self.status == "ok"

    @property
    def within_bound(self) -> bool | None:
        if self.bound is None or self.length is None:
            return None
        return self.length <= self.bound


def _bfs_to_size(a: Dfa, target_size: int, max_subsets: int | None, method: str, bound=None) -> OracleResult:
    full = (1 << a.n) - 1
    if bin(full).count("1") <= target_size:
        return OracleResult(method, "ok", 0, "", 1, target_size, bound)
    parent: dict[int, tuple[int, str] | None] = {full: None}
    queue = deque([full])
    while queue:
        mask = queue.popleft()
        for letter in a.alphabet:
            nxt = a.image_mask(mask, letter)
            if nxt in parent:
                continue
            parent[nxt] = (mask, letter)
            if bin(nxt).count("1") <= target_size:
                word = []
                cur = nxt
                while parent[cur] is not None:
                    prev, ch = parent[cur]
                    word.append(ch)
                    cur = prev
                word = "".join(reversed(word))
                return OracleResult(method, "ok", len(word), word, len(parent), target_size, bound)
            if max_subsets is not None and len(parent) >= max_subsets:
                return OracleResult(method, "budget-exceeded", None, None, len(parent), target_size, bound)
            queue.append(nxt)
    status = "not-synchronizing" if target_size == 1 else "unreachable"
    return OracleResult(method, status, None, None, len(parent), target_size, bound)


def shortest_reset(a: Dfa, max_subsets: int | None = 1 << 22, max_n: int = EXACT_MAX_N) -> OracleResult:
    """Exact shortest reset word; the lexicographically least one among those of minimal length."""
    if a.n > max_n:
        return OracleResult("exact", "budget-exceeded", None, None, 0)
    return _bfs_to_size(a, 1, max_subsets, "exact", (a.n - 1) ** 2)


def rank_k_word(a: Dfa, k: int, max_subsets: int | None = 1 << 22) -> OracleResult:
    """Shortest word with image of size at most ``n - k``, judged against ``n(k-1)+1``."""
    if not 1 <= k < a.n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={a.n}")
    return _bfs_to_size(a, a.n - k, max_subsets, "exact", a.n * (k - 1) + 1)


def _pair_words(a: Dfa) -> dict[tuple[int, int], str]:
    """A shortest merging word for each mergeable pair, built by following decreasing distance."""
    dist = pair_merge_distances(a)
    words: dict[tuple[int, int], str] = {}

    def d(p, q):
        if p == q:
            return 0
        return dist.get((p, q) if p < q else (q, p))

    for (p, q), dd in sorted(dist.items(), key=lambda kv: kv[1]):
        for letter in a.alphabet:
            x, y = a.delta[letter][p], a.delta[letter][q]
            if d(x, y) == dd - 1:
                key = (x, y) if x < y else (y, x)
                words[(p, q)] = letter + ("" if x == y else words[key])
                break
    return words


def greedy_reset(a: Dfa) -> OracleResult:
    """Merge a closest pair of the current image until one state is left."""
    if not is_synchronizing(a):
        return OracleResult("greedy", "not-synchronizing", None, None, 0)
    words = _pair_words(a)
    current = list(range(a.n))
    out = ""
    steps = 0
    while len(current) > 1:
        best = None
        for i, p in enumerate(current):
            for q in current[i + 1:]:
                w = words[(p, q) if p < q else (q, p)]
                if best is None or len(w) < len(best):
                    best = w
        out += best
        current = sorted({a.step(p, best) for p in current})
        steps += 1
    assert len(image_of_automaton(a, out)) == 1
    return OracleResult("greedy", "ok", len(out), out, steps, 1, (a.n - 1) ** 2)


def shortest_reset_iddfs(a: Dfa, max_nodes: int = 5_000_000) -> OracleResult:
    """Shortest reset length by iterative deepening with an admissible pair-distance bound."""
    if not is_synchronizing(a):
        return OracleResult("iddfs", "not-synchronizing", None, None, 0)
    if a.n == 1:
        return OracleResult("iddfs", "ok", 0, "", 1)
    dist = pair_merge_distances(a)

    def lower(mask: int) -> int:
        members = [p for p in range(a.n) if mask >> p & 1]
        best = 0
        for i, p in enumerate(members):
            for q in members[i + 1:]:
                best = max(best, dist[(p, q)])
        return best

    explored = 0
    full = (1 << a.n) - 1
    limit = lower(full)
    while True:
        # best remaining budget at which a mask has already failed in this round
        failed: dict[int, int] = {}
        path: list[str] = []

        def dfs(mask: int, budget: int) -> bool:
            nonlocal explored
            explored += 1
            if explored > max_nodes:
                raise OracleBudgetExceeded
            if mask & (mask - 1) == 0:
                return True
            if lower(mask) > budget or failed.get(mask, -1) >= budget:
                return False
            for letter in a.alphabet:
                path.append(letter)
                if dfs(a.image_mask(mask, letter), budget - 1):
                    return True
                path.pop()
            failed[mask] = budget
            return False

        try:
            if dfs(full, limit):
                word = "".join(path)
                return OracleResult("iddfs", "ok", len(word), word, explored)
        except OracleBudgetExceeded:
            return OracleResult("iddfs", "budget-exceeded", None, None, explored)
        limit += 1

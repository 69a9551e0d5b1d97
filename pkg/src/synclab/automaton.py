"""Complete deterministic automata and the action of words on state sets."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class UnknownLetterError(ValueError):
    """A word used a letter outside the automaton's alphabet."""


@dataclass(frozen=True)
class StateSet:
    """Subset of ``range(n)`` stored as a bitmask (bit ``p`` set iff ``p`` is a member)."""

    n: int
    mask: int

    def __post_init__(self):
        if self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} has members outside range({self.n})")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> StateSet:
        mask = 0
        for p in members:
            if not 0 <= p < n:
                raise ValueError(f"state {p} outside range({n})")
            mask |= 1 << p
        return cls(n, mask)

    @classmethod
    def full(cls, n: int) -> StateSet:
        return cls(n, (1 << n) - 1)

    @classmethod
    def from_vector(cls, vector: str) -> StateSet:
        """Parse a characteristic vector such as ``"111110"``."""
        if set(vector) - {"0", "1"}:
            raise ValueError(f"not a 0/1 vector: {vector!r}")
        return cls.of(len(vector), (i for i, ch in enumerate(vector) if ch == "1"))

    def members(self) -> tuple[int, ...]:
        return tuple(p for p in range(self.n) if self.mask >> p & 1)

    def vector(self) -> str:
        return "".join("1" if self.mask >> p & 1 else "0" for p in range(self.n))

    def issubset(self, other: StateSet) -> bool:
        return self.mask & ~other.mask == 0

    def __contains__(self, p: int) -> bool:
        return 0 <= p < self.n and bool(self.mask >> p & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __iter__(self):
        return iter(self.members())


@dataclass(frozen=True)
class Dfa:
    """Complete DFA on states ``0..n-1``.

    ``delta[letter][p]`` is the successor of ``p``.  ``labels`` are display
    names only (the printed examples number states from 0 or from 1) and do
    not take part in any computation.
    """

    n: int
    alphabet: tuple[str, ...]
    delta: Mapping[str, tuple[int, ...]]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("an automaton needs at least one state")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError(f"duplicate letters in alphabet {self.alphabet!r}")
        if set(self.delta) != set(self.alphabet):
            raise ValueError("transition table letters differ from the alphabet")
        for letter in self.alphabet:
            row = self.delta[letter]
            if len(row) != self.n:
                raise ValueError(f"letter {letter!r}: {len(row)} targets for {self.n} states")
            for p, t in enumerate(row):
                if not 0 <= t < self.n:
                    raise ValueError(f"letter {letter!r}, state {p}: target {t} outside range({self.n})")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("need exactly one display label per state")

    @classmethod
    def from_table(cls, delta: Mapping[str, Sequence[int]], labels: Sequence[str] | None = None) -> Dfa:
        alphabet = tuple(delta)
        n = len(next(iter(delta.values())))
        return cls(
            n,
            alphabet,
            {k: tuple(v) for k, v in delta.items()},
            tuple(labels) if labels is not None else None,
        )

    def __hash__(self):
        return hash((self.n, self.alphabet, tuple(self.delta[a] for a in self.alphabet)))

    def __eq__(self, other):
        if not isinstance(other, Dfa):
            return NotImplemented
        return (
            self.n == other.n
            and self.alphabet == other.alphabet
            and all(self.delta[a] == other.delta[a] for a in self.alphabet)
            and self.labels == other.labels
        )

    def check_word(self, word: str) -> None:
        for letter in word:
            if letter not in self.delta:
                raise UnknownLetterError(f"letter {letter!r} not in alphabet {''.join(self.alphabet)!r}")

    def step(self, p: int, word: str) -> int:
        """The state ``p . word``."""
        self.check_word(word)
        for letter in word:
            p = self.delta[letter][p]
        return p

    def image_mask(self, mask: int, letter: str) -> int:
        row = self.delta[letter]
        out = 0
        p = 0
        while mask:
            if mask & 1:
                out |= 1 << row[p]
            mask >>= 1
            p += 1
        return out

    def all_states(self) -> StateSet:
        return StateSet.full(self.n)


def apply_word(a: Dfa, start: StateSet, word: str) -> StateSet:
    """Image ``start . word``; the empty word is the identity."""
    a.check_word(word)
    if start.n != a.n:
        raise ValueError(f"state set over {start.n} states, automaton has {a.n}")
    mask = start.mask
    for letter in word:
        mask = a.image_mask(mask, letter)
    return StateSet(a.n, mask)


def image_of_automaton(a: Dfa, word: str) -> StateSet:
    """The set ``A . word``; its size is the rank of the word."""
    return apply_word(a, a.all_states(), word)


def pair_merge_distances(a: Dfa) -> dict[tuple[int, int], int]:
    """Length of a shortest word collapsing each pair ``p < q``; unmergeable pairs are absent.

    Backward BFS on the pair automaton from the diagonal.
    """
    preimage: dict[str, list[list[int]]] = {}
    for letter in a.alphabet:
        pre = [[] for _ in range(a.n)]
        for p, t in enumerate(a.delta[letter]):
            pre[t].append(p)
        preimage[letter] = pre
    dist: dict[tuple[int, int], int] = {}
    # pairs (p, q) with p == q are the targets, at distance 0
    queue = deque((p, p) for p in range(a.n))
    seen = {(p, p): 0 for p in range(a.n)}
    while queue:
        p, q = queue.popleft()
        d = seen[(p, q)]
        for letter in a.alphabet:
            pre = preimage[letter]
            for x in pre[p]:
                for y in pre[q]:
                    key = (x, y) if x <= y else (y, x)
                    if key not in seen:
                        seen[key] = d + 1
                        queue.append(key)
    for (p, q), d in seen.items():
        if p != q:
            dist[(p, q)] = d
    return dist


def is_synchronizing(a: Dfa) -> bool:
    """True iff every pair of states can be merged by some word."""
    if a.n == 1:
        return True
    dist = pair_merge_distances(a)
    return len(dist) == a.n * (a.n - 1) // 2


def _reach(n: int, succ: list[list[int]], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        p = stack.pop()
        for t in succ[p]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def is_strongly_connected(a: Dfa) -> bool:
    """Strong connectivity of the underlying digraph (edges ``p -> p.x`` for letters ``x``)."""
    fwd = [[a.delta[x][p] for x in a.alphabet] for p in range(a.n)]
    rev: list[list[int]] = [[] for _ in range(a.n)]
    for p in range(a.n):
        for t in fwd[p]:
            rev[t].append(p)
    return len(_reach(a.n, fwd, 0)) == a.n and len(_reach(a.n, rev, 0)) == a.n

"""Built-in automata, the JSON interchange format and a seeded random generator."""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from importlib import resources

from .automaton import Dfa, is_strongly_connected, is_synchronizing
from .words import expand_word


class DfaFormatError(ValueError):
    pass


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    dfa: Dfa
    display_labels: tuple[str, ...]
    known_shortest: tuple[int, str] | None
    source: str
    # how the printed trace writes words: power notation (ba^2b) or spelled out
    power_notation: bool = True
    # known word in its printed spelling, e.g. "ab(ca)^2cbca^2cabca"
    printed_word: str | None = None



def cerny(n: int) -> CorpusEntry:
    """Cerny automaton C_n: ``a`` is the cycle ``i -> i+1``, ``b`` sends state 1 to 2 and fixes the rest."""
    if n < 2:
        raise ValueError("the Cerny series starts at n = 2")
    labels = tuple(str(i + 1) for i in range(n))
    a = tuple((i + 1) % n for i in range(n))
    b = (1,) + tuple(range(1, n))
    dfa = Dfa(n, ("a", "b"), {"a": a, "b": b}, labels)
    word = "b" + ("a" * (n - 1) + "b") * (n - 2)
    return CorpusEntry(
        f"cerny{n}", dfa, labels, (len(word), word), f"Cerny series, n={n}; s = b(a^{n - 1}b)^{n - 2}",
        power_notation=False, printed_word=word,
    )


def _load_data_entry(name: str) -> CorpusEntry:
    text = resources.files("synclab.data.corpus").joinpath(f"{name}.json").read_text()
    return load_entry(text, name)


def builtin(name: str) -> CorpusEntry:
    """``cerny<n>`` / ``cerny(<n>)``, ``kari6`` or ``roman5``."""
    m = re.fullmatch(r"cerny\(?(\d+)\)?", name)
    if m:
        return cerny(int(m.group(1)))
    if name in ("kari6", "roman5"):
        return _load_data_entry(name)
    raise KeyError(f"unknown built-in automaton {name!r}")


BUILTIN_NAMES = ("kari6", "roman5") + tuple(f"cerny{n}" for n in range(2, 9))


# -- file format ------------------------------------------------------------


def to_json_obj(dfa: Dfa, note: str | None = None, word: str | None = None) -> dict:
    obj = {
        "n": dfa.n,
        "alphabet": list(dfa.alphabet),
        "delta": {a: list(dfa.delta[a]) for a in dfa.alphabet},
    }
    if dfa.labels is not None:
        obj["labels"] = list(dfa.labels)
    if note is not None:
        obj["note"] = note
    if word is not None:
        obj["word"] = word
    return obj


def serialize(dfa: Dfa, note: str | None = None, word: str | None = None) -> str:
    return json.dumps(to_json_obj(dfa, note, word), indent=2, sort_keys=True) + "\n"


def from_json_obj(obj) -> Dfa:
    if not isinstance(obj, dict):
        raise DfaFormatError("top level must be a JSON object")
    for key in ("n", "alphabet", "delta"):
        if key not in obj:
            raise DfaFormatError(f"missing field {key!r}")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DfaFormatError(f"field 'n' must be a positive integer, got {n!r}")
    alphabet = obj["alphabet"]
    if not isinstance(alphabet, list) or not alphabet:
        raise DfaFormatError("field 'alphabet' must be a nonempty array")
    seen = set()
    for letter in alphabet:
        if not isinstance(letter, str) or len(letter) != 1:
            raise DfaFormatError(f"alphabet entry {letter!r} is not a single character")
        if letter in "()^ \t\n":
            raise DfaFormatError(f"alphabet entry {letter!r} clashes with word notation")
        if letter in seen:
            raise DfaFormatError(f"duplicate letter {letter!r} in alphabet")
        seen.add(letter)
    delta = obj["delta"]
    if not isinstance(delta, dict):
        raise DfaFormatError("field 'delta' must be an object")
    for letter in alphabet:
        if letter not in delta:
            raise DfaFormatError(f"delta: missing row for letter {letter!r}")
    for letter in delta:
        if letter not in seen:
            raise DfaFormatError(f"delta: letter {letter!r} is not in the alphabet")
    table = {}
    for letter in alphabet:
        row = delta[letter]
        if not isinstance(row, list) or len(row) != n:
            raise DfaFormatError(f"delta[{letter!r}]: expected an array of {n} targets")
        for p, t in enumerate(row):
            if not isinstance(t, int) or isinstance(t, bool) or not 0 <= t < n:
                raise DfaFormatError(f"delta[{letter!r}][{p}]: target {t!r} is not a state index in 0..{n - 1}")
        table[letter] = tuple(row)
    unknown = set(obj) - {"n", "alphabet", "delta", "labels", "note", "word", "power_notation"}
    if unknown:
        raise DfaFormatError(f"unknown field(s): {', '.join(sorted(unknown))}")
    labels = obj.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or not all(isinstance(x, str) for x in labels):
            raise DfaFormatError(f"field 'labels' must be an array of {n} strings")
        labels = tuple(labels)
    return Dfa(n, tuple(alphabet), table, labels)


def parse(text: str) -> Dfa:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DfaFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_json_obj(obj)


def load_entry(text: str, name: str) -> CorpusEntry:
    obj = json.loads(text)
    dfa = from_json_obj(obj)
    word = obj.get("word")
    known = None
    if word is not None:
        w = expand_word(word)
        known = (len(w), w)
    labels = dfa.labels or tuple(str(i) for i in range(dfa.n))
    return CorpusEntry(name, dfa, labels, known, obj.get("note", ""), obj.get("power_notation", True), word)


def serialize_entry(entry: CorpusEntry, word: str | None = None) -> str:
    """Corpus file text; ``word`` overrides how the known word is spelled."""
    obj = to_json_obj(entry.dfa, entry.source or None, word or entry.printed_word or (entry.known_shortest[1] if entry.known_shortest else None))
    if not entry.power_notation:
        obj["power_notation"] = False
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def entry_text(name: str) -> str:
    return resources.files("synclab.data.corpus").joinpath(f"{name}.json").read_text()


# -- random automata --------------------------------------------------------

LETTERS = "abcdefghijklmnopqrstuvwxyz"


def random_automaton(
    n: int,
    alphabet_size: int,
    seed: int,
    require_strongly_connected: bool = False,
    require_synchronizing: bool = False,
    max_retries: int = 10_000,
) -> Dfa:
    """Uniform random complete DFA, rejection-sampled until the constraints hold."""
    if n < 1 or alphabet_size < 1:
        raise ValueError("need n >= 1 and alphabet_size >= 1")
    if alphabet_size > len(LETTERS):
        raise ValueError(f"at most {len(LETTERS)} letters")
    rng = random.Random(seed)
    alphabet = tuple(LETTERS[:alphabet_size])
    for _ in range(max_retries):
        delta = {x: tuple(rng.randrange(n) for _ in range(n)) for x in alphabet}
        dfa = Dfa(n, alphabet, delta)
        if require_strongly_connected and not is_strongly_connected(dfa):
            continue
        if require_synchronizing and not is_synchronizing(dfa):
            continue
        return dfa
    raise GenerationError(f"no automaton with n={n}, k={alphabet_size} met the constraints in {max_retries} draws")

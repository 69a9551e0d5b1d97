"""Replay of the printed example traces.

Golden files under ``data/goldens/published`` are verbatim transcriptions of the
printed rows plus ``# erratum`` header lines.  Each row is re-rendered from
values computed on the corpus automaton, reusing only the row's layout
(which annotations it carries, and where), and compared byte for byte with
the emended row.  The one printed quantity that is not a function of the
word, the ``|R(v)|`` vector of a non-minimal solution, is carried over as
printed and checked for consistency with its annotation only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from .automaton import image_of_automaton
from .chain import ChainTrace, build_chain, verify_dimension_law
from .corpus import CorpusEntry, builtin
from .words import compress_word, expand_word

PUBLISHED_TRACES = ("kari6", "cerny4", "roman5")

_ROW = re.compile(r"^\((?P<word>[^,]+), (?P<vec>[^)]+)\)(?P<rest>.*)$")
_ERRATUM = re.compile(r"^# erratum (?P<row>\d+): (?P<old>\S+) -> (?P<new>\S+) \| (?P<reason>.*)$")
_ANNOTATION = re.compile(
    r"\|R\(v\)\|=(?P<rv>\d+) \((?P<cu>[^ ]+) of \|R\(u\)\|<\|R\(v\)\|\)"
    r"|\|R\((?P<which>[usx])\)\|=(?P<k>\d+)"
    r"|\|u\|=(?P<len>\d+)"
)


@dataclass(frozen=True)
class Erratum:
    row: int
    old: str
    new: str
    reason: str


@dataclass(frozen=True)
class GoldenTrace:
    name: str
    rows: tuple[str, ...]
    errata: tuple[Erratum, ...]

    def emended(self) -> list[str]:
        rows = list(self.rows)
        for e in self.errata:
            if e.old not in rows[e.row - 1]:
                raise ValueError(f"{self.name}: erratum for row {e.row} does not match its text")
            rows[e.row - 1] = rows[e.row - 1].replace(e.old, e.new, 1)
        return rows


def parse_golden(name: str, text: str) -> GoldenTrace:
    rows, errata = [], []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            m = _ERRATUM.match(line)
            if m:
                errata.append(Erratum(int(m["row"]), m["old"], m["new"], m["reason"]))
            continue
        rows.append(line)
    return GoldenTrace(name, tuple(rows), tuple(errata))


def load_golden(name: str) -> GoldenTrace:
    text = resources.files("synclab.data").joinpath("goldens", "published", f"{name}.trace").read_text()
    return parse_golden(name, text)


@dataclass
class ReplayRow:
    index: int
    printed: str
    expected: str
    rendered: str
    word: str
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.rendered == self.expected and not self.problems

    @property
    def emended(self) -> bool:
        return self.printed != self.expected


@dataclass
class ReplayReport:
    name: str
    rows: list[ReplayRow]
    errata: tuple[Erratum, ...]
    chain: ChainTrace | None
    chain_ok: bool

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows) and self.chain_ok

    def summary_lines(self) -> list[str]:
        out = []
        for r in self.rows:
            status = "ok" if r.ok else "MISMATCH"
            if r.emended:
                status += " (emended)"
            out.append(f"{self.name} row {r.index:2d} {status}: {r.rendered}")
            if not r.ok:
                out.append(f"    expected: {r.expected}")
                out.extend(f"    {p}" for p in r.problems)
        out.append(f"{self.name} solutions of printed words independent, dim = row + 1: {self.chain_ok}")
        return out


def _render_row(entry: CorpusEntry, line: str, index: int) -> ReplayRow:
    a = entry.dfa
    s = entry.known_shortest[1]
    m = _ROW.match(line)
    if m is None:
        return ReplayRow(index, line, line, "", "", [f"unparseable row {line!r}"])
    printed_word = m["word"]
    is_s = printed_word.endswith("=s")
    word = expand_word(printed_word[:-2] if is_s else printed_word)
    problems = []
    image = image_of_automaton(a, word)
    cu = image.vector()
    rank_u = len(image)
    if is_s and word != s:
        problems.append(f"word marked =s differs from the known reset word {s!r}")
    rest = m["rest"]
    is_nonminimal = False
    pieces = []
    last = 0
    for ann in _ANNOTATION.finditer(rest):
        pieces.append(rest[last:ann.start()])
        last = ann.end()
        if ann["rv"] is not None:
            is_nonminimal = True
            rv = m["vec"].count("1")
            if not rv > rank_u:
                problems.append(f"|R(v)|={rv} is not larger than |R(u)|={rank_u}")
            pieces.append(f"|R(v)|={rv} ({cu} of |R(u)|<|R(v)|)")
        elif ann["which"] in ("u", "s"):
            if ann["which"] == "s" and not is_s:
                problems.append("|R(s)| annotation on a row that is not s")
            pieces.append(f"|R({ann['which']})|={rank_u}")
        elif ann["which"] == "x":
            pieces.append(f"|R(x)|={a.n - rank_u + 1}")
        else:
            pieces.append(f"|u|={len(word)}")
    pieces.append(rest[last:])
    # the vector of a non-minimal solution is not determined by the word
    vec = m["vec"] if is_nonminimal else cu
    spelled = (compress_word(word) if entry.power_notation else word) + ("=s" if is_s else "")
    rendered = f"({spelled}, {vec})" + "".join(pieces)
    if len(word) > index:
        problems.append(f"word of length {len(word)} in row {index}")
    return ReplayRow(index, line, line, rendered, word, problems)


def replay_published(name: str) -> ReplayReport:
    entry = builtin(name)
    golden = load_golden(name)
    expected = golden.emended()
    rows = []
    for i, (printed, emended) in enumerate(zip(golden.rows, expected), start=1):
        row = _render_row(entry, emended, i)
        row.printed = printed
        row.expected = emended
        rows.append(row)
    words = [r.word for r in rows]
    chain = build_chain(entry.dfa, entry.known_shortest[1], words=words, power_notation=entry.power_notation)
    chain_ok = chain.outcome == "reached-rank-1" and len(chain.rows) == len(rows) and verify_dimension_law(chain)
    return ReplayReport(name, rows, golden.errata, chain, chain_ok)


def chain_golden_path(name: str):
    return resources.files("synclab.data").joinpath("goldens", "chain", f"{name}.trace")


def corpus_chain(name: str) -> ChainTrace:
    entry = builtin(name)
    return build_chain(entry.dfa, entry.known_shortest[1], power_notation=entry.power_notation)

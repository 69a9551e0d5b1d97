"""Recover transition tables from printed (word, image) traces.

Every pair of consecutive rows ``u`` and ``ux`` constrains the map of letter
``x``: it must send the image of ``u`` onto the image of ``ux``.  Each letter
is filtered independently over all n^n maps.  Rows whose vector is not an
image (non-minimal solutions) contribute their parenthesised image instead.

    python scripts/reconstruct_corpus.py kari6 roman5
    python scripts/reconstruct_corpus.py kari6 --as-printed   # without errata
"""

import argparse
import itertools
import re

from synclab.corpus import builtin
from synclab.replay import _ROW, load_golden
from synclab.words import expand_word

_NONMINIMAL = re.compile(r"\((?P<cu>[01]+) of \|R\(u\)\|<\|R\(v\)\|\)")


def trace_pairs(name, as_printed=False):
    golden = load_golden(name)
    rows = golden.rows if as_printed else golden.emended()
    if as_printed:
        # the letter-for-digit slip is not a content error; keep only that one
        rows = [r.replace("l01011", "101011") for r in rows]
    out = {}
    for line in rows:
        m = _ROW.match(line)
        if m is None:
            continue
        word = m["word"][:-2] if m["word"].endswith("=s") else m["word"]
        nm = _NONMINIMAL.search(line)
        vec = nm["cu"] if nm else m["vec"]
        out[expand_word(word)] = frozenset(i for i, ch in enumerate(vec) if ch == "1")
    return out


def candidate_maps(n, alphabet, pairs):
    pairs = dict(pairs)
    pairs[""] = frozenset(range(n))
    constraints = {x: [] for x in alphabet}
    for w, image in pairs.items():
        if w and w[:-1] in pairs:
            constraints[w[-1]].append((pairs[w[:-1]], image))
    found = {}
    for x in alphabet:
        found[x] = [
            f for f in itertools.product(range(n), repeat=n)
            if all(frozenset(f[p] for p in src) == dst for src, dst in constraints[x])
        ]
    return found, {x: len(c) for x, c in constraints.items()}


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("names", nargs="*", default=["kari6", "roman5"])
    parser.add_argument("--as-printed", action="store_true", help="ignore the content errata")
    parser.add_argument("--show", type=int, default=12, help="list at most this many candidates per letter")
    args = parser.parse_args()
    for name in args.names:
        entry = builtin(name)
        a = entry.dfa
        maps, used = candidate_maps(a.n, a.alphabet, trace_pairs(name, args.as_printed))
        print(f"{name}: n={a.n}")
        for x in a.alphabet:
            mark = "  <- corpus" if a.delta[x] in maps[x] else ""
            print(f"  {x}: {len(maps[x])} map(s) fit {used[x]} constraints{mark}")
            for f in maps[x][: args.show]:
                print(f"     {list(f)}{'  *' if f == a.delta[x] else ''}")


if __name__ == "__main__":
    main()

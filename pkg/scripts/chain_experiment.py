"""Run the chain builder on corpus automata and print traces and span groups.

With ``--padded`` the guide word is a random prefix followed by a shortest
reset word, which pushes the builder off the shortest path and exercises the
fallback word tiers and the row budget.

    python scripts/chain_experiment.py kari6 cerny5
    python scripts/chain_experiment.py --padded 300 --seed 1
"""

import argparse
import random
import warnings
from collections import Counter

from synclab.chain import build_chain, subspace_report, verify_dimension_law
from synclab.corpus import builtin, random_automaton
from synclab.oracle import shortest_reset


def show_corpus(names):
    for name in names:
        e = builtin(name)
        t = build_chain(e.dfa, e.known_shortest[1], power_notation=e.power_notation)
        print(f"== {name} (n={e.dfa.n}, |s|={len(t.s)}, budget {e.dfa.n * (e.dfa.n - 2) + 1})")
        print(t.render(), end="")
        print(f"# dimension law: {verify_dimension_law(t)}")
        for g in subspace_report(t):
            bound = "" if g.bound is None else f" <= {g.bound}: {g.within_bound}"
            print(f"#   series {g.series}: {g.size} rows, span of series >= {g.series} has dim {g.cumulative_dimension}{bound}")


def padded(count, seed):
    rng = random.Random(seed)
    outcomes, kinds, laws = Counter(), Counter(), Counter()
    for i in range(count):
        n = rng.randint(3, 7)
        a = random_automaton(n, rng.randint(2, 3), seed * 1000 + i, True, True)
        s = "".join(rng.choice(a.alphabet) for _ in range(rng.randint(0, n))) + shortest_reset(a).word
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            t = build_chain(a, s)
        outcomes[t.outcome] += 1
        laws[verify_dimension_law(t)] += 1
        kinds.update(r.kind for r in t.rows)
        # rows whose word is not the guide prefix of the same length
        if any(r.word != s[: len(r.word)] for r in t.rows):
            outcomes["left the guide word"] += 1
    print("outcomes:", dict(outcomes))
    print("accepted solution kinds:", dict(kinds))
    print("dimension law held:", dict(laws))


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("names", nargs="*", default=["kari6", "cerny4", "roman5"])
    p.add_argument("--padded", type=int, metavar="COUNT")
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args()
    if args.padded:
        padded(args.padded, args.seed)
    else:
        show_corpus(args.names)


if __name__ == "__main__":
    main()

"""Seeded random synchronizing automata: oracle, chain and per-instance claims.

    python scripts/run_random_corpus.py --count 500 --jobs 4 --out results/random.json
"""

import argparse
import json
import time
import warnings
from pathlib import Path

from synclab.experiments import RandomCorpusConfig, archive, config_dict, counterexamples, run_corpus, summarize


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--alphabet-sizes", type=int, nargs="+", default=[2, 3])
    p.add_argument("--seed", type=int, default=20240)
    p.add_argument("--any-graph", action="store_true", help="do not require strong connectivity")
    p.add_argument("--no-chain", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="results/random.json")
    p.add_argument("--archive", default="results/counterexamples")
    args = p.parse_args()

    cfg = RandomCorpusConfig(
        count=args.count,
        n_min=args.n_min,
        n_max=args.n_max,
        alphabet_sizes=tuple(args.alphabet_sizes),
        seed=args.seed,
        strongly_connected=not args.any_graph,
        run_chain=not args.no_chain,
    )
    start = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        records = run_corpus(cfg, jobs=args.jobs)
    elapsed = time.perf_counter() - start
    summary = summarize(records)
    found = counterexamples(records)
    paths = archive(found, args.archive)

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps({"config": config_dict(cfg), "summary": summary, "records": records}, indent=2) + "\n")

    for k, v in summary.items():
        print(f"{k}: {v}")
    print(f"elapsed: {elapsed:.1f}s")
    print("counterexamples:", {k: len(v) for k, v in found.items()} or "none")
    for path in paths:
        print(f"  {path}")
    print(f"records written to {out}")


if __name__ == "__main__":
    main()

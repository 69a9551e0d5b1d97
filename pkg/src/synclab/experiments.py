"""Batch experiments over seeded random automata.

Each instance is checked against the oracle, run through the chain builder,
and tested for the per-instance claims (length bound when some letter
compresses by two or more, rank-k word lengths).  Anything that contradicts
a claim is archived as a JSON counterexample rather than raised.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .automaton import Dfa, image_of_automaton
from .chain import REACHED, ChainLimits, build_chain, verify_dimension_law
from .corpus import random_automaton, to_json_obj
from .oracle import greedy_reset, rank_k_word, shortest_reset


@dataclass(frozen=True)
class RandomCorpusConfig:
    count: int = 500
    n_min: int = 2
    n_max: int = 7
    alphabet_sizes: tuple[int, ...] = (2, 3)
    seed: int = 20240
    strongly_connected: bool = True
    run_chain: bool = True

    def instance(self, index: int) -> tuple[int, int, int]:
        """(n, alphabet size, seed) of instance ``index``."""
        span = self.n_max - self.n_min + 1
        n = self.n_min + index % span
        k = self.alphabet_sizes[(index // span) % len(self.alphabet_sizes)]
        return n, k, self.seed * 100_003 + index


def make_instance(cfg: RandomCorpusConfig, index: int) -> Dfa:
    n, k, seed = cfg.instance(index)
    return random_automaton(n, k, seed, cfg.strongly_connected, True)


def evaluate(dfa: Dfa, run_chain: bool = True, limits: ChainLimits | None = None) -> dict:
    """Oracle, greedy, chain and bound checks for one synchronizing automaton."""
    n = dfa.n
    exact = shortest_reset(dfa)
    greedy = greedy_reset(dfa)
    rec = {
        "n": n,
        "alphabet_size": len(dfa.alphabet),
        "automaton": to_json_obj(dfa),
        "oracle_length": exact.length,
        "oracle_word": exact.word,
        "greedy_length": greedy.length,
        "cerny_bound": (n - 1) ** 2,
        "exceeds_cerny_bound": exact.length is not None and exact.length > (n - 1) ** 2,
    }
    letter_ranks = {x: len(image_of_automaton(dfa, x)) for x in dfa.alphabet}
    deficient = [x for x, r in letter_ranks.items() if r < n - 1]
    rec["letter_ranks"] = letter_ranks
    rec["deficient_letter"] = bool(deficient)
    rec["deficient_letter_bound_holds"] = None if not deficient else exact.length < (n - 1) ** 2
    rank_k_rows = []
    for k in range(1, n):
        r = rank_k_word(dfa, k)
        rank_k_rows.append({"k": k, "length": r.length, "bound": r.bound, "within": r.within_bound})
    rec["rank_k"] = rank_k_rows
    rec["rank_k_holds"] = all(c["within"] for c in rank_k_rows)
    if run_chain:
        trace = build_chain(dfa, exact.word, limits)
        final = trace.final_word
        rec["chain_outcome"] = trace.outcome
        rec["chain_rows"] = len(trace.rows)
        rec["chain_dimension_law"] = verify_dimension_law(trace)
        rec["chain_word"] = final
        rec["chain_word_synchronizes"] = None if final is None else len(image_of_automaton(dfa, final)) == 1
        rec["chain_word_not_shorter_than_oracle"] = None if final is None else len(final) >= exact.length
        rec["chain_within_budget"] = None if final is None else len(trace.rows) <= n * (n - 2) + 1
        rec["common_zero_stalls"] = trace.common_zero_stalls
        rec["chain_stall_state"] = trace.stall_state
    return rec


def _run_one(args):
    cfg, index = args
    dfa = make_instance(cfg, index)
    rec = evaluate(dfa, cfg.run_chain)
    n, k, seed = cfg.instance(index)
    rec.update(index=index, seed=seed)
    return rec


def run_corpus(cfg: RandomCorpusConfig, jobs: int = 1) -> list[dict]:
    """Records in instance order regardless of worker completion order."""
    tasks = [(cfg, i) for i in range(cfg.count)]
    if jobs <= 1:
        return [_run_one(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_one, tasks, chunksize=8))


def counterexamples(records: list[dict]) -> dict[str, list[dict]]:
    found = {
        "exceeds_cerny_bound": [r for r in records if r["exceeds_cerny_bound"]],
        "deficient_letter_bound": [r for r in records if r["deficient_letter_bound_holds"] is False],
        "rank_k": [r for r in records if not r["rank_k_holds"]],
        "chain_not_reached": [r for r in records if r.get("chain_outcome", REACHED) != REACHED],
        "common_zero_stall": [r for r in records if r.get("common_zero_stalls")],
    }
    return {k: v for k, v in found.items() if v}


def archive(found: dict[str, list[dict]], directory: str | os.PathLike) -> list[Path]:
    """One JSON file per counterexample: ``<kind>-<index>.json``."""
    out = []
    d = Path(directory)
    for kind, recs in found.items():
        for r in recs:
            d.mkdir(parents=True, exist_ok=True)
            path = d / f"{kind}-{r.get('index', 'x')}.json"
            path.write_text(json.dumps(r, indent=2, sort_keys=True) + "\n")
            out.append(path)
    return out


def summarize(records: list[dict]) -> dict:
    lengths = [r["oracle_length"] for r in records]
    ratio = [r["oracle_length"] / r["cerny_bound"] for r in records if r["cerny_bound"]]
    outcomes: dict[str, int] = {}
    for r in records:
        key = r.get("chain_outcome", "not-run")
        outcomes[key] = outcomes.get(key, 0) + 1
    return {
        "instances": len(records),
        "max_reset_length": max(lengths) if lengths else None,
        "mean_reset_length": sum(lengths) / len(lengths) if lengths else None,
        "max_fraction_of_cerny_bound": max(ratio) if ratio else None,
        "chain_outcomes": outcomes,
    }


def config_dict(cfg: RandomCorpusConfig) -> dict:
    return asdict(cfg)

import json

from synclab.corpus import builtin
from synclab.experiments import (
    RandomCorpusConfig,
    archive,
    counterexamples,
    evaluate,
    make_instance,
    run_corpus,
    summarize,
)


def test_instances_cycle_sizes():
    cfg = RandomCorpusConfig(count=12, n_min=2, n_max=4, alphabet_sizes=(2, 3))
    sizes = [cfg.instance(i)[:2] for i in range(6)]
    assert sizes == [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3)]
    assert make_instance(cfg, 3) == make_instance(cfg, 3)


def test_evaluate_kari():
    rec = evaluate(builtin("kari6").dfa)
    assert rec["oracle_length"] == 25 and not rec["exceeds_cerny_bound"]
    assert rec["letter_ranks"] == {"a": 6, "b": 5} and not rec["deficient_letter"]
    assert rec["deficient_letter_bound_holds"] is None
    assert [c["bound"] for c in rec["rank_k"]] == [1, 7, 13, 19, 25] and rec["rank_k_holds"]
    assert rec["chain_outcome"] == "reached-rank-1" and rec["chain_dimension_law"]
    assert rec["chain_word_synchronizes"] and rec["chain_word_not_shorter_than_oracle"]


def test_counterexamples_and_archive(tmp_path):
    recs = run_corpus(RandomCorpusConfig(count=6, n_max=4, seed=1))
    assert counterexamples(recs) == {}
    fake = dict(recs[0], deficient_letter_bound_holds=False, chain_outcome="stalled")
    found = counterexamples([fake])
    assert set(found) == {"deficient_letter_bound", "chain_not_reached"}
    paths = archive(found, tmp_path)
    assert sorted(p.name for p in paths) == ["chain_not_reached-0.json", "deficient_letter_bound-0.json"]
    assert json.loads(paths[0].read_text())["index"] == 0


def test_summary():
    recs = run_corpus(RandomCorpusConfig(count=8, n_max=5, seed=4, run_chain=False))
    s = summarize(recs)
    assert s["instances"] == 8 and s["chain_outcomes"] == {"not-run": 8}
    assert s["max_reset_length"] == max(r["oracle_length"] for r in recs)

"""Command-line front end.

Exit codes: 0 success, 1 negative finding (not synchronizing, chain did not
reach rank one, trace mismatch, counterexample), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import experiments
from .automaton import StateSet, UnknownLetterError, image_of_automaton, is_strongly_connected, is_synchronizing
from .chain import REACHED, ChainLimits, build_chain, subspace_report, verify_dimension_law
from .corpus import BUILTIN_NAMES, DfaFormatError, GenerationError, builtin, parse
from .oracle import greedy_reset, shortest_reset
from .replay import PUBLISHED_TRACES, chain_golden_path, corpus_chain, replay_published
from .series import NotSynchronizingWordError, SeriesContext, series, solve_equation
from .words import expand_word


class InputError(Exception):
    pass


def load_automaton(ref: str):
    """A JSON file path, or ``builtin:<name>`` / a bare built-in name."""
    name = ref[len("builtin:"):] if ref.startswith("builtin:") else ref
    path = Path(ref)
    if not path.exists():
        try:
            entry = builtin(name)
        except KeyError:
            raise InputError(f"{ref}: no such file or built-in automaton ({', '.join(BUILTIN_NAMES)})") from None
        return entry.dfa, entry
    try:
        return parse(path.read_text()), None
    except DfaFormatError as exc:
        raise InputError(f"{ref}: {exc}") from None


def _word(a, text: str) -> str:
    try:
        w = expand_word(text)
        a.check_word(w)
    except (ValueError, UnknownLetterError) as exc:
        raise InputError(str(exc)) from None
    return w


def cmd_check(args):
    a, _ = load_automaton(args.file)
    sync = is_synchronizing(a)
    report = {
        "n": a.n,
        "alphabet": "".join(a.alphabet),
        "synchronizing": sync,
        "strongly_connected": is_strongly_connected(a),
        "letter_image_sizes": {x: len(image_of_automaton(a, x)) for x in a.alphabet},
    }
    text = [f"{k}: {v}" for k, v in report.items()]
    return (0 if sync else 1), report, text


def cmd_shortest(args):
    a, _ = load_automaton(args.file)
    if args.greedy or a.n > args.max_n:
        r = greedy_reset(a)
    else:
        r = shortest_reset(a, max_n=args.max_n)
    report = {
        "method": r.method,
        "status": r.status,
        "length": r.length,
        "word": r.word,
        "explored": r.explored,
        "cerny_bound": (a.n - 1) ** 2,
    }
    if r.found:
        text = [str(r.length), f"word: {r.word}", f"method: {r.method}"]
    else:
        text = [f"status: {r.status}"]
    return (0 if r.found else 1), report, text


def cmd_chain(args):
    a, entry = load_automaton(args.file)
    if args.sync_word:
        s = _word(a, args.sync_word)
    else:
        r = shortest_reset(a)
        if not r.found:
            return 1, {"status": r.status}, [f"status: {r.status}"]
        s = r.word
    power = entry.power_notation if entry is not None else True
    try:
        trace = build_chain(a, s, ChainLimits(max_rows=args.budget), power_notation=power)
    except NotSynchronizingWordError as exc:
        raise InputError(str(exc)) from None
    report = {
        "sync_word": s,
        "outcome": trace.outcome,
        "rows": [trace.render_row(r) for r in trace.rows],
        "dimension_law": verify_dimension_law(trace),
        "final_word": trace.final_word,
        "stall_state": trace.stall_state,
        "subspaces": [g.__dict__ for g in subspace_report(trace)],
    }
    text = trace.render().splitlines()
    return (0 if trace.outcome == REACHED else 1), report, text


def _states(a, text: str) -> StateSet:
    try:
        members = [int(x) for x in text.split(",") if x.strip()]
        return StateSet.of(a.n, members)
    except ValueError as exc:
        raise InputError(f"--states: {exc}") from None


def cmd_series(args):
    a, _ = load_automaton(args.file)
    u = _word(a, args.word)
    p = _states(a, args.states)
    try:
        value = series(SeriesContext(a, p), u)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return 0, {"word": u, "states": list(p.members()), "series": value}, [str(value)]


def cmd_solve(args):
    a, _ = load_automaton(args.file)
    u = _word(a, args.word)
    s = _word(a, args.sync_word)
    try:
        sol = solve_equation(a, u, s)
    except NotSynchronizingWordError as exc:
        raise InputError(str(exc)) from None
    minimal = sol.minimal()
    rank_u = len(image_of_automaton(a, u))
    report = {
        "q": sol.q,
        "forced_rows": sorted(sol.forced_rows),
        "free_rows": list(sol.free_rows),
        "minimal_series": sol.minimal_series,
        "rank_u_minus_one": rank_u - 1,
        "identity_holds": sol.minimal_series == rank_u - 1,
        "max_minimal_rank": sol.max_minimal_rank,
        "minimal_solution": minimal.dense(),
    }
    text = [f"{k}: {v}" for k, v in report.items() if k != "minimal_solution"]
    text.append("minimal solution:")
    text.extend(minimal.render().splitlines())
    return 0, report, text


def cmd_verify_paper(args):
    ok = True
    report = {}
    text = []
    for name in PUBLISHED_TRACES:
        rep = replay_published(name)
        golden = chain_golden_path(name).read_text()
        rendered = corpus_chain(name).render()
        chain_match = golden == rendered
        ok = ok and rep.ok and chain_match
        report[name] = {
            "rows": len(rep.rows),
            "rows_ok": sum(r.ok for r in rep.rows),
            "emended_rows": [r.index for r in rep.rows if r.emended],
            "printed_words_independent": rep.chain_ok,
            "chain_golden_match": chain_match,
            "ok": rep.ok and chain_match,
        }
        text.extend(rep.summary_lines())
        text.append(f"{name} chain trace matches golden: {chain_match}")
        for e in rep.errata:
            text.append(f"{name} erratum row {e.row}: {e.old} -> {e.new} ({e.reason})")
    report["ok"] = ok
    text.append("PASS" if ok else "FAIL")
    return (0 if ok else 1), report, text


def cmd_random(args):
    cfg = experiments.RandomCorpusConfig(
        count=args.count,
        n_min=args.n,
        n_max=args.n,
        alphabet_sizes=(args.k,),
        seed=args.seed,
        strongly_connected=not args.any_graph,
        run_chain=not args.no_chain,
    )
    try:
        records = experiments.run_corpus(cfg, jobs=args.jobs)
    except GenerationError as exc:
        raise InputError(str(exc)) from None
    found = experiments.counterexamples(records)
    summary = experiments.summarize(records)
    paths = []
    if found:
        paths = experiments.archive(found, args.archive)
    if args.report:
        Path(args.report).write_text(json.dumps({"config": experiments.config_dict(cfg), "records": records}, indent=2) + "\n")
    report = {
        "summary": summary,
        "counterexamples": {k: len(v) for k, v in found.items()},
        "archived": [str(p) for p in paths],
    }
    text = [f"{k}: {v}" for k, v in summary.items()]
    if found:
        text.append("counterexamples: " + ", ".join(f"{k}={len(v)}" for k, v in found.items()))
        text.extend(f"archived {p}" for p in paths)
        if "exceeds_cerny_bound" in found:
            text.append("SENSATION: reset word longer than (n-1)^2 found")
    else:
        text.append("counterexamples: none")
    return (1 if found else 0), report, text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="synclab", description="Synchronizing automata laboratory.")
    parser.add_argument("--json", action="store_true", help="emit one JSON object")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="synchronizability, strong connectivity, letter ranks")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("shortest", help="shortest reset word")
    p.add_argument("file")
    p.add_argument("--max-n", type=int, default=24, help="largest n searched exactly (greedy beyond)")
    p.add_argument("--greedy", action="store_true")
    p.set_defaults(func=cmd_shortest)

    p = sub.add_parser("chain", help="grow the chain of solution spans")
    p.add_argument("file")
    p.add_argument("--sync-word", help="reset word guiding the chain (default: oracle word)")
    p.add_argument("--budget", type=int, default=None, help="row budget (default n(n-2)+1)")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("series", help="series value of a word for a state set")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.add_argument("--states", required=True, help="comma-separated state indices")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("solve", help="solutions of M_u L = M_s")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.add_argument("--sync-word", required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify-paper", help="replay the three printed example traces")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("random", help="random synchronizing automata with oracle statistics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2, help="alphabet size")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report", help="write every record to this JSON file")
    p.add_argument("--archive", default="counterexamples", help="directory for counterexample files")
    p.add_argument("--any-graph", action="store_true", help="do not require strong connectivity")
    p.add_argument("--no-chain", action="store_true")
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, report, text = args.func(args)
    except InputError as exc:
        if args.json:
            print(json.dumps({"error": str(exc), "exit": 2}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        report = {"command": args.command, "exit": code, **report}
        print(json.dumps(report, sort_keys=True))
    else:
        print("\n".join(text))
    return code


if __name__ == "__main__":
    sys.exit(main())

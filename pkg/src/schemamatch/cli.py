"""Command-line entry points: match, evaluate, serve.

match scores two CSVs and writes the score matrix (CSV + JSON), the Top-N
suggestions (JSON), and a score heatmap figure. evaluate additionally needs
a ground-truth CSV and writes an evaluation report (JSON), optional
ablation table (CSV), and accuracy/runtime figures. serve starts the HTTP
session service used by the review UI.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import ensemble, evaluation, report
from .ingest import load_dataset
from .model import KnownPair, MatchError, MatcherConfig, Origin
from .schema_matchers import RuleSet


def _parse_floats(text: str, n: int, flag: str) -> tuple[float, ...]:
    parts = text.split(",")
    if len(parts) != n:
        raise ValueError(f"{flag} needs {n} comma-separated numbers (got {text!r})")
    return tuple(float(p) for p in parts)


def _parse_known(entries: list[str] | None) -> list[KnownPair]:
    pairs = []
    for entry in entries or []:
        if ":" not in entry:
            raise ValueError(f"--known must look like SOURCE:DEST (got {entry!r})")
        s, d = entry.split(":", 1)
        pairs.append(KnownPair(s, d, origin=Origin.USER))
    return pairs


def _config_from_args(args: argparse.Namespace) -> MatcherConfig:
    base = MatcherConfig()
    return MatcherConfig(
        g=_parse_floats(args.lingweights, 3, "--lingweights")
        if args.lingweights
        else base.g,
        w=_parse_floats(args.weights, 4, "--weights") if args.weights else base.w,
        top_n=args.top,
        bins=args.bins,
        seed=args.seed,
    )


def _add_data_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--source", required=True, help="source CSV path")
    parser.add_argument("--dest", required=True, help="destination CSV path")
    parser.add_argument("--rules", help="domain-knowledge rules JSON path")
    parser.add_argument("--weights", help="matcher weights w1,w2,w3,w4")
    parser.add_argument("--lingweights", help="linguistic weights g1,g2,g3")
    parser.add_argument("--top", type=int, default=1, help="suggestions per attribute")
    parser.add_argument("--bins", type=int, default=5, help="discretization bins")
    parser.add_argument("--seed", type=int, default=0, help="random-pivot seed")
    parser.add_argument(
        "--known",
        action="append",
        metavar="SOURCE:DEST",
        help="known matched pair, repeatable",
    )
    parser.add_argument("--out", default=".", help="output directory")


def _load_inputs(args: argparse.Namespace):
    source = load_dataset(args.source)
    dest = load_dataset(args.dest)
    rules = RuleSet.from_json(args.rules) if args.rules else RuleSet()
    cfg = _config_from_args(args)
    known = _parse_known(args.known)
    return source, dest, rules, cfg, known


def _print_suggestions(suggestions) -> None:
    width = max((len(s.source_attr) for s in suggestions), default=10)
    print(f"{'source attribute':<{width}}  suggestions")
    for s in suggestions:
        ranked = ", ".join(f"{d} ({score:.2f})" for d, score in s.ranked)
        print(f"{s.source_attr:<{width}}  {ranked}")


def cli_match(args: argparse.Namespace) -> int:
    source, dest, rules, cfg, known = _load_inputs(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    matrix = ensemble.score_all(source, dest, rules, known, cfg)
    suggestions = ensemble.rank(
        matrix,
        cfg.top_n,
        exclude_sources=frozenset(k.source_attr for k in known),
        exclude_dests=frozenset(k.dest_attr for k in known),
    )

    (out / "score_matrix.csv").write_text(
        ensemble.matrix_to_csv(matrix), encoding="utf-8"
    )
    (out / "score_matrix.json").write_text(
        ensemble.matrix_to_json(matrix), encoding="utf-8"
    )
    (out / "suggestions.json").write_text(
        ensemble.suggestions_to_json(suggestions), encoding="utf-8"
    )
    report.save_score_heatmap(matrix, source, dest, out / "score_heatmap.png")

    _print_suggestions(suggestions)
    print(f"wrote score_matrix.csv/.json, suggestions.json, score_heatmap.png to {out}")
    return 0


def cli_evaluate(args: argparse.Namespace) -> int:
    source, dest, rules, cfg, known = _load_inputs(args)
    truth = evaluation.load_ground_truth(args.truth)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    result = evaluation.evaluate(source, dest, truth, cfg, rules, known)
    (out / "eval_report.json").write_text(result.to_json(), encoding="utf-8")
    report.save_topn_chart(result.topn_accuracy, out / "topn_accuracy.png")
    report.save_runtime_chart(result.timings, out / "runtimes.png")

    written = ["eval_report.json", "topn_accuracy.png", "runtimes.png"]
    if args.ablation:
        table = evaluation.ablation(source, dest, truth, cfg)
        (out / "ablation.csv").write_text(
            evaluation.ablation_to_csv(table), encoding="utf-8"
        )
        report.save_ablation_chart(table, out / "ablation.png")
        written += ["ablation.csv", "ablation.png"]

    print(
        f"precision={result.precision:.4f} recall={result.recall:.4f} "
        f"f1={result.f1:.4f}"
    )
    for n in sorted(result.topn_accuracy):
        print(f"top_{n} accuracy={result.topn_accuracy[n]:.4f}")
    print(f"wrote {', '.join(written)} to {out}")
    return 0


def cli_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import SessionStore, create_app
    from .session import new_session

    store = SessionStore()
    if args.source and args.dest:
        source = load_dataset(args.source)
        dest = load_dataset(args.dest)
        rules = RuleSet.from_json(args.rules) if args.rules else RuleSet()
        cfg = _config_from_args(args)
        session = new_session(source, dest, cfg, rules, _parse_known(args.known))
        store.add(session)
        if args.truth:
            store.truth_paths[session.id] = args.truth
        print(f"preloaded session {session.id}", flush=True)

    app = create_app(store, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schemamatch",
        description="Score and review attribute correspondences between two CSV schemas.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_match = sub.add_parser("match", help="score all pairs and write suggestions")
    _add_data_flags(p_match)
    p_match.set_defaults(func=cli_match)

    p_eval = sub.add_parser("evaluate", help="evaluate suggestions against ground truth")
    _add_data_flags(p_eval)
    p_eval.add_argument("--truth", required=True, help="ground truth CSV path")
    p_eval.add_argument(
        "--ablation", action="store_true", help="also write per-component accuracy"
    )
    p_eval.set_defaults(func=cli_evaluate)

    p_serve = sub.add_parser("serve", help="run the review-session HTTP service")
    p_serve.add_argument("--source", help="preload session: source CSV path")
    p_serve.add_argument("--dest", help="preload session: destination CSV path")
    p_serve.add_argument("--rules", help="domain-knowledge rules JSON path")
    p_serve.add_argument("--truth", help="ground truth CSV for session reports")
    p_serve.add_argument("--weights", help="matcher weights w1,w2,w3,w4")
    p_serve.add_argument("--lingweights", help="linguistic weights g1,g2,g3")
    p_serve.add_argument("--top", type=int, default=1)
    p_serve.add_argument("--bins", type=int, default=5)
    p_serve.add_argument("--seed", type=int, default=0)
    p_serve.add_argument("--known", action="append", metavar="SOURCE:DEST")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8765)
    p_serve.add_argument("--ui-dir", help="directory of built review-UI assets")
    p_serve.set_defaults(func=cli_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MatchError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

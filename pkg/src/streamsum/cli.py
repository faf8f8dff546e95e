"""Command-line front end: ``run``, ``synth`` and ``eval`` subcommands.

Exit codes: 0 success, 1 pipeline failure, 2 configuration/validation
problem, 3 missing artifacts during eval.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from datetime import date
from pathlib import Path

from . import artifacts
from .baselines import LexRankParams, baseline_summary
from .config import ConfigError, RunConfig, merge_config, parse_config_file
from .corpus import ChunkPolicy, chunk_stream, read_stream
from .errors import StreamsumError
from .evalkit import (
    SynthConfig,
    evaluate_summaries,
    filter_metrics_from_labels,
    generate_synthetic_stream,
)
from .filtering import (
    SelectionParams,
    WeakSupervisionRule,
    rule_label_chunk,
    run_filter,
)
from .summarize import DiversityGate, chunk_summary, sequential_summary
from .textkit import ContentExtractor, load_stopwords

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2
EXIT_MISSING = 3


def _iso_z(ts) -> str:
    return ts.isoformat().replace("+00:00", "Z")


def _instance_row(inst) -> dict:
    row = {
        "id": inst.id,
        "ts": _iso_z(inst.timestamp),
        "text": inst.text,
        "followers": inst.followers,
        "followings": inst.followings,
    }
    if inst.gold_label is not None:
        row["gold"] = inst.gold_label
    return row


# ---------------------------------------------------------------------------
# run

def _build_run_config(args) -> RunConfig:
    file_values = parse_config_file(args.config) if args.config else {}
    cli_values = {
        "input": args.input,
        "out": args.out,
        "keywords": args.keywords,
        "method": args.method,
        "alpha": args.alpha,
        "theta": args.theta,
        "k": args.k,
        "chunk_by": args.chunk_by,
        "start": args.start,
        "candidate_fraction": args.candidate_fraction,
        "representative_fraction": args.representative_fraction,
        "m": args.companion_words,
        "p": args.candidates,
        "n": args.representatives,
        "relevance_threshold": args.relevance_threshold,
        "smoothing": args.smoothing,
        "stopwords": args.stopwords,
        "gold": args.gold,
        "gold_summaries": args.gold_summaries,
        "baseline_pool": args.baseline_pool,
        "strict_parse": args.strict_parse,
    }
    merged = merge_config(cli_values, file_values)
    for key in ("input", "out", "keywords"):
        if not merged.get(key):
            raise ConfigError(f"{key} is required (flag or config file)")
    config = RunConfig(**merged)
    config.validate()
    return config


def _run_ws2fs(chunks, rule, config, extractor, out_dir, emit_dir):
    params = SelectionParams(
        p=config.p,
        n=config.n,
        m=config.m,
        alpha=config.alpha,
        relevance_threshold=config.relevance_threshold,
        candidate_fraction=config.candidate_fraction,
        representative_fraction=config.representative_fraction,
    )
    results = run_filter(chunks, rule, params, config.smoothing, extractor)
    gate = DiversityGate(theta=config.theta)
    labeled = [r.final for r in results]
    repsets = [r.repset for r in results]
    summaries = [chunk_summary(r.repset, config.k, gate, extractor) for r in results]
    names = []
    for chunk_labels, repset in zip(labeled, repsets):
        names.append(artifacts.write_labels(out_dir, chunk_labels))
        names.append(artifacts.write_repset(out_dir, repset))
        if emit_dir is not None:
            artifacts.write_labels(emit_dir, chunk_labels)
            artifacts.write_repset(emit_dir, repset)
    return labeled, summaries, names


def _run_baseline(chunks, rule, config, extractor, out_dir, emit_dir):
    gate = DiversityGate(theta=config.theta)
    lex = LexRankParams(
        damping=config.lexrank_damping,
        sim_threshold=config.lexrank_threshold,
        tolerance=config.lexrank_tolerance,
        max_iterations=config.lexrank_max_iterations,
    )
    labeled, summaries, names = [], [], []
    for chunk in chunks:
        chunk_labels = rule_label_chunk(rule, chunk, extractor)
        labeled.append(chunk_labels)
        if config.baseline_pool == "matched":
            pool = [s.instance for s in chunk_labels.positives]
        else:
            pool = list(chunk.instances)
        summaries.append(
            baseline_summary(
                pool,
                config.method,
                k=config.k,
                gate=gate,
                chunk_index=chunk.index,
                query=set(rule.keywords),
                lexrank_params=lex,
                extractor=extractor,
            )
        )
        names.append(artifacts.write_labels(out_dir, chunk_labels))
        if emit_dir is not None:
            artifacts.write_labels(emit_dir, chunk_labels)
    return labeled, summaries, names


def cmd_run(args) -> int:
    try:
        config = _build_run_config(args)
    except ConfigError as exc:
        log.error("configuration error: %s", exc)
        return EXIT_CONFIG
    if not Path(config.input).is_file():
        log.error("input file not found: %s", config.input)
        return EXIT_CONFIG
    for path_key in ("gold", "gold_summaries", "stopwords"):
        path = getattr(config, path_key)
        if path and not Path(path).is_file():
            log.error("%s file not found: %s", path_key, path)
            return EXIT_CONFIG

    out_dir = Path(config.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    emit_dir = None
    if args.emit_artifacts:
        emit_dir = Path(args.emit_artifacts)
        emit_dir.mkdir(parents=True, exist_ok=True)

    extractor = ContentExtractor(
        stopwords=load_stopwords(config.stopwords) if config.stopwords else None
    )
    names: list[str] = []
    chunk_index: list[dict] = []
    try:
        instances = read_stream(config.input, strict=config.strict_parse)
        start = date.fromisoformat(config.start) if config.start else None
        policy = ChunkPolicy.from_string(config.chunk_by, start=start)
        chunks = chunk_stream(instances, policy)
        chunk_index = [
            {"index": c.index, "key": c.key, "instances": len(c)} for c in chunks
        ]
        keys_by_index = {c.index: c.key for c in chunks}
        rule = WeakSupervisionRule.from_string(config.keywords)

        if config.method == "ws2fs":
            labeled, summaries, names = _run_ws2fs(
                chunks, rule, config, extractor, out_dir, emit_dir
            )
        else:
            labeled, summaries, names = _run_baseline(
                chunks, rule, config, extractor, out_dir, emit_dir
            )

        gate = DiversityGate(theta=config.theta)
        sequential = sequential_summary(summaries, gate, extractor)
        for summary in summaries:
            names.append(artifacts.write_chunk_summary(out_dir, summary))
        names.append(artifacts.write_sequential_summary(out_dir, sequential, keys_by_index))
        names.append(
            artifacts.write_summaries_json(out_dir, summaries, sequential, keys_by_index)
        )

        if config.gold:
            gold = artifacts.read_gold_labels(config.gold)
            metrics = {
                "filter": filter_metrics_from_labels(
                    [(lc.chunk_index, [(s.id, s.label) for s in lc.scored]) for lc in labeled],
                    gold,
                ).to_dict()
            }
            if config.gold_summaries:
                gold_sums = artifacts.read_gold_summaries(config.gold_summaries)
                chunk_texts = {
                    keys_by_index[s.chunk_index]: [i.text for i in s.entries]
                    for s in summaries
                }
                seq_texts = [inst.text for _, inst in sequential.entries]
                metrics["summaries"] = evaluate_summaries(
                    chunk_texts, seq_texts, gold_sums, extractor
                ).to_dict()
            names.append(artifacts.write_metrics(out_dir, metrics))
    except (StreamsumError, OSError, ValueError) as exc:
        log.error("run failed: %s", exc)
        artifacts.write_manifest(
            out_dir, config.echo(), chunk_index, names, partial=True, error=str(exc)
        )
        return EXIT_RUNTIME

    names.append(
        artifacts.write_manifest(out_dir, config.echo(), chunk_index, names)
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# synth

def cmd_synth(args) -> int:
    try:
        config = SynthConfig(
            seed=args.seed,
            chunks=args.chunks,
            instances_per_chunk=args.instances_per_chunk,
            relevant_fraction=args.relevant_fraction,
            core_terms=tuple(t.strip() for t in args.core_terms.split(",") if t.strip()),
            subtopic_terms_per_chunk=args.subtopics_per_chunk,
            background_vocab_size=args.background_vocab,
            drift_rate=args.drift_rate,
        )
    except ValueError as exc:
        log.error("bad generator config: %s", exc)
        return EXIT_CONFIG

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    instances, gold, manifest = generate_synthetic_stream(config)
    with open(out_dir / "stream.jsonl", "w", encoding="utf-8") as fh:
        for inst in instances:
            fh.write(json.dumps(_instance_row(inst), sort_keys=True) + "\n")
    with open(out_dir / "gold.jsonl", "w", encoding="utf-8") as fh:
        for inst in instances:  # stream order, not dict order
            fh.write(json.dumps({"gold": gold[inst.id], "id": inst.id}, sort_keys=True) + "\n")
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, sort_keys=True) + "\n", encoding="utf-8"
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# eval

def cmd_eval(args) -> int:
    run_dir = Path(args.run_dir)
    if not (run_dir / artifacts.MANIFEST).is_file():
        log.error("no manifest in %s", run_dir)
        return EXIT_MISSING
    manifest = artifacts.read_manifest(run_dir)
    chunk_meta = manifest.get("chunks", [])
    extractor = ContentExtractor()

    metrics: dict = {}
    if args.gold:
        if not Path(args.gold).is_file():
            log.error("gold file not found: %s", args.gold)
            return EXIT_MISSING
        gold = artifacts.read_gold_labels(args.gold)
        pairs = []
        seen_ids: set[str] = set()
        try:
            for meta in chunk_meta:
                rows = artifacts.read_labels(run_dir, meta["index"])
                pairs.append((meta["index"], [(r["id"], bool(r["label"])) for r in rows]))
                seen_ids.update(r["id"] for r in rows)
        except FileNotFoundError as exc:
            log.error("missing label artifact: %s", exc)
            return EXIT_MISSING
        unknown = sorted(set(gold) - seen_ids)
        if unknown:
            log.warning("ignoring %d gold ids absent from the run", len(unknown))
        metrics["filter"] = filter_metrics_from_labels(pairs, gold).to_dict()

    if args.gold_summaries:
        if not Path(args.gold_summaries).is_file():
            log.error("gold summaries file not found: %s", args.gold_summaries)
            return EXIT_MISSING
        try:
            summaries = artifacts.read_summaries_json(run_dir)
        except FileNotFoundError:
            log.error("missing %s in %s", artifacts.SUMMARIES_JSON, run_dir)
            return EXIT_MISSING
        gold_sums = artifacts.read_gold_summaries(args.gold_summaries)
        chunk_texts = {
            c["key"]: [e["text"] for e in c["entries"]] for c in summaries["chunks"]
        }
        seq_texts = [e["text"] for e in summaries["sequential"]]
        metrics["summaries"] = evaluate_summaries(
            chunk_texts, seq_texts, gold_sums, extractor
        ).to_dict()

    if not metrics:
        log.error("nothing to evaluate: pass --gold and/or --gold-summaries")
        return EXIT_CONFIG

    payload = json.dumps(metrics, sort_keys=True, ensure_ascii=False) + "\n"
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="streamsum",
        description="Weakly supervised stream filtering and sequential summarization",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="filter a stream and emit summaries")
    run.add_argument("--input", help="JSONL stream path")
    run.add_argument("--out", help="output directory for the artifact tree")
    run.add_argument("--keywords", help="comma-separated topical keywords/hashtags")
    run.add_argument("--config", help="flat key=value config file")
    run.add_argument(
        "--method",
        choices=["ws2fs", "centroid", "lexrank", "q1", "q2", "q3"],
        help="adaptive filter or a baseline ranker",
    )
    run.add_argument("--alpha", type=float, help="ensemble weight on the chunk-local model")
    run.add_argument("--theta", type=float, help="diversity gate threshold")
    run.add_argument("--k", type=int, help="summary entries per chunk")
    run.add_argument("--chunk-by", dest="chunk_by", help='"date" or "count:N"')
    run.add_argument("--start", help="discard instances before this UTC date (YYYY-MM-DD)")
    run.add_argument("--candidate-fraction", dest="candidate_fraction", type=float)
    run.add_argument("--representative-fraction", dest="representative_fraction", type=float)
    run.add_argument(
        "--companion-words", dest="companion_words", type=int, help="words per companion/distant set"
    )
    run.add_argument("--candidates", type=int, help="fixed candidate count p (overrides fraction)")
    run.add_argument(
        "--representatives", type=int, help="fixed representative count n (overrides fraction)"
    )
    run.add_argument("--relevance-threshold", dest="relevance_threshold", type=float)
    run.add_argument("--smoothing", type=float, help="additive smoothing constant")
    run.add_argument("--stopwords", help="custom stopword list, one term per line")
    run.add_argument("--gold", help="gold relevance labels (JSONL id/gold)")
    run.add_argument("--gold-summaries", dest="gold_summaries", help="gold summary JSON")
    run.add_argument(
        "--baseline-pool",
        dest="baseline_pool",
        choices=["matched", "all"],
        help="rank baselines over rule-matched instances or the whole chunk",
    )
    run.add_argument(
        "--strict-parse",
        dest="strict_parse",
        action="store_true",
        default=None,
        help="abort on malformed records instead of skipping them",
    )
    run.add_argument(
        "--emit-artifacts",
        dest="emit_artifacts",
        help="extra directory receiving per-chunk label/repset artifacts",
    )
    run.set_defaults(func=cmd_run)

    synth = sub.add_parser("synth", help="generate a seeded synthetic drifting stream")
    synth.add_argument("--out", required=True, help="output directory")
    synth.add_argument("--seed", type=int, default=42)
    synth.add_argument("--chunks", type=int, default=10)
    synth.add_argument("--instances-per-chunk", dest="instances_per_chunk", type=int, default=1000)
    synth.add_argument("--relevant-fraction", dest="relevant_fraction", type=float, default=0.3)
    synth.add_argument(
        "--core-terms",
        dest="core_terms",
        default="tremor,epicenter,aftershock",
        help="comma-separated stable topic terms",
    )
    synth.add_argument("--subtopics-per-chunk", dest="subtopics_per_chunk", type=int, default=4)
    synth.add_argument("--background-vocab", dest="background_vocab", type=int, default=200)
    synth.add_argument("--drift-rate", dest="drift_rate", type=float, default=0.5)
    synth.set_defaults(func=cmd_synth)

    ev = sub.add_parser("eval", help="recompute metrics from persisted run artifacts")
    ev.add_argument("--run-dir", dest="run_dir", required=True)
    ev.add_argument("--gold", help="gold relevance labels (JSONL id/gold)")
    ev.add_argument("--gold-summaries", dest="gold_summaries", help="gold summary JSON")
    ev.add_argument("--out", help="write metrics JSON here instead of stdout")
    ev.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Artifact persistence: deterministic, UTF-8, stable key order.

File layout inside a run directory:

    manifest.json               config echo + versions + seed + chunk index
    chunk_<i>.labels.jsonl      one {id,label,confidence,correlation,credibility} per line
    chunk_<i>.repset.json       companion/distant words, ranked S+/S- ids, built flag
    chunk_<i>.summary.txt       one entry text per line, rank order
    sequential.summary.txt      chunk key, a tab, then the entry text
    summaries.json              id-bearing JSON form of all summaries
    metrics.json                filtering + summary metrics (when gold given)

Nothing here embeds wall-clock time, so identical runs produce byte-identical
trees.
"""

from __future__ import annotations

import json
import platform
from pathlib import Path

from .filtering import LabeledChunk, RepresentativeSet
from .summarize import ChunkSummary, SequentialSummary

MANIFEST = "manifest.json"
SUMMARIES_JSON = "summaries.json"
SEQUENTIAL_TXT = "sequential.summary.txt"
METRICS_JSON = "metrics.json"


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def labels_filename(index: int) -> str:
    return f"chunk_{index}.labels.jsonl"


def repset_filename(index: int) -> str:
    return f"chunk_{index}.repset.json"


def summary_filename(index: int) -> str:
    return f"chunk_{index}.summary.txt"


def write_labels(out_dir: Path, labeled: LabeledChunk) -> str:
    name = labels_filename(labeled.chunk_index)
    lines = [
        _dump(
            {
                "id": s.id,
                "label": s.label,
                "confidence": s.confidence,
                "correlation": s.correlation,
                "credibility": s.credibility,
            }
        )
        for s in labeled.scored
    ]
    (out_dir / name).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return name


def write_repset(out_dir: Path, repset: RepresentativeSet) -> str:
    name = repset_filename(repset.chunk_index)
    payload = {
        "chunk_index": repset.chunk_index,
        "built": repset.built,
        "companion_words": sorted(repset.companion_words),
        "distant_words": sorted(repset.distant_words),
        "positive_ids": [s.id for s in repset.positives],
        "negative_ids": [s.id for s in repset.negatives],
    }
    (out_dir / name).write_text(_dump(payload) + "\n", encoding="utf-8")
    return name


def write_chunk_summary(out_dir: Path, summary: ChunkSummary) -> str:
    name = summary_filename(summary.chunk_index)
    text = "".join(inst.text + "\n" for inst in summary.entries)
    (out_dir / name).write_text(text, encoding="utf-8")
    return name


def write_sequential_summary(
    out_dir: Path, sequential: SequentialSummary, keys_by_index: dict[int, str]
) -> str:
    lines = [
        f"{keys_by_index.get(idx, str(idx))}\t{inst.text}\n" for idx, inst in sequential.entries
    ]
    (out_dir / SEQUENTIAL_TXT).write_text("".join(lines), encoding="utf-8")
    return SEQUENTIAL_TXT


def write_summaries_json(
    out_dir: Path,
    summaries: list[ChunkSummary],
    sequential: SequentialSummary,
    keys_by_index: dict[int, str],
) -> str:
    payload = {
        "chunks": [
            {
                "index": s.chunk_index,
                "key": keys_by_index.get(s.chunk_index, str(s.chunk_index)),
                "entries": [{"id": inst.id, "text": inst.text} for inst in s.entries],
            }
            for s in summaries
        ],
        "sequential": [
            {
                "chunk_index": idx,
                "key": keys_by_index.get(idx, str(idx)),
                "id": inst.id,
                "text": inst.text,
            }
            for idx, inst in sequential.entries
        ],
    }
    (out_dir / SUMMARIES_JSON).write_text(_dump(payload) + "\n", encoding="utf-8")
    return SUMMARIES_JSON


def write_metrics(out_dir: Path, metrics: dict) -> str:
    (out_dir / METRICS_JSON).write_text(_dump(metrics) + "\n", encoding="utf-8")
    return METRICS_JSON


def write_manifest(
    out_dir: Path,
    config_echo: dict,
    chunk_index: list[dict],
    artifact_names: list[str],
    seed: int | None = None,
    partial: bool = False,
    error: str | None = None,
) -> str:
    from . import __version__

    payload = {
        "tool": {
            "name": "streamsum",
            "version": __version__,
            "python": platform.python_version(),
        },
        "seed": seed,
        "config": config_echo,
        "chunks": chunk_index,
        "artifacts": sorted(artifact_names),
        "partial": partial,
    }
    if error is not None:
        payload["error"] = error
    (out_dir / MANIFEST).write_text(_dump(payload) + "\n", encoding="utf-8")
    return MANIFEST


def read_manifest(run_dir: Path) -> dict:
    return json.loads((run_dir / MANIFEST).read_text(encoding="utf-8"))


def read_labels(run_dir: Path, index: int) -> list[dict]:
    rows = []
    with open(run_dir / labels_filename(index), encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                rows.append(json.loads(line))
    return rows


def read_summaries_json(run_dir: Path) -> dict:
    return json.loads((run_dir / SUMMARIES_JSON).read_text(encoding="utf-8"))


def read_gold_labels(path: str | Path) -> dict[str, bool]:
    """Gold labels as JSONL rows {"id": ..., "gold": bool}."""
    gold: dict[str, bool] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            row = json.loads(line)
            gold[str(row["id"])] = bool(row["gold"])
    return gold


def read_gold_summaries(path: str | Path) -> dict:
    """Gold summaries: {"<chunk key>": [refs...], "sequential": [refs...]}."""
    return json.loads(Path(path).read_text(encoding="utf-8"))

"""Evaluation metrics and the seeded synthetic drifting-stream generator.

The generator stands in for restricted-distribution social-stream corpora:
it emits a JSONL-compatible stream whose relevant instances carry a stable
core vocabulary early and progressively switch to per-chunk subtopic terms,
with author status skewed so relevance correlates with credibility. The
manifest records each chunk's injected subtopic terms so tests can check
drift tracking against ground truth.
"""

from __future__ import annotations

import datetime as dt
import logging
import random
from dataclasses import asdict, dataclass

from .corpus import Instance
from .filtering import LabeledChunk
from .summarize import ChunkSummary, SequentialSummary
from .textkit import ContentExtractor, DEFAULT_EXTRACTOR, RougeL, rouge_l

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# filtering metrics

@dataclass(frozen=True)
class ChunkFilterScore:
    chunk_index: int
    tp: int
    fp: int
    fn: int
    tn: int
    precision: float | None
    recall: float | None
    f1: float | None


@dataclass(frozen=True)
class FilterMetrics:
    """Per-chunk and micro-averaged precision/recall/F1 of relevance labels."""

    per_chunk: tuple[ChunkFilterScore, ...]
    precision: float | None
    recall: float | None
    f1: float | None
    evaluated: int  # instances that carried a gold label

    def to_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "evaluated": self.evaluated,
            "per_chunk": [
                {
                    "chunk_index": c.chunk_index,
                    "tp": c.tp,
                    "fp": c.fp,
                    "fn": c.fn,
                    "tn": c.tn,
                    "precision": c.precision,
                    "recall": c.recall,
                    "f1": c.f1,
                }
                for c in self.per_chunk
            ],
        }


def _prf(tp: int, fp: int, fn: int) -> tuple[float | None, float | None, float | None]:
    precision = tp / (tp + fp) if tp + fp > 0 else None
    recall = tp / (tp + fn) if tp + fn > 0 else None
    if precision is None or recall is None:
        f1 = None
    elif precision + recall == 0.0:
        f1 = 0.0
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return precision, recall, f1


def filter_metrics_from_labels(
    chunk_labels: list[tuple[int, list[tuple[str, bool]]]],
    gold: dict[str, bool],
) -> FilterMetrics:
    """Core metric computation over (chunk_index, [(id, label), ...]) pairs.

    Instances without a gold entry are excluded; relevant is the positive
    class. Undefined chunk statistics (no predicted or no gold positives)
    are reported as None.
    """
    per_chunk = []
    totals = {"tp": 0, "fp": 0, "fn": 0, "tn": 0}
    evaluated = 0
    for index, labels in chunk_labels:
        tp = fp = fn = tn = 0
        for iid, label in labels:
            truth = gold.get(iid)
            if truth is None:
                continue
            evaluated += 1
            if label and truth:
                tp += 1
            elif label and not truth:
                fp += 1
            elif not label and truth:
                fn += 1
            else:
                tn += 1
        totals["tp"] += tp
        totals["fp"] += fp
        totals["fn"] += fn
        totals["tn"] += tn
        precision, recall, f1 = _prf(tp, fp, fn)
        per_chunk.append(ChunkFilterScore(index, tp, fp, fn, tn, precision, recall, f1))
    precision, recall, f1 = _prf(totals["tp"], totals["fp"], totals["fn"])
    return FilterMetrics(
        per_chunk=tuple(per_chunk),
        precision=precision,
        recall=recall,
        f1=f1,
        evaluated=evaluated,
    )


def filter_metrics(predicted: list[LabeledChunk], gold: dict[str, bool]) -> FilterMetrics:
    """Micro-averaged and per-chunk filtering quality against gold labels."""
    pairs = [
        (chunk.chunk_index, [(s.id, s.label) for s in chunk.scored]) for chunk in predicted
    ]
    return filter_metrics_from_labels(pairs, gold)


# ---------------------------------------------------------------------------
# summary metrics

def _reference_tokens(reference, extractor: ContentExtractor) -> list[str]:
    if isinstance(reference, str):
        reference = [reference]
    tokens: list[str] = []
    for line in reference:
        tokens.extend(extractor.content_words(line))
    return tokens


def _candidate_texts(candidate) -> list[str]:
    if isinstance(candidate, ChunkSummary):
        return [inst.text for inst in candidate.entries]
    if isinstance(candidate, SequentialSummary):
        return [inst.text for _, inst in candidate.entries]
    return list(candidate)


def summary_metrics(
    candidate,
    references: list,
    extractor: ContentExtractor | None = None,
) -> RougeL:
    """ROUGE-L of one summary against its references, keeping the best-F1
    reference's statistics.

    The candidate may be a ChunkSummary, a SequentialSummary or a plain list
    of texts; each reference is a text or a list of lines. Candidate and
    reference are compared as concatenated content-word token lists.
    """
    extractor = extractor or DEFAULT_EXTRACTOR
    texts = _candidate_texts(candidate)
    cand_tokens: list[str] = []
    for text in texts:
        cand_tokens.extend(extractor.content_words(text))
    if not cand_tokens or not references:
        return RougeL(0.0, 0.0, 0.0)
    best = RougeL(0.0, 0.0, 0.0)
    for reference in references:
        score = rouge_l(cand_tokens, _reference_tokens(reference, extractor))
        if score.f1 > best.f1:
            best = score
    return best


@dataclass(frozen=True)
class SummaryMetrics:
    """Chunk-wise (averaged) and sequential summary quality."""

    chunk_scores: dict[str, RougeL]
    chunk_average: RougeL | None
    sequential: RougeL | None
    reference_rule: str = "max_f1"

    def to_dict(self) -> dict:
        def enc(score: RougeL | None):
            if score is None:
                return None
            return {"precision": score.precision, "recall": score.recall, "f1": score.f1}

        return {
            "reference_rule": self.reference_rule,
            "chunk_average": enc(self.chunk_average),
            "sequential": enc(self.sequential),
            "per_chunk": {key: enc(score) for key, score in sorted(self.chunk_scores.items())},
        }


def evaluate_summaries(
    chunk_texts: dict[str, list[str]],
    sequential_texts: list[str] | None,
    gold: dict,
    extractor: ContentExtractor | None = None,
) -> SummaryMetrics:
    """Score generated summaries against a gold-summary mapping.

    ``gold`` maps chunk keys to reference lists, plus an optional
    "sequential" entry; chunks without gold references are skipped.
    """
    extractor = extractor or DEFAULT_EXTRACTOR
    chunk_scores: dict[str, RougeL] = {}
    for key, texts in chunk_texts.items():
        references = gold.get(key)
        if not references:
            continue
        chunk_scores[key] = summary_metrics(texts, references, extractor)
    average = None
    if chunk_scores:
        scores = list(chunk_scores.values())
        average = RougeL(
            precision=sum(s.precision for s in scores) / len(scores),
            recall=sum(s.recall for s in scores) / len(scores),
            f1=sum(s.f1 for s in scores) / len(scores),
        )
    sequential = None
    if sequential_texts is not None and gold.get("sequential"):
        sequential = summary_metrics(sequential_texts, gold["sequential"], extractor)
    return SummaryMetrics(chunk_scores=chunk_scores, chunk_average=average, sequential=sequential)


# ---------------------------------------------------------------------------
# synthetic drifting stream

@dataclass(frozen=True)
class SynthConfig:
    seed: int = 42
    chunks: int = 10
    instances_per_chunk: int = 1000
    relevant_fraction: float = 0.3
    core_terms: tuple[str, ...] = ("tremor", "epicenter", "aftershock")
    subtopic_terms_per_chunk: int = 4
    background_vocab_size: int = 200
    drift_rate: float = 0.5

    def __post_init__(self):
        if self.chunks < 1 or self.instances_per_chunk < 1:
            raise ValueError("chunks and instances_per_chunk must be >= 1")
        if self.subtopic_terms_per_chunk < 1 or self.background_vocab_size < 1:
            raise ValueError("term counts must be >= 1")
        if not 0.0 <= self.relevant_fraction <= 1.0:
            raise ValueError("relevant_fraction must lie in [0, 1]")
        if not 0.0 <= self.drift_rate <= 1.0:
            raise ValueError("drift_rate must lie in [0, 1]")
        if not self.core_terms:
            raise ValueError("core_terms must be non-empty")


_BASE_DATE = dt.date(2021, 6, 1)


def subtopic_terms(chunk_index: int, count: int) -> list[str]:
    return [f"sub{chunk_index:02d}w{j}" for j in range(count)]


def generate_synthetic_stream(
    config: SynthConfig,
) -> tuple[list[Instance], dict[str, bool], dict]:
    """Deterministically generate (instances, gold labels, manifest).

    Chunk 0's relevant texts always carry core terms so a keyword rule can
    bootstrap; from chunk 1 on, a drift_rate fraction of relevant texts drops
    the core vocabulary and uses only that chunk's subtopic terms. Relevant
    authors get higher follower/following ratios than background chatter.
    """
    rng = random.Random(config.seed)
    background = [f"bg{k:03d}" for k in range(config.background_vocab_size)]
    instances: list[Instance] = []
    gold: dict[str, bool] = {}
    chunk_meta = []
    counter = 0
    for ci in range(config.chunks):
        day = _BASE_DATE + dt.timedelta(days=ci)
        subs = subtopic_terms(ci, config.subtopic_terms_per_chunk)
        n_rel = round(config.relevant_fraction * config.instances_per_chunk)
        kinds = [True] * n_rel + [False] * (config.instances_per_chunk - n_rel)
        rng.shuffle(kinds)
        for j, relevant in enumerate(kinds):
            if relevant:
                drifted = ci > 0 and rng.random() < config.drift_rate
                words = []
                if not drifted:
                    words += rng.sample(config.core_terms, min(2, len(config.core_terms)))
                words += rng.sample(subs, min(3 if drifted else 2, len(subs)))
                words += rng.choices(background, k=rng.randint(4, 6))
                followers = rng.randint(500, 5000)
                followings = rng.randint(10, 500)
            else:
                words = rng.choices(background, k=rng.randint(6, 9))
                followers = rng.randint(0, 500)
                followings = rng.randint(50, 2000)
            rng.shuffle(words)
            second = (j * 86400) // config.instances_per_chunk
            ts = dt.datetime(day.year, day.month, day.day, tzinfo=dt.timezone.utc)
            ts += dt.timedelta(seconds=second)
            iid = f"t{counter:06d}"
            counter += 1
            instances.append(
                Instance(
                    id=iid,
                    timestamp=ts,
                    text=" ".join(words),
                    followers=followers,
                    followings=followings,
                    gold_label=relevant,
                )
            )
            gold[iid] = relevant
        chunk_meta.append(
            {
                "index": ci,
                "date": day.isoformat(),
                "subtopic_terms": subs,
                "relevant": n_rel,
                "instances": config.instances_per_chunk,
            }
        )
    manifest = {
        "seed": config.seed,
        "base_date": _BASE_DATE.isoformat(),
        "core_terms": sorted(config.core_terms),
        "config": asdict(config),
        "chunks": chunk_meta,
    }
    return instances, gold, manifest

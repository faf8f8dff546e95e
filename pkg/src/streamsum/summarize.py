"""Diversity-gated chunk-wise and sequential summaries.

A candidate joins a summary only if, against every already admitted entry,
all three ROUGE-L statistics (precision, recall, F1) of the two content-word
token lists stay below the gate threshold. Admission is greedy in rank order
and therefore deterministic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .corpus import Instance
from .filtering import RepresentativeSet
from .textkit import ContentExtractor, DEFAULT_EXTRACTOR, rouge_l

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiversityGate:
    theta: float = 0.4

    def __post_init__(self):
        if not 0.0 < self.theta <= 1.0:
            raise ValueError("theta must lie in (0, 1]")


@dataclass(frozen=True)
class ChunkSummary:
    chunk_index: int
    entries: tuple[Instance, ...]


@dataclass(frozen=True)
class SequentialSummary:
    entries: tuple[tuple[int, Instance], ...]  # (chunk_index, instance), chronological


def diversity_admit(
    candidate: Instance,
    admitted: list[Instance],
    gate: DiversityGate,
    extractor: ContentExtractor | None = None,
) -> bool:
    """True iff the candidate overlaps every admitted entry below the gate."""
    extractor = extractor or DEFAULT_EXTRACTOR
    cand = extractor.content_words(candidate.text)
    for other in admitted:
        stats = rouge_l(cand, extractor.content_words(other.text))
        if not stats.all_below(gate.theta):
            return False
    return True


def chunk_summary(
    repset: RepresentativeSet,
    k: int = 3,
    gate: DiversityGate | None = None,
    extractor: ContentExtractor | None = None,
) -> ChunkSummary:
    """Walk the ranked representative positives, admitting up to k entries."""
    gate = gate or DiversityGate()
    if not repset.built:
        log.info("chunk %d: no representative set, emitting empty summary", repset.chunk_index)
        return ChunkSummary(chunk_index=repset.chunk_index, entries=())
    admitted: list[Instance] = []
    for scored in repset.positives:
        if len(admitted) >= k:
            break
        if diversity_admit(scored.instance, admitted, gate, extractor):
            admitted.append(scored.instance)
    return ChunkSummary(chunk_index=repset.chunk_index, entries=tuple(admitted))


def sequential_summary(
    chunk_summaries: list[ChunkSummary],
    gate: DiversityGate | None = None,
    extractor: ContentExtractor | None = None,
) -> SequentialSummary:
    """Concatenate chunk summaries chronologically, re-filtered by the gate."""
    gate = gate or DiversityGate()
    admitted: list[Instance] = []
    entries: list[tuple[int, Instance]] = []
    for summary in chunk_summaries:
        for inst in summary.entries:
            if diversity_admit(inst, admitted, gate, extractor):
                admitted.append(inst)
                entries.append((summary.chunk_index, inst))
    return SequentialSummary(entries=tuple(entries))

"""Classical extractive rankers used for comparison.

All rankers operate on a flat instance list (normally a chunk's rule-matched
instances), produce a full ordering with instance-id tie-breaks, and share
the summarizer's diversity gate through :func:`baseline_summary`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .corpus import Instance
from .summarize import ChunkSummary, DiversityGate, diversity_admit
from .textkit import (
    ContentExtractor,
    DEFAULT_EXTRACTOR,
    TermVector,
    build_idf,
    cosine_similarity,
    term_vector,
)

log = logging.getLogger(__name__)

BASELINE_METHODS = ("centroid", "lexrank", "q1", "q2", "q3")


class QueryVariant(Enum):
    COSINE_TFIDF = "q1"
    COSINE_TF = "q2"
    WORD_OVERLAP = "q3"


@dataclass(frozen=True)
class LexRankParams:
    damping: float = 0.85
    sim_threshold: float = 0.1
    tolerance: float = 1e-8
    max_iterations: int = 200

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise ValueError("damping must lie in (0, 1)")
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be positive")


def _tfidf_vectors(instances, extractor) -> list[TermVector]:
    docs = [extractor.content_words(i.text) for i in instances]
    idf = build_idf(docs)
    return [term_vector(doc, idf) for doc in docs]


def _rank(instances, scores) -> list[Instance]:
    order = sorted(range(len(instances)), key=lambda i: (-scores[i], instances[i].id))
    return [instances[i] for i in order]


def centroid_rank(
    instances: list[Instance], extractor: ContentExtractor | None = None
) -> list[Instance]:
    """Rank by cosine similarity to the mean TF-IDF vector."""
    if not instances:
        raise ValueError("need at least one instance")
    extractor = extractor or DEFAULT_EXTRACTOR
    vectors = _tfidf_vectors(instances, extractor)
    mean: dict[str, float] = {}
    for vec in vectors:
        for term, w in vec.weights.items():
            mean[term] = mean.get(term, 0.0) + w / len(vectors)
    centroid = TermVector(weights=mean, scheme="tfidf")
    if not centroid.weights:
        log.warning("all vectors empty; centroid ranking falls back to input order")
        return list(instances)
    scores = [cosine_similarity(v, centroid) for v in vectors]
    return _rank(instances, scores)


def lexrank_scores(
    instances: list[Instance],
    params: LexRankParams | None = None,
    extractor: ContentExtractor | None = None,
) -> np.ndarray:
    """Stationary scores of a damped random walk on the similarity graph.

    Edges connect pairs whose TF-IDF cosine reaches the threshold (no
    self-loops); rows are similarity-weighted and normalized, dangling rows
    jump uniformly. Scores sum to 1.
    """
    params = params or LexRankParams()
    extractor = extractor or DEFAULT_EXTRACTOR
    n = len(instances)
    if n == 0:
        raise ValueError("need at least one instance")
    vectors = _tfidf_vectors(instances, extractor)

    adjacency = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            sim = cosine_similarity(vectors[i], vectors[j])
            if sim >= params.sim_threshold:
                adjacency[i, j] = adjacency[j, i] = sim
    transition = np.full((n, n), 1.0 / n)
    row_sums = adjacency.sum(axis=1)
    linked = row_sums > 0.0
    transition[linked] = adjacency[linked] / row_sums[linked, None]

    scores = np.full(n, 1.0 / n)
    teleport = (1.0 - params.damping) / n
    for _ in range(params.max_iterations):
        updated = teleport + params.damping * (transition.T @ scores)
        if np.abs(updated - scores).sum() < params.tolerance:
            return updated
    log.warning("power iteration did not converge in %d steps", params.max_iterations)
    return updated


def lexrank_rank(
    instances: list[Instance],
    params: LexRankParams | None = None,
    extractor: ContentExtractor | None = None,
) -> list[Instance]:
    return _rank(instances, lexrank_scores(instances, params, extractor))


def query_rank(
    instances: list[Instance],
    query: set[str],
    variant: QueryVariant,
    extractor: ContentExtractor | None = None,
) -> list[Instance]:
    """Rank by similarity to the query term set.

    COSINE_TFIDF treats the query as a document over the collection's IDF
    table; COSINE_TF compares raw term-count vectors; WORD_OVERLAP counts
    distinct shared unigrams.
    """
    if not query:
        raise ValueError("query must be non-empty")
    extractor = extractor or DEFAULT_EXTRACTOR
    query_tokens = sorted(t.lower() for t in query)
    docs = [extractor.content_words(i.text) for i in instances]

    if variant is QueryVariant.COSINE_TFIDF:
        idf = build_idf(docs)
        qvec = term_vector(query_tokens, idf)
        scores = [cosine_similarity(term_vector(d, idf), qvec) for d in docs]
    elif variant is QueryVariant.COSINE_TF:
        qvec = term_vector(query_tokens)
        scores = [cosine_similarity(term_vector(d), qvec) for d in docs]
    else:
        qset = set(query_tokens)
        scores = [len(qset & set(d)) for d in docs]
    return _rank(instances, scores)


def baseline_summary(
    instances: list[Instance],
    method: str,
    k: int = 3,
    gate: DiversityGate | None = None,
    chunk_index: int = 0,
    query: set[str] | None = None,
    lexrank_params: LexRankParams | None = None,
    extractor: ContentExtractor | None = None,
) -> ChunkSummary:
    """Rank with the chosen baseline, then admit greedily through the gate."""
    if method not in BASELINE_METHODS:
        raise ValueError(f"unknown baseline method {method!r}")
    gate = gate or DiversityGate()
    if not instances:
        return ChunkSummary(chunk_index=chunk_index, entries=())
    if method == "centroid":
        ranked = centroid_rank(instances, extractor)
    elif method == "lexrank":
        ranked = lexrank_rank(instances, lexrank_params, extractor)
    else:
        if not query:
            raise ValueError("query-based baselines need a query term set")
        ranked = query_rank(instances, query, QueryVariant(method), extractor)
    admitted: list[Instance] = []
    for inst in ranked:
        if len(admitted) >= k:
            break
        if diversity_admit(inst, admitted, gate, extractor):
            admitted.append(inst)
    return ChunkSummary(chunk_index=chunk_index, entries=tuple(admitted))

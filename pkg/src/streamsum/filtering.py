"""The adaptive relevant-content filter.

A keyword rule bootstraps labels on the first chunk and trains the initial
classifier; every later chunk is scored by the previous ensemble, a small
representative training set is distilled from the scored chunk via the
companion/distant-word qualification criteria, and a chunk-local classifier
is blended back with the initial one:

    confidence(x) = (1 - alpha) * conf_initial(x) + alpha * conf_chunk(x)

The candidate selection ranks instances on three signals: classifier
confidence, keyword correlation (total topical-keyword frequency) and author
credibility (min-max normalized follower/following status within the chunk).
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .corpus import Chunk, Instance
from .errors import DegenerateBootstrap, SingleClassTraining
from .textkit import ContentExtractor, DEFAULT_EXTRACTOR, TokenList

log = logging.getLogger(__name__)

RELEVANT = "relevant"
IRRELEVANT = "irrelevant"


@dataclass(frozen=True)
class WeakSupervisionRule:
    """The user-supplied topical keyword set and its matching rule.

    Matching is case-insensitive whole-token matching; hashtag keywords
    ("#jan25") match the raw hashtag token, bare keywords match the
    '#'-stripped form as well.
    """

    keywords: frozenset[str]

    def __init__(self, keywords: Iterable[str]):
        cleaned = frozenset(k.strip().lower() for k in keywords if k.strip())
        if not cleaned:
            raise ValueError("keyword set must be non-empty")
        object.__setattr__(self, "keywords", cleaned)

    @classmethod
    def from_string(cls, spec: str) -> "WeakSupervisionRule":
        return cls(k for k in spec.split(","))

    def match_count(self, text: str, extractor: ContentExtractor | None = None) -> int:
        """Total frequency of topical keywords among the text's tokens."""
        tokens = (extractor or DEFAULT_EXTRACTOR).tokenize(text)
        return sum(1 for t in tokens if t in self.keywords)

    def matches(self, text: str, extractor: ContentExtractor | None = None) -> bool:
        return self.match_count(text, extractor) > 0


@dataclass(frozen=True)
class ScoredInstance:
    instance: Instance
    label: bool
    confidence: float
    correlation: int
    credibility: float

    @property
    def id(self) -> str:
        return self.instance.id


@dataclass(frozen=True)
class LabeledChunk:
    chunk_index: int
    key: str
    scored: tuple[ScoredInstance, ...]

    @property
    def positives(self) -> list[ScoredInstance]:
        return [s for s in self.scored if s.label]

    @property
    def negatives(self) -> list[ScoredInstance]:
        return [s for s in self.scored if not s.label]


def _credibilities(chunk: Chunk) -> list[float]:
    ratios = [inst.status_ratio for inst in chunk.instances]
    lo, hi = min(ratios), max(ratios)
    if hi == lo:
        return [0.5] * len(ratios)  # constant-status chunk carries no signal
    return [(r - lo) / (hi - lo) for r in ratios]


def rule_label_chunk(
    rule: WeakSupervisionRule,
    chunk: Chunk,
    extractor: ContentExtractor | None = None,
) -> LabeledChunk:
    """Label a chunk by the keyword rule alone (the static baseline filter).

    Rule decisions are treated as certain: confidence 1.0 / 0.0.
    """
    extractor = extractor or DEFAULT_EXTRACTOR
    creds = _credibilities(chunk)
    scored = []
    for inst, cred in zip(chunk.instances, creds):
        corr = rule.match_count(inst.text, extractor)
        scored.append(
            ScoredInstance(
                instance=inst,
                label=corr > 0,
                confidence=1.0 if corr > 0 else 0.0,
                correlation=corr,
                credibility=cred,
            )
        )
    return LabeledChunk(chunk_index=chunk.index, key=chunk.key, scored=tuple(scored))


def bootstrap_label(
    rule: WeakSupervisionRule,
    chunk: Chunk,
    extractor: ContentExtractor | None = None,
) -> LabeledChunk:
    """Rule-label the first chunk; both classes must be present to train."""
    labeled = rule_label_chunk(rule, chunk, extractor)
    if not labeled.positives or not labeled.negatives:
        raise DegenerateBootstrap(
            "weak supervision labeled the first chunk single-class "
            f"({len(labeled.positives)} positive / {len(labeled.negatives)} negative)"
        )
    return labeled


@dataclass(frozen=True)
class NBModel:
    """Multinomial Naive Bayes over content words with additive smoothing.

    ``log_likelihoods`` maps class -> term -> log P(term | class);
    ``log_oov`` is the smoothed log-mass for terms outside the vocabulary.
    An empty vocabulary degenerates to the priors.
    """

    class_log_priors: dict[str, float]
    log_likelihoods: dict[str, dict[str, float]]
    log_oov: dict[str, float]
    vocabulary: frozenset[str]
    smoothing: float

    def posterior_relevant(self, tokens: TokenList) -> float:
        joint = dict(self.class_log_priors)
        if self.vocabulary:
            for cls in joint:
                table = self.log_likelihoods[cls]
                oov = self.log_oov[cls]
                joint[cls] += sum(table.get(t, oov) for t in tokens)
        a, b = joint[RELEVANT], joint[IRRELEVANT]
        hi = max(a, b)
        za, zb = math.exp(a - hi), math.exp(b - hi)
        return za / (za + zb)


def _training_docs(
    examples, extractor: ContentExtractor
) -> tuple[list[TokenList], list[TokenList]]:
    # works for both LabeledChunk and RepresentativeSet
    pos_docs = [extractor.content_words(s.instance.text) for s in examples.positives]
    neg_docs = [extractor.content_words(s.instance.text) for s in examples.negatives]
    return pos_docs, neg_docs


def train_nb(examples, smoothing: float = 1.0, extractor: ContentExtractor | None = None) -> NBModel:
    """Train on a LabeledChunk or RepresentativeSet; needs both classes."""
    if smoothing <= 0:
        raise ValueError("smoothing must be positive")
    extractor = extractor or DEFAULT_EXTRACTOR
    pos_docs, neg_docs = _training_docs(examples, extractor)
    if not pos_docs or not neg_docs:
        raise SingleClassTraining("training requires at least one example of each class")

    counts = {RELEVANT: Counter(), IRRELEVANT: Counter()}
    for doc in pos_docs:
        counts[RELEVANT].update(doc)
    for doc in neg_docs:
        counts[IRRELEVANT].update(doc)
    vocab = frozenset(counts[RELEVANT]) | frozenset(counts[IRRELEVANT])

    total_docs = len(pos_docs) + len(neg_docs)
    priors = {
        RELEVANT: math.log(len(pos_docs) / total_docs),
        IRRELEVANT: math.log(len(neg_docs) / total_docs),
    }
    likelihoods: dict[str, dict[str, float]] = {}
    oov: dict[str, float] = {}
    for cls, counter in counts.items():
        n_tokens = sum(counter.values())
        denom = n_tokens + smoothing * len(vocab)
        if vocab:
            likelihoods[cls] = {
                t: math.log((counter.get(t, 0) + smoothing) / denom) for t in vocab
            }
            oov[cls] = math.log(smoothing / denom)
        else:
            likelihoods[cls] = {}
            oov[cls] = 0.0
    return NBModel(
        class_log_priors=priors,
        log_likelihoods=likelihoods,
        log_oov=oov,
        vocabulary=vocab,
        smoothing=smoothing,
    )


def nb_confidence(
    model: NBModel, instance: Instance, extractor: ContentExtractor | None = None
) -> float:
    extractor = extractor or DEFAULT_EXTRACTOR
    return model.posterior_relevant(extractor.content_words(instance.text))


def blend_confidence(alpha: float, conf_initial: float, conf_chunk: float) -> float:
    """Convex blend of the two base-classifier confidences."""
    return (1.0 - alpha) * conf_initial + alpha * conf_chunk


@dataclass(frozen=True)
class EnsembleScorer:
    """Blend of the initial classifier and the current chunk-local one.

    With no chunk-local classifier the scorer degenerates to the initial
    classifier regardless of alpha.
    """

    c0: NBModel
    cr: NBModel | None = None
    alpha: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")

    def confidence(self, tokens: TokenList) -> float:
        base = self.c0.posterior_relevant(tokens)
        if self.cr is None:
            return base
        return blend_confidence(self.alpha, base, self.cr.posterior_relevant(tokens))


def ensemble_confidence(
    scorer: EnsembleScorer, instance: Instance, extractor: ContentExtractor | None = None
) -> float:
    extractor = extractor or DEFAULT_EXTRACTOR
    return scorer.confidence(extractor.content_words(instance.text))


def score_chunk(
    scorer: EnsembleScorer,
    rule: WeakSupervisionRule,
    chunk: Chunk,
    relevance_threshold: float = 0.5,
    extractor: ContentExtractor | None = None,
) -> LabeledChunk:
    """Score every instance: blended confidence, thresholded label,
    keyword correlation and within-chunk credibility."""
    extractor = extractor or DEFAULT_EXTRACTOR
    creds = _credibilities(chunk)
    scored = []
    for inst, cred in zip(chunk.instances, creds):
        conf = scorer.confidence(extractor.content_words(inst.text))
        scored.append(
            ScoredInstance(
                instance=inst,
                label=conf >= relevance_threshold,
                confidence=conf,
                correlation=rule.match_count(inst.text, extractor),
                credibility=cred,
            )
        )
    return LabeledChunk(chunk_index=chunk.index, key=chunk.key, scored=tuple(scored))


@dataclass(frozen=True)
class SelectionParams:
    """Knobs of the representative-set selection.

    ``p``/``n`` may be fixed, or derived per chunk from the positive count
    via the two fractions (around 10% of instances as candidates, and 10%
    of those as representatives). ``m`` is the companion/distant word count.
    """

    p: int | None = None
    n: int | None = None
    m: int = 8
    alpha: float = 0.5
    relevance_threshold: float = 0.5
    candidate_fraction: float = 0.10
    representative_fraction: float = 0.10

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        for name in ("candidate_fraction", "representative_fraction"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise ValueError(f"{name} must lie in (0, 1]")
        if self.p is not None and self.p < 1:
            raise ValueError("p must be >= 1")
        if self.n is not None and self.n < 1:
            raise ValueError("n must be >= 1")

    def resolve(self, positive_count: int) -> tuple[int, int]:
        """Concrete (p, n) for a chunk with the given positive count."""
        p = self.p if self.p is not None else max(5, math.ceil(self.candidate_fraction * positive_count))
        n = self.n if self.n is not None else max(2, math.ceil(self.representative_fraction * p))
        n = max(1, min(n, p))  # keep p >= n >= 1
        return p, n


def _mean_confidence(scored: Sequence[ScoredInstance]) -> float:
    return sum(s.confidence for s in scored) / len(scored)


def _pos_sort(scored, primary):
    return sorted(scored, key=lambda s: (-primary(s), -s.confidence, -s.credibility, s.id))


def _neg_sort(scored, primary):
    return sorted(scored, key=lambda s: (primary(s), s.confidence, s.credibility, s.id))


def _pick_candidates(corr_sorted, cred_sorted, p):
    """Intersection of the two top-p lists, refilled from the head of the
    correlation-sorted list until p candidates (or the pool runs out)."""
    top_cred_ids = {s.id for s in cred_sorted[:p]}
    candidates = [s for s in corr_sorted[:p] if s.id in top_cred_ids]
    if len(candidates) < p:
        chosen = {s.id for s in candidates}
        for s in corr_sorted:
            if len(candidates) >= p:
                break
            if s.id not in chosen:
                candidates.append(s)
                chosen.add(s.id)
    return candidates


def _top_words(candidates, m, extractor) -> frozenset[str]:
    counts: Counter[str] = Counter()
    for s in candidates:
        counts.update(extractor.content_words(s.instance.text))
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))  # ties alphabetical
    return frozenset(term for term, _ in ranked[:m])


def _surviving_positives(L: LabeledChunk) -> list[ScoredInstance]:
    positives = L.positives
    avg = _mean_confidence(positives)
    survivors = [s for s in positives if s.confidence >= avg]
    if not survivors:
        log.warning("chunk %d: no positives at/above mean confidence; keeping all", L.chunk_index)
        survivors = list(positives)
    return survivors


def _surviving_negatives(L: LabeledChunk) -> list[ScoredInstance]:
    negatives = L.negatives
    avg = _mean_confidence(negatives)
    survivors = [s for s in negatives if s.confidence <= avg]
    if not survivors:
        log.warning("chunk %d: no negatives at/below mean confidence; keeping all", L.chunk_index)
        survivors = list(negatives)
    return survivors


def select_companion_words(
    L: LabeledChunk,
    params: SelectionParams,
    extractor: ContentExtractor | None = None,
) -> tuple[frozenset[str], list[ScoredInstance]]:
    """High-confidence positives are ranked by correlation and credibility;
    the top-p overlap (correlation-refilled) yields the candidate instances,
    whose m most frequent content words are the companion words."""
    extractor = extractor or DEFAULT_EXTRACTOR
    survivors = _surviving_positives(L)
    p, _ = params.resolve(len(L.positives))
    corr_sorted = _pos_sort(survivors, lambda s: s.correlation)
    cred_sorted = _pos_sort(survivors, lambda s: s.credibility)
    candidates = _pick_candidates(corr_sorted, cred_sorted, p)
    return _top_words(candidates, params.m, extractor), candidates


def select_distant_words(
    L: LabeledChunk,
    params: SelectionParams,
    extractor: ContentExtractor | None = None,
) -> tuple[frozenset[str], list[ScoredInstance]]:
    """Mirror image of companion selection over low-confidence negatives
    with ascending sorts."""
    extractor = extractor or DEFAULT_EXTRACTOR
    survivors = _surviving_negatives(L)
    p, _ = params.resolve(len(L.positives))
    corr_sorted = _neg_sort(survivors, lambda s: s.correlation)
    cred_sorted = _neg_sort(survivors, lambda s: s.credibility)
    candidates = _pick_candidates(corr_sorted, cred_sorted, p)
    return _top_words(candidates, params.m, extractor), candidates


def diversity_check(comp: frozenset[str], distant: frozenset[str]) -> bool:
    """True iff the two word sets overlap on strictly less than half of each."""
    if not comp or not distant:
        log.warning("diversity check with an empty word set; treating as failed")
        return False
    common = len(comp & distant)
    return common / len(comp) < 0.5 and common / len(distant) < 0.5


@dataclass(frozen=True)
class RepresentativeSet:
    """Per-chunk distilled training set.

    When built, ``companion_words`` includes the topical keywords (the union
    happens after the diversity check, which runs on the raw companion set).
    When the check fails, the failing word sets are kept for inspection and
    the instance lists are empty.
    """

    chunk_index: int
    companion_words: frozenset[str] = frozenset()
    distant_words: frozenset[str] = frozenset()
    positives: tuple[ScoredInstance, ...] = ()
    negatives: tuple[ScoredInstance, ...] = ()
    built: bool = False


def _word_frequency(s: ScoredInstance, words: frozenset[str], extractor) -> int:
    return sum(1 for w in extractor.content_words(s.instance.text) if w in words)


def build_representative(
    L: LabeledChunk,
    rule: WeakSupervisionRule,
    params: SelectionParams,
    extractor: ContentExtractor | None = None,
) -> RepresentativeSet:
    """Run the full qualification criteria on a scored chunk.

    On a diversity pass the companion words absorb the topical keywords and
    the top-n survivors of each class, ranked by total companion/distant
    word occurrences in their content words, become the representative set.
    """
    extractor = extractor or DEFAULT_EXTRACTOR
    if not L.positives or not L.negatives:
        log.warning("chunk %d: single-class labels, representative set skipped", L.chunk_index)
        return RepresentativeSet(chunk_index=L.chunk_index)

    comp, _ = select_companion_words(L, params, extractor)
    distant, _ = select_distant_words(L, params, extractor)
    if not diversity_check(comp, distant):
        return RepresentativeSet(
            chunk_index=L.chunk_index, companion_words=comp, distant_words=distant
        )

    comp_full = comp | rule.keywords
    _, n = params.resolve(len(L.positives))
    pos_ranked = sorted(
        _surviving_positives(L),
        key=lambda s: (-_word_frequency(s, comp_full, extractor), -s.confidence, -s.credibility, s.id),
    )
    neg_ranked = sorted(
        _surviving_negatives(L),
        key=lambda s: (-_word_frequency(s, distant, extractor), s.confidence, s.credibility, s.id),
    )
    return RepresentativeSet(
        chunk_index=L.chunk_index,
        companion_words=comp_full,
        distant_words=distant,
        positives=tuple(pos_ranked[:n]),
        negatives=tuple(neg_ranked[:n]),
        built=True,
    )


@dataclass(frozen=True)
class ChunkResult:
    """Everything the filter produced for one chunk."""

    chunk_index: int
    key: str
    provisional: LabeledChunk  # scored with the previous ensemble
    repset: RepresentativeSet
    scorer: EnsembleScorer  # the ensemble built for this chunk
    final: LabeledChunk  # re-scored with this chunk's ensemble


def run_filter(
    chunks: Sequence[Chunk],
    rule: WeakSupervisionRule,
    params: SelectionParams | None = None,
    smoothing: float = 1.0,
    extractor: ContentExtractor | None = None,
) -> list[ChunkResult]:
    """Run the online filter over an ordered chunk sequence.

    Chunk 0 bootstraps labels from the rule, trains the initial classifier,
    self-scores for selection, and builds its representative set. Every later
    chunk is scored by the previous ensemble, distilled, and re-scored by the
    ensemble built for it. When a chunk's representative set cannot be built
    (diversity failure or single-class), the previous chunk-local classifier
    is carried forward unchanged.
    """
    if not chunks:
        raise ValueError("need at least one chunk")
    params = params or SelectionParams()
    extractor = extractor or DEFAULT_EXTRACTOR

    bootstrap = bootstrap_label(rule, chunks[0], extractor)
    c0 = train_nb(bootstrap, smoothing, extractor)

    results: list[ChunkResult] = []
    cr: NBModel | None = None
    for chunk in chunks:
        prev_scorer = EnsembleScorer(c0=c0, cr=cr, alpha=params.alpha)
        provisional = score_chunk(prev_scorer, rule, chunk, params.relevance_threshold, extractor)
        repset = build_representative(provisional, rule, params, extractor)
        if repset.built:
            try:
                cr = train_nb(repset, smoothing, extractor)
            except SingleClassTraining:
                log.warning("chunk %d: representative set single-class, carrying forward", chunk.index)
                repset = replace(repset, built=False)
        scorer = EnsembleScorer(c0=c0, cr=cr, alpha=params.alpha)
        final = score_chunk(scorer, rule, chunk, params.relevance_threshold, extractor)
        results.append(
            ChunkResult(
                chunk_index=chunk.index,
                key=chunk.key,
                provisional=provisional,
                repset=repset,
                scorer=scorer,
                final=final,
            )
        )
    return results

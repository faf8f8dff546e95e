"""Independent reference implementations used to cross-check the library.

Everything here is deliberately written with different mechanics than the
production code: exponential enumeration instead of DP, probability space
instead of log space, explicit comparator sorts instead of tuple keys, and a
direct linear solve instead of power iteration.
"""

from __future__ import annotations

import functools
from collections import Counter

import numpy as np

from streamsum.textkit import ContentExtractor


# ---------------------------------------------------------------------------
# LCS

def is_subsequence(needle, haystack) -> bool:
    it = iter(haystack)
    return all(any(x == y for y in it) for x in needle)


def lcs_brute(a, b) -> int:
    """Exponential oracle: enumerate every subsequence of the shorter side."""
    short, long_ = (a, b) if len(a) <= len(b) else (b, a)
    best = 0
    for mask in range(1 << len(short)):
        length = bin(mask).count("1")
        if length <= best:
            continue
        sub = [short[i] for i in range(len(short)) if mask >> i & 1]
        if is_subsequence(sub, long_):
            best = length
    return best


def lcs_dp_full(a, b) -> int:
    """Independent DP with a full table and reversed iteration order."""
    table = np.zeros((len(a) + 1, len(b) + 1), dtype=int)
    for i in range(len(a) - 1, -1, -1):
        for j in range(len(b) - 1, -1, -1):
            if a[i] == b[j]:
                table[i, j] = table[i + 1, j + 1] + 1
            else:
                table[i, j] = max(table[i + 1, j], table[i, j + 1])
    return int(table[0, 0])


def rouge_l_oracle(candidate, reference):
    """(precision, recall, f1) from the independent DP."""
    if not candidate or not reference:
        return (0.0, 0.0, 0.0)
    lcs = lcs_dp_full(candidate, reference)
    p = lcs / len(candidate)
    r = lcs / len(reference)
    f1 = 0.0 if p + r == 0 else 2 * p * r / (p + r)
    return (p, r, f1)


# ---------------------------------------------------------------------------
# Naive Bayes in probability space

def nb_posterior_oracle(pos_docs, neg_docs, smoothing, doc) -> float:
    """P(relevant | doc) computed with plain products, no logarithms."""
    vocab = set()
    for d in pos_docs + neg_docs:
        vocab.update(d)
    pos_counts = Counter(t for d in pos_docs for t in d)
    neg_counts = Counter(t for d in neg_docs for t in d)
    total = len(pos_docs) + len(neg_docs)
    p_pos = len(pos_docs) / total
    p_neg = len(neg_docs) / total
    if vocab:
        pos_denom = sum(pos_counts.values()) + smoothing * len(vocab)
        neg_denom = sum(neg_counts.values()) + smoothing * len(vocab)
        for t in doc:
            p_pos *= (pos_counts.get(t, 0) + smoothing) / pos_denom
            p_neg *= (neg_counts.get(t, 0) + smoothing) / neg_denom
    return p_pos / (p_pos + p_neg)


# ---------------------------------------------------------------------------
# Qualification criteria, line by line

def _cmp_chain(x, y, keys):
    for value, descending in keys:
        a, b = value(x), value(y)
        if a != b:
            if descending:
                return -1 if a > b else 1
            return -1 if a < b else 1
    return 0


def _sort_with(items, keys):
    return sorted(items, key=functools.cmp_to_key(lambda x, y: _cmp_chain(x, y, keys)))


def _oracle_top_words(candidates, m, extractor):
    counts = Counter()
    for s in candidates:
        for w in extractor.content_words(s.instance.text):
            counts[w] += 1
    pairs = _sort_with(
        counts.items(), [(lambda kv: kv[1], True), (lambda kv: kv[0], False)]
    )
    return frozenset(kv[0] for kv in pairs[:m])


def _oracle_candidates(corr_sorted, cred_sorted, p):
    top_cred = [s.id for s in cred_sorted[:p]]
    picked = [s for s in corr_sorted[:p] if s.id in top_cred]
    for s in corr_sorted:
        if len(picked) >= p:
            break
        if all(s.id != q.id for q in picked):
            picked.append(s)
    return picked


def algorithm_oracle(labeled, keywords, p, m, n, extractor=None):
    """Literal walk of the qualification criteria over a scored chunk.

    Returns a dict with the companion/distant word sets, the ranked
    representative ids per class and the built flag; word sets are the
    post-union companion words when built, the raw failing sets otherwise.
    """
    extractor = extractor or ContentExtractor()
    positives = [s for s in labeled.scored if s.label]
    negatives = [s for s in labeled.scored if not s.label]
    if not positives or not negatives:
        return {
            "companion": frozenset(),
            "distant": frozenset(),
            "pos_ids": [],
            "neg_ids": [],
            "built": False,
        }

    # lines 1-2: mean-confidence filter on positives
    avg_pos = sum(s.confidence for s in positives) / len(positives)
    pos_kept = [s for s in positives if s.confidence >= avg_pos] or list(positives)
    # lines 3-5: descending sorts and top-p overlap with correlation refill
    pos_corr = _sort_with(
        pos_kept,
        [
            (lambda s: s.correlation, True),
            (lambda s: s.confidence, True),
            (lambda s: s.credibility, True),
            (lambda s: s.id, False),
        ],
    )
    pos_cred = _sort_with(
        pos_kept,
        [
            (lambda s: s.credibility, True),
            (lambda s: s.confidence, True),
            (lambda s: s.credibility, True),
            (lambda s: s.id, False),
        ],
    )
    pos_cands = _oracle_candidates(pos_corr, pos_cred, p)
    companion = _oracle_top_words(pos_cands, m, extractor)

    # lines 7-12: the mirrored negative side
    avg_neg = sum(s.confidence for s in negatives) / len(negatives)
    neg_kept = [s for s in negatives if s.confidence <= avg_neg] or list(negatives)
    neg_corr = _sort_with(
        neg_kept,
        [
            (lambda s: s.correlation, False),
            (lambda s: s.confidence, False),
            (lambda s: s.credibility, False),
            (lambda s: s.id, False),
        ],
    )
    neg_cred = _sort_with(
        neg_kept,
        [
            (lambda s: s.credibility, False),
            (lambda s: s.confidence, False),
            (lambda s: s.credibility, False),
            (lambda s: s.id, False),
        ],
    )
    neg_cands = _oracle_candidates(neg_corr, neg_cred, p)
    distant = _oracle_top_words(neg_cands, m, extractor)

    # lines 13-14: diversity check on the raw sets
    if not companion or not distant:
        built = False
    else:
        common = len(companion & distant)
        built = common / len(companion) < 0.5 and common / len(distant) < 0.5
    if not built:
        return {
            "companion": companion,
            "distant": distant,
            "pos_ids": [],
            "neg_ids": [],
            "built": False,
        }

    # lines 15-18: keyword union, then frequency-ranked representatives
    companion_full = companion | frozenset(keywords)

    def freq(s, words):
        return sum(1 for w in extractor.content_words(s.instance.text) if w in words)

    pos_ranked = _sort_with(
        pos_kept,
        [
            (lambda s: freq(s, companion_full), True),
            (lambda s: s.confidence, True),
            (lambda s: s.credibility, True),
            (lambda s: s.id, False),
        ],
    )
    neg_ranked = _sort_with(
        neg_kept,
        [
            (lambda s: freq(s, distant), True),
            (lambda s: s.confidence, False),
            (lambda s: s.credibility, False),
            (lambda s: s.id, False),
        ],
    )
    return {
        "companion": companion_full,
        "distant": distant,
        "pos_ids": [s.id for s in pos_ranked[:n]],
        "neg_ids": [s.id for s in neg_ranked[:n]],
        "built": True,
    }


# ---------------------------------------------------------------------------
# damped random walk, solved directly

def damped_walk_oracle(adjacency: np.ndarray, damping: float) -> np.ndarray:
    """Stationary distribution via a linear solve on the transition matrix."""
    n = adjacency.shape[0]
    transition = np.full((n, n), 1.0 / n)
    sums = adjacency.sum(axis=1)
    for i in range(n):
        if sums[i] > 0:
            transition[i] = adjacency[i] / sums[i]
    lhs = np.eye(n) - damping * transition.T
    rhs = np.full(n, (1.0 - damping) / n)
    return np.linalg.solve(lhs, rhs)


# ---------------------------------------------------------------------------
# greedy diversity gate

def gate_oracle(ranked_token_lists, theta, k):
    """Indices admitted by the greedy gate, checked with the oracle ROUGE."""
    admitted: list[int] = []
    for i, tokens in enumerate(ranked_token_lists):
        if len(admitted) >= k:
            break
        ok = True
        for j in admitted:
            p, r, f1 = rouge_l_oracle(tokens, ranked_token_lists[j])
            if p >= theta or r >= theta or f1 >= theta:
                ok = False
                break
        if ok:
            admitted.append(i)
    return admitted

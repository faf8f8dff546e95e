"""Text primitives: tokenization, term vectors, LCS and ROUGE-L.

Everything here is a pure function over immutable inputs; the only
stateful object is :class:`ContentExtractor`, whose state is a memo cache.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Iterable, Mapping

from .errors import SchemeMismatch

TokenList = list[str]

_URL_RE = re.compile(r"(?:https?://|www\.)\S+")
_MENTION_RE = re.compile(r"@\w+")
_TOKEN_RE = re.compile(r"#?\w+")


def load_stopwords(path=None) -> frozenset[str]:
    """Load a stopword set, one lowercase term per line ('#' comments allowed).

    Without a path, returns the bundled default list.
    """
    if path is None:
        text = resources.files("streamsum").joinpath("data/stopwords.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    terms = set()
    for line in text.splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            terms.add(line)
    return frozenset(terms)


class ContentExtractor:
    """Turns raw text into token lists.

    ``tokenize`` keeps every token (stopwords included) and is what
    keyword-rule matching runs on; ``content_words`` applies the stopword
    heuristic, or a pluggable ``tagger`` callable that replaces it entirely.
    Hashtag tokens are emitted twice: once with the '#' stripped (a normal
    term) and once in raw form, so both "moscow" and "#moscow" are matchable.
    """

    def __init__(
        self,
        stopwords: Iterable[str] | None = None,
        tagger: Callable[[str], TokenList] | None = None,
    ):
        self.stopwords = load_stopwords() if stopwords is None else frozenset(stopwords)
        self.tagger = tagger
        self._cache: dict[str, tuple[str, ...]] = {}

    def tokenize(self, text: str) -> TokenList:
        text = _URL_RE.sub(" ", text.lower())
        text = _MENTION_RE.sub(" ", text)
        tokens: TokenList = []
        for raw in _TOKEN_RE.findall(text):
            if raw.startswith("#"):
                base = raw.lstrip("#")
                if base:
                    tokens.append(base)
                    tokens.append("#" + base)
            else:
                tokens.append(raw)
        return tokens

    def content_words(self, text: str) -> TokenList:
        cached = self._cache.get(text)
        if cached is None:
            if self.tagger is not None:
                words = list(self.tagger(text))
            else:
                words = [t for t in self.tokenize(text) if t not in self.stopwords]
            cached = tuple(words)
            self._cache[text] = cached
        return list(cached)


DEFAULT_EXTRACTOR = ContentExtractor()


def extract_content_words(text: str, extractor: ContentExtractor | None = None) -> TokenList:
    """Lowercased content words of ``text``: URLs, @-mentions, punctuation and
    stopwords removed; hashtags kept in stripped and raw form."""
    return (extractor or DEFAULT_EXTRACTOR).content_words(text)


@dataclass(frozen=True)
class IdfTable:
    """Smoothed inverse document frequencies over a document collection."""

    doc_count: int
    doc_freq: Mapping[str, int] = field(default_factory=dict)

    def weight(self, term: str) -> float:
        # add-one smoothing keeps unseen terms finite and ubiquitous terms at 0
        return math.log((1 + self.doc_count) / (1 + self.doc_freq.get(term, 0)))


def build_idf(docs: Iterable[TokenList]) -> IdfTable:
    df: Counter[str] = Counter()
    n = 0
    for doc in docs:
        n += 1
        df.update(set(doc))
    return IdfTable(doc_count=n, doc_freq=dict(df))


@dataclass(frozen=True)
class TermVector:
    """Sparse term-weight vector; zero weights are never stored."""

    weights: Mapping[str, float]
    scheme: str  # "tf" or "tfidf"

    def norm(self) -> float:
        return math.sqrt(sum(w * w for w in self.weights.values()))


def term_vector(tokens: TokenList, idf: IdfTable | None = None) -> TermVector:
    """TF vector of ``tokens``, or TF-IDF when an ``idf`` table is given."""
    counts = Counter(tokens)
    if idf is None:
        return TermVector(weights=dict(counts), scheme="tf")
    weights = {}
    for term, tf in counts.items():
        w = tf * idf.weight(term)
        if w > 0.0:
            weights[term] = w
    return TermVector(weights=weights, scheme="tfidf")


def cosine_similarity(u: TermVector, v: TermVector) -> float:
    if u.scheme != v.scheme:
        raise SchemeMismatch(f"cannot compare {u.scheme} vector with {v.scheme} vector")
    if len(u.weights) > len(v.weights):
        u, v = v, u
    dot = sum(w * v.weights.get(t, 0.0) for t, w in u.weights.items())
    nu, nv = u.norm(), v.norm()
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return dot / (nu * nv)


def lcs_length(a: TokenList, b: TokenList) -> int:
    """Length of the longest common subsequence of two token sequences."""
    if not a or not b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for x in a:
        curr = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                curr.append(prev[j - 1] + 1)
            else:
                curr.append(max(prev[j], curr[j - 1]))
        prev = curr
    return prev[len(b)]


@dataclass(frozen=True)
class RougeL:
    precision: float
    recall: float
    f1: float

    def all_below(self, threshold: float) -> bool:
        return (
            self.precision < threshold
            and self.recall < threshold
            and self.f1 < threshold
        )


def rouge_l(candidate: TokenList, reference: TokenList) -> RougeL:
    """Token-level ROUGE-L: LCS-based precision, recall and harmonic-mean F1.

    All three statistics are 0 when either side is empty.
    """
    if not candidate or not reference:
        return RougeL(0.0, 0.0, 0.0)
    lcs = lcs_length(candidate, reference)
    p = lcs / len(candidate)
    r = lcs / len(reference)
    f1 = 0.0 if p + r == 0.0 else 2.0 * p * r / (p + r)
    return RougeL(p, r, f1)

#!/usr/bin/env python3
"""Walkthrough: the text primitives every other module builds on.

Run from the repository root:  python demos/02_text_primitives.py
"""

from streamsum import (
    build_idf,
    cosine_similarity,
    extract_content_words,
    lcs_length,
    rouge_l,
    term_vector,
)

print("=== content-word extraction ===")
tweet = "RT @bbc: Blast at #Moscow airport http://x.co — 31 dead"
print(f"raw : {tweet}")
print(f"kept: {extract_content_words(tweet)}")
print("mentions/URLs vanish, hashtags stay in both forms, stopwords drop\n")

print("=== term vectors and cosine similarity ===")
docs = [
    extract_content_words("tremor shakes the bay area"),
    extract_content_words("tremor felt across the bay"),
    extract_content_words("pizza night with friends"),
]
idf = build_idf(docs)
vectors = [term_vector(d, idf) for d in docs]
print(f"doc0 tf-idf weights: { {t: round(w, 3) for t, w in vectors[0].weights.items()} }")
print("('tremor' and 'bay' appear in 2 of 3 docs, so their idf is smaller)")
for i, j in [(0, 1), (0, 2)]:
    print(f"cosine(doc{i}, doc{j}) = {cosine_similarity(vectors[i], vectors[j]):.3f}")
print()

print("=== longest common subsequence, token-level ===")
a = "police officer killed".split()
b = "the police officer was killed".split()
print(f"a={a}\nb={b}\nlcs length = {lcs_length(a, b)}")
print()

print("=== ROUGE-L ===")
stats = rouge_l(a, b)
print(f"precision={stats.precision:.2f} recall={stats.recall:.2f} f1={stats.f1:.2f}")
print("precision is LCS/|candidate|, recall is LCS/|reference|")
print(f"all three below 0.4? {stats.all_below(0.4)}  (this pair would be gated)")

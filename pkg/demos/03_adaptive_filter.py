#!/usr/bin/env python3
"""Walkthrough: the adaptive relevant-content filter on a drifting stream.

The synthetic stream's relevant instances start out using three stable core
terms; from chunk 1 on, 70% of them drop the core vocabulary and speak only
in per-chunk subtopic terms. A static keyword match loses most of them; the
chunk-local companion-word mechanism keeps up.

Run from the repository root:  python demos/03_adaptive_filter.py
"""

from streamsum import (
    ChunkPolicy,
    SelectionParams,
    SynthConfig,
    WeakSupervisionRule,
    chunk_stream,
    filter_metrics,
    generate_synthetic_stream,
    rule_label_chunk,
    run_filter,
)

config = SynthConfig(seed=42, drift_rate=0.7)
instances, gold, manifest = generate_synthetic_stream(config)
chunks = chunk_stream(instances, ChunkPolicy(mode="date"))
rule = WeakSupervisionRule(config.core_terms)

print(f"stream: {len(instances)} instances in {len(chunks)} daily chunks")
print(f"weak supervision: {sorted(rule.keywords)}\n")

results = run_filter(chunks, rule, SelectionParams(alpha=0.8))

print("=== companion words per chunk (injected subtopics in CAPS) ===")
for r in results:
    injected = set(manifest["chunks"][r.chunk_index]["subtopic_terms"])
    if r.repset.built:
        words = sorted(r.repset.companion_words - rule.keywords)
        shown = ", ".join(w.upper() if w in injected else w for w in words)
        print(f"chunk {r.chunk_index}: {shown}")
    else:
        print(f"chunk {r.chunk_index}: (representative set skipped)")
print()

print("=== filtering quality per chunk: adaptive vs static keyword match ===")
print("chunk  adaptive-F1  static-F1")
for r in results:
    adaptive = filter_metrics([r.final], gold)
    static = filter_metrics([rule_label_chunk(rule, chunks[r.chunk_index])], gold)
    print(f"  {r.chunk_index}      {adaptive.f1:.3f}       {static.f1:.3f}")

late_adaptive = filter_metrics([r.final for r in results if r.chunk_index >= 5], gold)
late_static = filter_metrics(
    [rule_label_chunk(rule, c) for c in chunks if c.index >= 5], gold
)
print(f"\nmicro F1 over chunks 5-9: adaptive {late_adaptive.f1:.3f}, "
      f"static {late_static.f1:.3f}")
print("the static rule's recall collapses with drift; the ensemble keeps it")

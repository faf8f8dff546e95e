from __future__ import annotations

import json
import math

import pytest

from streamsum.corpus import parse_instance
from streamsum.evalkit import (
    SynthConfig,
    evaluate_summaries,
    filter_metrics,
    filter_metrics_from_labels,
    generate_synthetic_stream,
    summary_metrics,
)
from streamsum.filtering import LabeledChunk
from streamsum.summarize import ChunkSummary

from conftest import make_instance, make_scored


def labeled(pairs, index=0):
    scored = tuple(
        make_scored(iid, f"text {iid}", label, 1.0 if label else 0.0) for iid, label in pairs
    )
    return LabeledChunk(chunk_index=index, key=str(index), scored=scored)


class TestFilterMetrics:
    def test_perfect_predictions(self):
        chunk = labeled([("a", True), ("b", False)])
        gold = {"a": True, "b": False}
        m = filter_metrics([chunk], gold)
        assert (m.precision, m.recall, m.f1) == (1.0, 1.0, 1.0)

    def test_counting_example(self):
        chunk = labeled([("a", True), ("b", True), ("c", True), ("d", False)])
        gold = {"a": False, "b": True, "c": True, "d": True}
        m = filter_metrics([chunk], gold)
        assert m.precision == pytest.approx(2 / 3)
        assert m.recall == pytest.approx(2 / 3)
        assert m.f1 == pytest.approx(2 / 3)

    def test_no_predicted_positives(self):
        chunk = labeled([("a", False), ("b", False)])
        gold = {"a": True, "b": False}
        m = filter_metrics([chunk], gold)
        assert m.precision is None
        assert m.recall == 0.0
        assert m.f1 is None

    def test_chunk_without_gold_positives(self):
        chunks = [labeled([("a", True)], index=0), labeled([("b", True)], index=1)]
        gold = {"a": True, "b": False}
        m = filter_metrics(chunks, gold)
        assert m.per_chunk[1].recall is None  # no gold positives in chunk 1
        assert m.per_chunk[0].recall == 1.0
        assert m.recall == 1.0  # micro over both

    def test_instances_without_gold_excluded(self):
        chunk = labeled([("a", True), ("mystery", True)])
        m = filter_metrics([chunk], {"a": True})
        assert m.evaluated == 1
        assert m.precision == 1.0

    def test_symmetry_sanity(self):
        chunk = labeled([("a", True), ("b", False), ("c", True)])
        gold = {s.id: s.label for s in chunk.scored}
        m = filter_metrics([chunk], gold)
        assert (m.precision, m.recall, m.f1) == (1.0, 1.0, 1.0)

    def test_from_label_pairs(self):
        m = filter_metrics_from_labels(
            [(0, [("a", True), ("b", False)])], {"a": True, "b": True}
        )
        assert m.recall == 0.5
        assert m.per_chunk[0].tp == 1


class TestSummaryMetrics:
    def test_identical_to_reference(self):
        cand = ChunkSummary(0, (make_instance("a", "storm floods valley tonight"),))
        score = summary_metrics(cand, ["storm floods valley tonight"])
        assert (score.precision, score.recall, score.f1) == (1.0, 1.0, 1.0)

    def test_disjoint(self):
        cand = ChunkSummary(0, (make_instance("a", "storm floods valley"),))
        score = summary_metrics(cand, ["election results announced"])
        assert score.f1 == 0.0

    def test_max_f1_reference_selected(self):
        cand = ChunkSummary(0, (make_instance("a", "storm floods valley"),))
        refs = ["election results announced", "storm floods valley"]
        score = summary_metrics(cand, refs)
        assert score.f1 == 1.0

    def test_empty_candidate(self):
        score = summary_metrics(ChunkSummary(0, ()), ["anything"])
        assert (score.precision, score.recall, score.f1) == (0.0, 0.0, 0.0)

    def test_multiline_reference(self):
        cand = ChunkSummary(
            0,
            (
                make_instance("a", "storm floods valley"),
                make_instance("b", "rescue teams deployed"),
            ),
        )
        score = summary_metrics(cand, [["storm floods valley", "rescue teams deployed"]])
        assert score.f1 == pytest.approx(1.0)

    def test_monotone_in_overlap(self):
        ref = ["storm floods valley tonight again"]
        low = summary_metrics(["storm pizza night party chat"], ref)
        high = summary_metrics(["storm floods pizza night chat"], ref)
        assert high.f1 >= low.f1

    def test_evaluate_summaries_aggregation(self):
        chunk_texts = {
            "2021-06-01": ["storm floods valley"],
            "2021-06-02": ["rescue teams deployed"],
            "2021-06-03": ["no gold for this chunk"],
        }
        gold = {
            "2021-06-01": ["storm floods valley"],
            "2021-06-02": ["election results announced"],
            "sequential": [["storm floods valley", "rescue teams deployed"]],
        }
        metrics = evaluate_summaries(
            chunk_texts, ["storm floods valley", "rescue teams deployed"], gold
        )
        assert set(metrics.chunk_scores) == {"2021-06-01", "2021-06-02"}
        assert metrics.chunk_average.f1 == pytest.approx(
            (metrics.chunk_scores["2021-06-01"].f1 + metrics.chunk_scores["2021-06-02"].f1) / 2
        )
        assert metrics.sequential.f1 == pytest.approx(1.0)
        assert metrics.reference_rule == "max_f1"
        payload = metrics.to_dict()
        assert json.dumps(payload, sort_keys=True)  # serializable

    def test_no_sequential_gold(self):
        metrics = evaluate_summaries({"k": ["a b"]}, ["a b"], {"k": ["a b"]})
        assert metrics.sequential is None


SMALL = SynthConfig(seed=42, chunks=4, instances_per_chunk=150)


class TestSyntheticStream:
    def test_determinism(self):
        a = generate_synthetic_stream(SMALL)
        b = generate_synthetic_stream(SMALL)
        assert [i.text for i in a[0]] == [i.text for i in b[0]]
        assert a[1] == b[1]
        assert a[2] == b[2]

    def test_shapes(self):
        instances, gold, manifest = generate_synthetic_stream(SMALL)
        assert len(instances) == 4 * 150
        assert len(gold) == len(instances)
        assert len(manifest["chunks"]) == 4
        assert manifest["seed"] == 42

    def test_drift_rate_zero_keeps_core(self):
        config = SynthConfig(seed=1, chunks=3, instances_per_chunk=100, drift_rate=0.0)
        instances, gold, _ = generate_synthetic_stream(config)
        core = set(config.core_terms)
        for inst in instances:
            if gold[inst.id]:
                assert core & set(inst.text.split())

    def test_chunk0_always_has_core(self):
        config = SynthConfig(seed=3, chunks=2, instances_per_chunk=80, drift_rate=1.0)
        instances, gold, manifest = generate_synthetic_stream(config)
        day0 = manifest["chunks"][0]["date"]
        for inst in instances:
            if gold[inst.id] and inst.timestamp.date().isoformat() == day0:
                assert set(config.core_terms) & set(inst.text.split())

    def test_drift_fraction_binomial(self):
        # chunk-5 relevant texts drop core terms in ~drift_rate fraction (3 sigma)
        config = SynthConfig()  # defaults: 10 chunks x 1000, drift 0.5
        instances, gold, manifest = generate_synthetic_stream(config)
        day5 = manifest["chunks"][5]["date"]
        core = set(config.core_terms)
        relevant = [
            i for i in instances if gold[i.id] and i.timestamp.date().isoformat() == day5
        ]
        drifted = sum(1 for i in relevant if not core & set(i.text.split()))
        n, p = len(relevant), config.drift_rate
        assert abs(drifted - n * p) <= 3 * math.sqrt(n * p * (1 - p))

    def test_subtopics_injected(self):
        instances, gold, manifest = generate_synthetic_stream(SMALL)
        for meta in manifest["chunks"]:
            subs = set(meta["subtopic_terms"])
            day = meta["date"]
            relevant = [
                i for i in instances if gold[i.id] and i.timestamp.date().isoformat() == day
            ]
            assert all(subs & set(i.text.split()) for i in relevant)

    def test_status_skew(self):
        instances, gold, _ = generate_synthetic_stream(SMALL)
        rel = [i.status_ratio for i in instances if gold[i.id]]
        irr = [i.status_ratio for i in instances if not gold[i.id]]
        assert sum(rel) / len(rel) > sum(irr) / len(irr)

    def test_round_trips_through_parser(self):
        instances, _, _ = generate_synthetic_stream(SMALL)
        for inst in instances[:25]:
            row = {
                "id": inst.id,
                "ts": inst.timestamp.isoformat().replace("+00:00", "Z"),
                "text": inst.text,
                "followers": inst.followers,
                "followings": inst.followings,
                "gold": inst.gold_label,
            }
            parsed = parse_instance(json.dumps(row))
            assert parsed == inst

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SynthConfig(relevant_fraction=1.5)
        with pytest.raises(ValueError):
            SynthConfig(chunks=0)
        with pytest.raises(ValueError):
            SynthConfig(core_terms=())

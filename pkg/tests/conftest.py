from __future__ import annotations

from datetime import datetime, timezone

import pytest

from streamsum.corpus import Chunk, Instance
from streamsum.filtering import LabeledChunk, ScoredInstance

BASE_TS = datetime(2021, 6, 1, 12, 0, 0, tzinfo=timezone.utc)


def make_instance(iid, text, ts=None, followers=10, followings=5, gold=None):
    return Instance(
        id=iid,
        timestamp=ts or BASE_TS,
        text=text,
        followers=followers,
        followings=followings,
        gold_label=gold,
    )


def make_scored(iid, text, label, confidence, correlation=0, credibility=0.5):
    return ScoredInstance(
        instance=make_instance(iid, text),
        label=label,
        confidence=confidence,
        correlation=correlation,
        credibility=credibility,
    )


def make_chunk(texts, index=0, key="2021-06-01", prefix="i"):
    instances = tuple(
        make_instance(f"{prefix}{n}", text) for n, text in enumerate(texts)
    )
    return Chunk(index=index, key=key, instances=instances)


@pytest.fixture
def repset_small() -> LabeledChunk:
    """Hand-built 12-instance scored chunk exercising every selection step.

    Positive mean confidence is 4.7/7; a6/a7 fall below it (a7 despite the
    highest correlation). Negative mean is 0.176; b4 exceeds it. With p=3,
    m=3, n=2 the candidate intersections are full, so no refill happens.
    """
    scored = (
        make_scored("a1", "fire crews battle warehouse fire downtown", True, 0.95, 3, 0.90),
        make_scored("a2", "warehouse fire spreads smoke across downtown", True, 0.90, 2, 0.70),
        make_scored("a3", "huge smoke plume from the warehouse fire", True, 0.85, 2, 0.95),
        make_scored("a4", "crews contain fire near the docks", True, 0.80, 1, 0.60),
        make_scored("a5", "fire alarm at the old warehouse", True, 0.70, 1, 0.50),
        make_scored("a6", "smoke somewhere maybe", True, 0.30, 0, 0.80),
        make_scored("a7", "fire fire fire fire", True, 0.20, 4, 0.99),
        make_scored("b1", "cat video compilation lol", False, 0.05, 0, 0.10),
        make_scored("b2", "new cat video drops today", False, 0.10, 0, 0.20),
        make_scored("b3", "pizza night with friends", False, 0.15, 0, 0.30),
        make_scored("b4", "fire sale on pizza today", False, 0.50, 1, 0.40),
        make_scored("b5", "video games all night", False, 0.08, 0, 0.05),
    )
    return LabeledChunk(chunk_index=0, key="2021-06-01", scored=scored)

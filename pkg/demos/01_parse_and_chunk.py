#!/usr/bin/env python3
"""Walkthrough: ingesting a JSONL stream and cutting it into chunks.

Run from the repository root:  python demos/01_parse_and_chunk.py
"""

import io
from datetime import date

from streamsum import ChunkPolicy, chunk_stream, parse_instance, read_stream

RAW_LINES = """\
{"id": "t1", "ts": "2021-06-01T08:00:00Z", "text": "tremor felt across the bay", "followers": 320, "followings": 80}
{"id": "t2", "ts": "2021-06-01T09:30:00Z", "text": "epicenter located offshore", "followers": 2100, "followings": 150}
{"id": "t3", "ts": "2021-06-01T21:10:00Z", "text": "pizza night with friends", "followers": 45, "followings": 600}
{"id": "t4", "ts": "2021-06-02T07:45:00Z", "text": "aftershock rattles the coast", "followers": 900, "followings": 40}
{"id": "t5", "ts": "2021-06-02T08:00:00+02:00", "text": "bridge inspection after the tremor", "followers": 1500, "followings": 95}
{"id": "t6", "ts": "2021-06-03T12:00:00Z", "text": "cat video compilation", "followers": 12, "followings": 210}
"""

print("=== one record, parsed ===")
inst = parse_instance(RAW_LINES.splitlines()[4])
print(f"id={inst.id}  utc={inst.timestamp.isoformat()}  status_ratio={inst.status_ratio:.2f}")
print("note: the +02:00 offset was normalized to UTC\n")

print("=== lenient reading skips bad lines ===")
noisy = RAW_LINES + "this is not json\n"
instances = read_stream(io.StringIO(noisy))
print(f"kept {len(instances)} of 7 lines (the junk line was logged and skipped)\n")

print("=== chunking by UTC calendar date ===")
for chunk in chunk_stream(instances, ChunkPolicy(mode="date")):
    texts = ", ".join(i.id for i in chunk.instances)
    print(f"chunk {chunk.index}  key={chunk.key}  [{texts}]")
print()

print("=== chunking by count, blocks of 4 ===")
for chunk in chunk_stream(instances, ChunkPolicy(mode="count", n=4)):
    print(f"chunk {chunk.index}  key={chunk.key}  size={len(chunk)}")
print()

print("=== discarding everything before an emergence point ===")
late = chunk_stream(instances, ChunkPolicy(mode="date", start=date(2021, 6, 2)))
print(f"start=2021-06-02 keeps {sum(len(c) for c in late)} instances "
      f"in {len(late)} chunks (keys: {[c.key for c in late]})")

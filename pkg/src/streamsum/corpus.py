"""Stream ingestion: JSON-lines parsing, validation and chunking.

Input records are one JSON object per line with required keys ``id``,
``ts`` (ISO-8601), ``text``, ``followers``, ``followings`` and an optional
boolean ``gold``. Timestamps are normalized to UTC; naive timestamps are
assumed to already be UTC.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Iterable, Iterator, TextIO

from .errors import (
    DuplicateId,
    EmptyStream,
    InvalidCount,
    InvalidField,
    InvalidTimestamp,
    MalformedRecord,
    MissingField,
)

log = logging.getLogger(__name__)

_REQUIRED = ("id", "ts", "text", "followers", "followings")


@dataclass(frozen=True)
class Instance:
    """One stream item."""

    id: str
    timestamp: datetime
    text: str
    followers: int
    followings: int
    gold_label: bool | None = None

    def __post_init__(self):
        if not self.id:
            raise InvalidField("id must be a non-empty string")
        if not self.text.strip():
            raise InvalidField("text must be non-empty after trimming")
        if self.followers < 0 or self.followings < 0:
            raise InvalidCount("followers/followings must be >= 0")

    @property
    def status_ratio(self) -> float:
        """Raw author-status ratio; +1 in the denominator avoids division by zero."""
        return self.followers / (self.followings + 1)


@dataclass(frozen=True)
class Chunk:
    """A contiguous slice of the stream sharing one chunk key."""

    index: int
    key: str
    instances: tuple[Instance, ...]

    def __len__(self) -> int:
        return len(self.instances)


@dataclass(frozen=True)
class ChunkPolicy:
    """How the stream is cut into chunks.

    mode "date" groups by UTC calendar date; mode "count" emits consecutive
    blocks of ``n`` instances (the last block may be short). Instances before
    ``start`` are discarded.
    """

    mode: str = "date"
    n: int | None = None
    start: datetime | date | None = None

    def __post_init__(self):
        if self.mode not in ("date", "count"):
            raise ValueError(f"unknown chunk mode {self.mode!r}")
        if self.mode == "count" and (self.n is None or self.n < 1):
            raise ValueError("count mode needs n >= 1")

    @classmethod
    def from_string(cls, spec: str, start: datetime | date | None = None) -> "ChunkPolicy":
        """Parse "date" or "count:N"."""
        if spec == "date":
            return cls(mode="date", start=start)
        if spec.startswith("count:"):
            return cls(mode="count", n=int(spec.split(":", 1)[1]), start=start)
        raise ValueError(f"unknown chunk policy {spec!r}")


def _parse_timestamp(value, line_no=None) -> datetime:
    if not isinstance(value, str):
        raise InvalidTimestamp(f"ts must be a string, got {type(value).__name__}", line_no)
    text = value.strip()
    if text.endswith(("Z", "z")):  # fromisoformat grows Z support only in 3.11
        text = text[:-1] + "+00:00"
    try:
        ts = datetime.fromisoformat(text)
    except ValueError as exc:
        raise InvalidTimestamp(f"unparseable timestamp {value!r}", line_no) from exc
    if ts.tzinfo is None:
        return ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def _require_count(record: dict, key: str, line_no=None) -> int:
    value = record[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidCount(f"{key} must be an integer, got {value!r}", line_no)
    if value < 0:
        raise InvalidCount(f"{key} must be >= 0, got {value}", line_no)
    return value


def parse_instance(record: str, line_no: int | None = None) -> Instance:
    """Parse one JSON line into an Instance.

    Raises a ParseError subclass naming the problem and the line number.
    """
    try:
        obj = json.loads(record)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"invalid JSON: {exc.msg}", line_no) from exc
    if not isinstance(obj, dict):
        raise MalformedRecord("record must be a JSON object", line_no)
    for key in _REQUIRED:
        if key not in obj:
            raise MissingField(key, line_no)
    if not isinstance(obj["id"], str) or not obj["id"]:
        raise InvalidField("id must be a non-empty string", line_no)
    if not isinstance(obj["text"], str) or not obj["text"].strip():
        raise InvalidField("text must be a non-empty string", line_no)
    gold = obj.get("gold")
    if gold is not None and not isinstance(gold, bool):
        raise InvalidField(f"gold must be a boolean, got {gold!r}", line_no)
    return Instance(
        id=obj["id"],
        timestamp=_parse_timestamp(obj["ts"], line_no),
        text=obj["text"],
        followers=_require_count(obj, "followers", line_no),
        followings=_require_count(obj, "followings", line_no),
        gold_label=gold,
    )


def read_stream(
    source: str | Path | TextIO,
    strict: bool = False,
    dup_policy: str = "abort",
) -> list[Instance]:
    """Read a JSONL stream from a path or open file.

    Malformed lines abort when ``strict`` is true, otherwise they are skipped
    with a logged warning. Duplicate ids abort unless ``dup_policy`` is
    "keep-first".
    """
    if dup_policy not in ("abort", "keep-first"):
        raise ValueError(f"unknown dup_policy {dup_policy!r}")
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            return read_stream(fh, strict=strict, dup_policy=dup_policy)
    instances: list[Instance] = []
    seen: set[str] = set()
    for line_no, line in enumerate(source, start=1):
        if not line.strip():
            continue
        try:
            inst = parse_instance(line, line_no)
        except Exception as exc:
            if strict:
                raise
            log.warning("skipping unparseable record: %s", exc)
            continue
        if inst.id in seen:
            if dup_policy == "abort":
                raise DuplicateId(f"duplicate instance id {inst.id!r} at line {line_no}")
            log.warning("dropping duplicate id %r at line %d (keep-first)", inst.id, line_no)
            continue
        seen.add(inst.id)
        instances.append(inst)
    return instances


def _start_cutoff(start: datetime | date | None) -> datetime | None:
    if start is None:
        return None
    if isinstance(start, datetime):
        return start if start.tzinfo else start.replace(tzinfo=timezone.utc)
    return datetime(start.year, start.month, start.day, tzinfo=timezone.utc)


def chunk_stream(instances: Iterable[Instance], policy: ChunkPolicy) -> list[Chunk]:
    """Split the stream into ordered chunks per ``policy``.

    Sorts defensively (stable, by timestamp) so ties keep input order;
    raises EmptyStream when nothing survives the start filter.
    """
    ordered = sorted(instances, key=lambda i: i.timestamp)
    cutoff = _start_cutoff(policy.start)
    if cutoff is not None:
        ordered = [i for i in ordered if i.timestamp >= cutoff]
    if not ordered:
        raise EmptyStream("no instances at or after the configured start point")

    chunks: list[Chunk] = []
    if policy.mode == "date":
        group: list[Instance] = []
        current: date | None = None
        for inst in ordered:
            day = inst.timestamp.date()
            if current is None or day == current:
                current = day
                group.append(inst)
            else:
                chunks.append(Chunk(len(chunks), current.isoformat(), tuple(group)))
                current, group = day, [inst]
        chunks.append(Chunk(len(chunks), current.isoformat(), tuple(group)))
    else:
        n = policy.n or 1
        for offset in range(0, len(ordered), n):
            block = ordered[offset : offset + n]
            chunks.append(Chunk(len(chunks), f"{len(chunks):05d}", tuple(block)))
    return chunks


def iter_instances(chunks: Iterable[Chunk]) -> Iterator[Instance]:
    for chunk in chunks:
        yield from chunk.instances

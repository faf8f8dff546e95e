"""Run configuration: shipped defaults, config-file parsing and merging.

Precedence is CLI flags > config file > built-in defaults. The config file
is a flat UTF-8 ``key = value`` format; '#' starts a comment. Recognized
keys are the names in DEFAULTS plus the path/identity keys listed in
FILE_KEYS.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

# Shipped defaults. The alpha presets are the two reported blend settings:
# "steady" favors the initial event theme, "evolving" favors the chunk-local
# subtopic classifier.
DEFAULTS: dict[str, Any] = {
    "alpha": 0.5,
    "theta": 0.4,
    "k": 3,
    "candidate_fraction": 0.10,
    "representative_fraction": 0.10,
    "m": 8,
    "relevance_threshold": 0.5,
    "smoothing": 1.0,
    "chunk_by": "date",
    "method": "ws2fs",
    "baseline_pool": "matched",
    "lexrank_damping": 0.85,
    "lexrank_threshold": 0.1,
    "lexrank_tolerance": 1e-8,
    "lexrank_max_iterations": 200,
}

ALPHA_PRESETS: dict[str, float] = {"steady": 0.5, "evolving": 0.8}

_FLOAT_KEYS = {
    "alpha",
    "theta",
    "candidate_fraction",
    "representative_fraction",
    "relevance_threshold",
    "smoothing",
    "lexrank_damping",
    "lexrank_threshold",
    "lexrank_tolerance",
}
_INT_KEYS = {"k", "m", "lexrank_max_iterations", "p", "n"}
_BOOL_KEYS = {"strict_parse"}
FILE_KEYS = (
    set(DEFAULTS)
    | _BOOL_KEYS
    | {"input", "out", "keywords", "start", "stopwords", "gold", "gold_summaries", "p", "n"}
)


class ConfigError(ValueError):
    pass


def parse_config_file(path: str) -> dict[str, Any]:
    values: dict[str, Any] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{line_no}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in FILE_KEYS:
                raise ConfigError(f"{path}:{line_no}: unknown key {key!r}")
            values[key] = _coerce(key, value, f"{path}:{line_no}")
    return values


def _coerce(key: str, value: str, where: str) -> Any:
    try:
        if key in _FLOAT_KEYS:
            return float(value)
        if key in _INT_KEYS:
            return int(value)
        if key in _BOOL_KEYS:
            lowered = value.lower()
            if lowered in ("true", "yes", "1", "on"):
                return True
            if lowered in ("false", "no", "0", "off"):
                return False
            raise ValueError(value)
    except ValueError as exc:
        raise ConfigError(f"{where}: bad value for {key}: {value!r}") from exc
    return value


@dataclass
class RunConfig:
    """Fully resolved configuration of one pipeline run."""

    input: str
    out: str
    keywords: str
    method: str = DEFAULTS["method"]
    alpha: float = DEFAULTS["alpha"]
    theta: float = DEFAULTS["theta"]
    k: int = DEFAULTS["k"]
    chunk_by: str = DEFAULTS["chunk_by"]
    start: str | None = None
    candidate_fraction: float = DEFAULTS["candidate_fraction"]
    representative_fraction: float = DEFAULTS["representative_fraction"]
    m: int = DEFAULTS["m"]
    p: int | None = None
    n: int | None = None
    relevance_threshold: float = DEFAULTS["relevance_threshold"]
    smoothing: float = DEFAULTS["smoothing"]
    stopwords: str | None = None
    gold: str | None = None
    gold_summaries: str | None = None
    baseline_pool: str = DEFAULTS["baseline_pool"]
    strict_parse: bool = False
    lexrank_damping: float = DEFAULTS["lexrank_damping"]
    lexrank_threshold: float = DEFAULTS["lexrank_threshold"]
    lexrank_tolerance: float = DEFAULTS["lexrank_tolerance"]
    lexrank_max_iterations: int = DEFAULTS["lexrank_max_iterations"]
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.method not in ("ws2fs", "centroid", "lexrank", "q1", "q2", "q3"):
            raise ConfigError(f"unknown method {self.method!r}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError("alpha must lie in [0, 1]")
        if not 0.0 < self.theta <= 1.0:
            raise ConfigError("theta must lie in (0, 1]")
        if self.k < 1:
            raise ConfigError("k must be >= 1")
        for name in ("candidate_fraction", "representative_fraction"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise ConfigError(f"{name} must lie in (0, 1]")
        if self.m < 1:
            raise ConfigError("m must be >= 1")
        if self.baseline_pool not in ("matched", "all"):
            raise ConfigError(f"baseline_pool must be 'matched' or 'all'")
        if not self.keywords or not self.keywords.strip(","):
            raise ConfigError("keywords must be non-empty")

    def echo(self) -> dict[str, Any]:
        """Stable, manifest-friendly view of the configuration.

        The output directory is the caller's choice, not run configuration,
        and keeping it out lets identical runs produce identical manifests.
        """
        return {
            key: getattr(self, key)
            for key in sorted(self.__dataclass_fields__)
            if key not in ("extra", "out")
        }


def merge_config(cli_values: dict[str, Any], file_values: dict[str, Any]) -> dict[str, Any]:
    """CLI beats file beats defaults; None CLI values mean 'not given'."""
    merged: dict[str, Any] = {}
    merged.update(file_values)
    for key, value in cli_values.items():
        if value is not None:
            merged[key] = value
    return merged

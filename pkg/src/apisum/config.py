"""Pipeline configuration: one flat document driving every stage.

Accepted file forms: ``key=value`` lines (``#`` comments) or a JSON object
with the same keys.  Flag values given on the command line override file
values; file values override built-in defaults.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, fields
from datetime import datetime, timezone
from pathlib import Path

from .errors import ConfigError

_BOOL_WORDS = {
    "true": True, "1": True, "yes": True, "on": True,
    "false": False, "0": False, "no": False, "off": False,
}


@dataclass
class PipelineConfig:
    # ingest
    source: str = "jsonl"            # dump | jsonl | remote
    input: str | None = None
    endpoint: str | None = None
    tag: str = "android"
    date_from: str = "2009-01-01"
    date_to: str = "2020-04-30"
    lenient: bool = False
    store: str | None = None         # defaults to <out_dir>/store.jsonl
    # api extraction
    top_k: int = 15
    denylist: str | None = None      # None -> bundled file
    qualmap: str | None = None
    inline_length_cap: int = 120
    count_blocks: bool = False
    # corpus
    score_threshold: str = "3"       # integer literal or "auto"
    include_titles: bool = True
    titles_scope: str = "question-mention"
    # preprocessing
    stopwords: str | None = None
    lemma_exceptions: str | None = None
    lowercase: bool = True
    # vectorization
    vectorizer: str = "tfidf"        # embeddings | tfidf
    embeddings: str | None = None
    # ranking
    damping: float = 0.85
    tolerance: float = 1e-6
    max_iterations: int = 100
    top_n: int = 3
    order_mode: str = "by_rank"
    # output
    out_dir: str = "out"


_FIELD_TYPES = {f.name: f.type for f in fields(PipelineConfig)}


def _coerce(key: str, value):
    kind = _FIELD_TYPES[key]
    if isinstance(value, str):
        value = value.strip()
    if kind == "bool":
        if isinstance(value, bool):
            return value
        word = str(value).lower()
        if word not in _BOOL_WORDS:
            raise ConfigError(f"{key}: expected a boolean, got {value!r}")
        return _BOOL_WORDS[word]
    if kind == "int":
        try:
            return int(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{key}: expected an integer, got {value!r}") from exc
    if kind == "float":
        try:
            return float(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{key}: expected a number, got {value!r}") from exc
    if value in (None, ""):
        return None
    return str(value)


def load_config_file(path) -> dict:
    """Parse a config document into a key -> coerced-value dict."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc

    raw: dict = {}
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"{path}: top-level JSON value must be an object")
    else:
        for line_no, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{line_no}: expected key=value")
            raw[key.strip()] = value.strip()

    unknown = set(raw) - set(_FIELD_TYPES)
    if unknown:
        raise ConfigError(f"{path}: unknown keys: {', '.join(sorted(unknown))}")
    return {k: _coerce(k, v) for k, v in raw.items()}


def merge_config(file_values: dict, overrides: dict) -> PipelineConfig:
    """defaults < file values < explicitly passed flags."""
    merged = dict(file_values)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    cfg = PipelineConfig(**merged)
    validate(cfg)
    return cfg


def parse_date(value: str) -> datetime:
    try:
        dt = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError as exc:
        raise ConfigError(f"bad date {value!r}: {exc}") from exc
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def parse_threshold(value: str | int):
    if value == "auto":
        return "auto"
    try:
        parsed = int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(
            f"score_threshold must be an integer or 'auto', got {value!r}"
        ) from exc
    if parsed < 0:
        raise ConfigError("score_threshold must be >= 0")
    return parsed


def validate(cfg: PipelineConfig) -> None:
    if cfg.source not in ("dump", "jsonl", "remote"):
        raise ConfigError(f"unknown source {cfg.source!r}")
    if cfg.source == "remote":
        if not cfg.endpoint:
            raise ConfigError("source=remote needs an endpoint")
    elif not cfg.input:
        raise ConfigError(f"source={cfg.source} needs an input path")
    if cfg.vectorizer not in ("embeddings", "tfidf"):
        raise ConfigError(f"unknown vectorizer {cfg.vectorizer!r}")
    if cfg.vectorizer == "embeddings" and not cfg.embeddings:
        raise ConfigError("vectorizer=embeddings needs an embeddings path")
    if cfg.top_k < 1:
        raise ConfigError("top_k must be >= 1")
    if cfg.top_n < 1:
        raise ConfigError("top_n must be >= 1")
    if not 0.0 < cfg.damping < 1.0:
        raise ConfigError("damping must lie in (0, 1)")
    if cfg.order_mode not in ("by_rank", "by_position"):
        raise ConfigError(f"unknown order_mode {cfg.order_mode!r}")
    if cfg.titles_scope not in ("question-mention", "thread"):
        raise ConfigError(f"unknown titles_scope {cfg.titles_scope!r}")
    parse_threshold(cfg.score_threshold)
    parse_date(cfg.date_from)
    parse_date(cfg.date_to)
    # referenced files must exist before any stage starts
    for name in ("input", "denylist", "qualmap", "stopwords",
                 "lemma_exceptions", "embeddings"):
        value = getattr(cfg, name)
        if value and not Path(value).exists():
            raise ConfigError(f"{name} path does not exist: {value}")


def config_hash(cfg: PipelineConfig) -> str:
    payload = json.dumps(cfg.__dict__, sort_keys=True).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()

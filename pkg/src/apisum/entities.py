"""Extract code entities from post bodies and rank validated API methods.

Inline code spans are candidate method mentions; multi-line or ``<pre>``
blocks are usage samples and excluded from counting by default.  Validation
uses the identifier charset (letters, digits, underscore, dots, parentheses),
a whole-string file-name pattern, and an editable denylist standing in for
manual review of class names and deprecated methods.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import htmltext
from .errors import UnbalancedParens
from .ingest import Dataset

METHOD = "method"
FILE = "file"
REJECTED = "rejected"

INLINE = "inline"
BLOCK = "block"

_CHARSET_RE = re.compile(r"^[A-Za-z0-9_().]+$")
# equivalent to the backtracking-prone ^(/?\w*)*\.\w+$ : any run of word
# chars and slashes, then a single dotted extension
_FILE_RE = re.compile(r"^[\w/]*\.\w+$")
_LETTER_RE = re.compile(r"[A-Za-z]")
_CANONICAL_RE = re.compile(r"^[A-Za-z0-9_.]+\(\)$")


@dataclass(frozen=True)
class CodeEntity:
    raw_text: str
    source_post_id: int
    kind: str  # INLINE or BLOCK

    def __post_init__(self):
        if not self.raw_text:
            raise ValueError("empty code entity")


@dataclass(frozen=True)
class ApiMethodStats:
    name: str
    question_mentions: int = 0
    answer_mentions: int = 0

    @property
    def total(self) -> int:
        return self.question_mentions + self.answer_mentions


@dataclass(frozen=True)
class EntityFilterConfig:
    denylist: frozenset[str] = frozenset()
    qualified_names: dict[str, str] = field(default_factory=dict)  # simple -> qualified
    inline_length_cap: int = 120
    top_k: int = 15
    count_blocks: bool = False
    assume_method_without_parens: bool = False

    def __post_init__(self):
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")
        if self.inline_length_cap < 1:
            raise ValueError("inline_length_cap must be >= 1")


def _read_list_file(path, default_name):
    if path is not None:
        return Path(path).read_text(encoding="utf-8")
    return resources.files("apisum.data").joinpath(default_name).read_text("utf-8")


def load_denylist(path=None) -> frozenset[str]:
    """Newline-delimited names; blank lines and #-comments ignored."""
    names = set()
    for line in _read_list_file(path, "denylist.txt").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            names.add(line)
    return frozenset(names)


def load_qualifier_map(path=None) -> dict[str, str]:
    """Lines of ``simpleName()<TAB>qualified.Name()``."""
    mapping = {}
    for line in _read_list_file(path, "qualmap.txt").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        simple, _, qualified = line.partition("\t")
        if simple and qualified.strip():
            mapping.setdefault(simple.strip(), qualified.strip())
    return mapping


def extract_code_entities(
    body_html: str, source_post_id: int = 0, inline_length_cap: int = 120
) -> list[CodeEntity]:
    """Every ``<code>`` span in document order.

    A span is BLOCK when it sits inside ``<pre>``, contains a newline, or
    exceeds the inline length cap.
    """
    entities = []
    for text, in_pre in htmltext.code_spans(body_html):
        block = in_pre or "\n" in text or len(text) > inline_length_cap
        entities.append(
            CodeEntity(text, source_post_id, BLOCK if block else INLINE)
        )
    return entities


def normalize_entity(raw_text: str, assume_method_without_parens: bool = False) -> str:
    """Canonical method name: arguments stripped, qualifier dots kept.

    The final ``)`` and its matching ``(`` bound the argument list, so
    nested calls inside arguments strip away whole; bare names gain ``()``
    only when ``assume_method_without_parens`` is set.
    """
    text = raw_text.strip()
    if text.count("(") != text.count(")"):
        raise UnbalancedParens(raw_text)
    close_idx = text.rfind(")")
    if close_idx == -1:
        return text + "()" if assume_method_without_parens and text else text
    depth = 0
    open_idx = None
    for i in range(close_idx, -1, -1):
        if text[i] == ")":
            depth += 1
        elif text[i] == "(":
            depth -= 1
            if depth == 0:
                open_idx = i
                break
    if open_idx is None:
        raise UnbalancedParens(raw_text)
    return text[: open_idx + 1] + text[close_idx:]


def validate_entity(entity: CodeEntity, cfg: EntityFilterConfig) -> str:
    """Classify an entity as METHOD, FILE, or REJECTED (pure, total)."""
    if entity.kind == BLOCK:
        return REJECTED
    text = entity.raw_text.strip()
    if not text or not _CHARSET_RE.match(text):
        return REJECTED
    if "()" not in text and _FILE_RE.match(text):
        return FILE
    try:
        canonical = normalize_entity(text, cfg.assume_method_without_parens)
    except UnbalancedParens:
        return REJECTED
    if canonical in cfg.denylist:
        return REJECTED
    if _LETTER_RE.search(canonical) and canonical.endswith("()"):
        return METHOD
    return REJECTED


def simple_name(canonical: str) -> str:
    """Final dotted segment of a canonical name, keeping the ``()``."""
    base = canonical[:-2] if canonical.endswith("()") else canonical
    return base.rsplit(".", 1)[-1] + "()"


def count_mentions(dataset: Dataset, cfg: EntityFilterConfig) -> list[ApiMethodStats]:
    """Mention counts per validated method, bucketed by post type.

    Mentions sharing a simple name are merged onto one canonical form: the
    qualifier-map entry when present, otherwise the longest qualified form
    observed in the dataset, otherwise the simple name itself.
    """
    # (simple_name, post_type) -> count; simple_name -> qualified forms seen
    counts: dict[tuple[str, str], int] = {}
    observed: dict[str, set[str]] = {}
    for post in dataset.posts:
        for entity in extract_code_entities(
            post.body_html, post.id, cfg.inline_length_cap
        ):
            if entity.kind == BLOCK:
                if not cfg.count_blocks:
                    continue
                # opt-in: judge the block's content as if it were inline
                entity = CodeEntity(entity.raw_text, entity.source_post_id, INLINE)
            if validate_entity(entity, cfg) != METHOD:
                continue
            canonical = normalize_entity(
                entity.raw_text, cfg.assume_method_without_parens
            )
            simple = simple_name(canonical)
            key = (simple, post.post_type)
            counts[key] = counts.get(key, 0) + 1
            observed.setdefault(simple, set()).add(canonical)

    stats = []
    for simple in sorted({s for s, _ in counts}):
        target = cfg.qualified_names.get(simple)
        if target is None:
            qualified = [c for c in observed[simple] if c != simple]
            # longest qualified form observed wins; name breaks length ties
            target = (
                min(qualified, key=lambda c: (-len(c), c)) if qualified else simple
            )
        stats.append(
            ApiMethodStats(
                name=target,
                question_mentions=counts.get((simple, "question"), 0),
                answer_mentions=counts.get((simple, "answer"), 0),
            )
        )
    return stats


def rank_top_k(stats: list[ApiMethodStats], cfg: EntityFilterConfig) -> list[ApiMethodStats]:
    """Top-k methods by total mentions, ties by name; denylisted names drop."""
    kept = [s for s in stats if s.name not in cfg.denylist]
    kept.sort(key=lambda s: (-s.total, s.name))
    return kept[: cfg.top_k]

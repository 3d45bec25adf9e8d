"""Sentence normalization: cleaning, stopword removal, rule-based lemmatization.

Originals are never touched; only ``processed_tokens`` carries normalized
text.  The composed pipeline is a true fixed point of itself: lemmas that
land on a stopword are swept out at the end, and the lemmatizer iterates its
rules until a token is stable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .corpus import ApiCorpus

_KEEP_LOWER = re.compile(r"[^a-z0-9_]")
_KEEP_ANYCASE = re.compile(r"[^A-Za-z0-9_]")
_NUMERIC = re.compile(r"^[0-9]+$")
_VOWELS = set("aeiou")


def _data_text(name: str) -> str:
    return resources.files("apisum.data").joinpath(name).read_text(encoding="utf-8")


def load_stopwords(path=None) -> frozenset[str]:
    text = Path(path).read_text(encoding="utf-8") if path else _data_text("stopwords.txt")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


def load_lemma_exceptions(path=None) -> dict[str, str]:
    """Lines of ``form<TAB>lemma`` for irregular plurals and verbs."""
    text = (
        Path(path).read_text(encoding="utf-8")
        if path
        else _data_text("lemma_exceptions.txt")
    )
    table = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        form, _, lemma = line.partition("\t")
        form, lemma = form.strip(), lemma.strip()
        # a lemma with internal whitespace would not survive re-tokenization
        if form and lemma and not any(c.isspace() for c in lemma):
            table[form] = lemma
    return table


@dataclass(frozen=True)
class PrepConfig:
    stopword_list: frozenset[str] = field(default_factory=load_stopwords)
    lemma_exceptions: dict[str, str] = field(default_factory=load_lemma_exceptions)
    lowercase: bool = True

    def __post_init__(self):
        if not self.stopword_list:
            raise ValueError("stopword list must not be empty")


def clean(sentence: str, lowercase: bool = True) -> list[str]:
    """Tokens after punctuation/number/special-character removal.

    Every character outside the token charset becomes a space; purely
    numeric tokens are dropped; underscore is kept so identifier fragments
    survive.
    """
    if lowercase:
        sentence = sentence.lower()
        sentence = _KEEP_LOWER.sub(" ", sentence)
    else:
        sentence = _KEEP_ANYCASE.sub(" ", sentence)
    return [t for t in sentence.split() if not _NUMERIC.match(t)]


def remove_stopwords(tokens: list[str], cfg: PrepConfig) -> list[str]:
    return [t for t in tokens if t not in cfg.stopword_list]


def _suffix_step(token: str) -> str | None:
    """One suffix-rule application, or None when no rule fits."""
    if token.endswith("ies") and len(token) >= 5:
        return token[:-3] + "y"
    if token.endswith("es") and len(token) >= 5:
        return token[:-2]
    # never strip a plural 's' off an 'ss' ending (glass, class, ...)
    if token.endswith("s") and not token.endswith("ss") and len(token) >= 4:
        return token[:-1]
    if token.endswith("ing") and len(token) >= 7:
        stem = token[:-3]
        if (
            len(stem) >= 2
            and stem[-1] == stem[-2]
            and stem[-1] not in _VOWELS
            and stem[-1] not in "lsz"
        ):
            stem = stem[:-1]  # running -> run, but calling -> call
        return stem
    if token.endswith("ed") and len(token) >= 5:
        return token[:-2]
    return None


def lemmatize(tokens: list[str], exceptions: dict[str, str] | None = None) -> list[str]:
    """Root forms via the exception table, then suffix rules to a fixed point.

    Tokens containing digits or underscores pass through unchanged, so
    identifier fragments are stable.
    """
    if exceptions is None:
        exceptions = {}
    out = []
    for token in tokens:
        if any(c.isdigit() for c in token) or "_" in token:
            out.append(token)
            continue
        seen = set()
        while token not in seen:
            seen.add(token)
            nxt = exceptions.get(token)
            if nxt is None:
                nxt = _suffix_step(token)
            if nxt is None or nxt == token:
                break
            token = nxt
        out.append(token)
    return out


def preprocess_sentence(sentence: str, cfg: PrepConfig) -> list[str]:
    """clean -> stopwords -> lemmatize, with a final stopword sweep.

    The sweep drops lemmas that collapse onto a stopword, which makes the
    whole pipeline idempotent on its own space-joined output.
    """
    tokens = clean(sentence, cfg.lowercase)
    tokens = remove_stopwords(tokens, cfg)
    tokens = lemmatize(tokens, cfg.lemma_exceptions)
    return remove_stopwords(tokens, cfg)


def attach_tokens(corpus: ApiCorpus, cfg: PrepConfig) -> ApiCorpus:
    """Fill processed_tokens for every sentence of a corpus."""
    from .corpus import with_tokens

    return with_tokens(
        corpus,
        [tuple(preprocess_sentence(r.original_text, cfg)) for r in corpus.sentences],
    )


def dedup(corpus: ApiCorpus) -> ApiCorpus:
    """First occurrence wins per processed-token signature; empties drop."""
    seen: set[tuple[str, ...]] = set()
    kept = []
    for record in corpus.sentences:
        key = record.processed_tokens
        if not key or key in seen:
            continue
        seen.add(key)
        kept.append(record)
    return ApiCorpus(corpus.api_name, tuple(kept), corpus.score_threshold_used)

"""Per-API sentence corpus: question titles plus sentences from high-score answers.

Question bodies never contribute sentences (they are interrogative, not
declarative).  From each eligible answer we take the first sentence, every
sentence mentioning the method, and the direct neighbors of each mention.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace

from .errors import ApiUnknown
from .htmltext import html_to_text
from .ingest import Dataset, RawPost

TITLE = "title"
ANSWER_BODY = "answer_body"

FIRST_SENTENCE = "first_sentence"
CONTAINS_MENTION = "contains_mention"
BEFORE_MENTION = "before_mention"
AFTER_MENTION = "after_mention"
TITLE_REASON = "title"

TITLES_QUESTION_MENTION = "question-mention"
TITLES_THREAD = "thread"


@dataclass(frozen=True)
class SentenceRecord:
    original_text: str
    source_post_id: int
    source_kind: str  # TITLE or ANSWER_BODY
    position: int
    selection_reason: frozenset[str]
    processed_tokens: tuple[str, ...] = ()  # filled by preprocessing

    def __post_init__(self):
        if not self.original_text.strip():
            raise ValueError("empty sentence")
        if not self.selection_reason:
            raise ValueError("sentence without a selection reason")


@dataclass(frozen=True)
class ApiCorpus:
    api_name: str
    sentences: tuple[SentenceRecord, ...]
    score_threshold_used: int


@dataclass(frozen=True)
class CorpusConfig:
    score_threshold: int | str = 3  # integer or "auto"
    include_titles: bool = True
    titles_scope: str = TITLES_QUESTION_MENTION

    def __post_init__(self):
        if isinstance(self.score_threshold, int) and self.score_threshold < 0:
            raise ValueError("fixed score threshold must be >= 0")
        if self.score_threshold == "auto":
            pass
        elif not isinstance(self.score_threshold, int):
            raise ValueError(f"bad score threshold {self.score_threshold!r}")


def strip_html(body_html: str) -> str:
    """Plain text with sentence-terminating newlines at block boundaries."""
    return html_to_text(body_html)


def resolve_threshold(dataset: Dataset, cfg: CorpusConfig) -> int:
    """Fixed threshold, or ceil of the mean answer score in auto mode."""
    if cfg.score_threshold != "auto":
        return cfg.score_threshold
    answers = dataset.answers
    if not answers:
        return 0
    return math.ceil(sum(a.score for a in answers) / len(answers))


_END_PUNCT = ".!?"


def _is_boundary(text: str, i: int) -> bool:
    """True when the punctuation run ending at text[i] closes a sentence."""
    if text[i + 1 :].lstrip() == "":
        return True
    if not text[i + 1].isspace():
        return False  # glued to the next char: inside a code-like token
    nxt = text[i + 1 :].lstrip()
    return nxt[0].isupper() or nxt[0].isdigit()


def split_sentences(text: str) -> list[tuple[str, int]]:
    """Rule-based sentence split over already-stripped text.

    Splits at ``.!?`` followed by whitespace and an uppercase or digit start;
    newlines always terminate; dotted code tokens like
    ``app.Activity.onCreate()`` never split because their dots have no
    trailing whitespace.  Positions are 0-based in order.
    """
    sentences: list[tuple[str, int]] = []
    position = 0
    for line in text.split("\n"):
        start = 0
        i = 0
        while i < len(line):
            if line[i] in _END_PUNCT:
                # consume a run of closing punctuation
                j = i
                while j + 1 < len(line) and line[j + 1] in _END_PUNCT:
                    j += 1
                if _is_boundary(line, j):
                    fragment = " ".join(line[start : j + 1].split())
                    if fragment:
                        sentences.append((fragment, position))
                        position += 1
                    start = j + 1
                i = j + 1
            else:
                i += 1
        fragment = " ".join(line[start:].split())
        if fragment:
            sentences.append((fragment, position))
            position += 1
    return sentences


def _simple_word(api_name: str) -> str:
    base = api_name[:-2] if api_name.endswith("()") else api_name
    return base.rsplit(".", 1)[-1]


def mention_spans(sentence: str, api_name: str) -> bool:
    """Whole-word, case-sensitive match of the method's simple name."""
    word = re.escape(_simple_word(api_name))
    return re.search(rf"(?<![A-Za-z0-9_]){word}(?![A-Za-z0-9_])", sentence) is not None


def select_sentences(
    post_sentences: list[tuple[str, int]], api_name: str, source_post_id: int
) -> list[SentenceRecord]:
    """First sentence, mention sentences, and each mention's neighbors."""
    n = len(post_sentences)
    if n == 0:
        return []
    mentions = {pos for text, pos in post_sentences if mention_spans(text, api_name)}
    reasons: dict[int, set[str]] = {0: {FIRST_SENTENCE}}
    for m in mentions:
        reasons.setdefault(m, set()).add(CONTAINS_MENTION)
        if m - 1 >= 0:
            reasons.setdefault(m - 1, set()).add(BEFORE_MENTION)
        if m + 1 < n:
            reasons.setdefault(m + 1, set()).add(AFTER_MENTION)
    by_pos = {pos: text for text, pos in post_sentences}
    return [
        SentenceRecord(
            original_text=by_pos[pos],
            source_post_id=source_post_id,
            source_kind=ANSWER_BODY,
            position=pos,
            selection_reason=frozenset(reasons[pos]),
        )
        for pos in sorted(reasons)
    ]


def eligible_answers(dataset: Dataset, api_name: str, cfg: CorpusConfig) -> list[RawPost]:
    """Answers mentioning the method with score at or above the threshold."""
    threshold = resolve_threshold(dataset, cfg)
    return [
        a
        for a in dataset.answers
        if a.score >= threshold and mention_spans(strip_html(a.body_html), api_name)
    ]


def _question_mentions(question: RawPost, api_name: str) -> bool:
    if question.title and mention_spans(question.title, api_name):
        return True
    return mention_spans(strip_html(question.body_html), api_name)


def build_corpus(dataset: Dataset, api_name: str, cfg: CorpusConfig) -> ApiCorpus:
    """Assemble the corpus: titles first by post id, then answer sentences.

    Raises :class:`ApiUnknown` when the method is mentioned nowhere in the
    dataset (any post, any score).
    """
    threshold = resolve_threshold(dataset, cfg)

    mentioning_questions = [
        q for q in dataset.questions if _question_mentions(q, api_name)
    ]
    mentioning_answers = [
        a for a in dataset.answers
        if mention_spans(strip_html(a.body_html), api_name)
    ]
    if not mentioning_questions and not mentioning_answers:
        raise ApiUnknown(api_name)

    eligible = [a for a in mentioning_answers if a.score >= threshold]

    records: list[SentenceRecord] = []
    if cfg.include_titles:
        if cfg.titles_scope == TITLES_THREAD:
            parents = {a.parent_id for a in eligible}
            titled = [
                q for q in dataset.questions
                if q.id in parents or _question_mentions(q, api_name)
            ]
        else:
            titled = mentioning_questions
        for q in sorted(titled, key=lambda p: p.id):
            if q.title and q.title.strip():
                records.append(
                    SentenceRecord(
                        original_text=q.title,
                        source_post_id=q.id,
                        source_kind=TITLE,
                        position=0,
                        selection_reason=frozenset({TITLE_REASON}),
                    )
                )

    for answer in sorted(eligible, key=lambda p: p.id):
        sentences = split_sentences(strip_html(answer.body_html))
        records.extend(select_sentences(sentences, api_name, answer.id))

    return ApiCorpus(
        api_name=api_name,
        sentences=tuple(records),
        score_threshold_used=threshold,
    )


def with_tokens(corpus: ApiCorpus, token_lists: list[tuple[str, ...]]) -> ApiCorpus:
    """Corpus copy with processed_tokens filled, one list per sentence."""
    if len(token_lists) != len(corpus.sentences):
        raise ValueError("token list count does not match sentence count")
    sentences = tuple(
        replace(rec, processed_tokens=tuple(tokens))
        for rec, tokens in zip(corpus.sentences, token_lists)
    )
    return ApiCorpus(corpus.api_name, sentences, corpus.score_threshold_used)


def corpus_to_dict(corpus: ApiCorpus) -> dict:
    """JSON shape with full provenance per sentence."""
    return {
        "api_name": corpus.api_name,
        "score_threshold_used": corpus.score_threshold_used,
        "sentences": [
            {
                "original_text": r.original_text,
                "processed_tokens": list(r.processed_tokens),
                "source_post_id": r.source_post_id,
                "source_kind": r.source_kind,
                "position": r.position,
                "selection_reason": sorted(r.selection_reason),
            }
            for r in corpus.sentences
        ],
    }


def corpus_from_dict(payload: dict) -> ApiCorpus:
    sentences = tuple(
        SentenceRecord(
            original_text=s["original_text"],
            source_post_id=s["source_post_id"],
            source_kind=s["source_kind"],
            position=s["position"],
            selection_reason=frozenset(s["selection_reason"]),
            processed_tokens=tuple(s.get("processed_tokens", ())),
        )
        for s in payload["sentences"]
    )
    return ApiCorpus(
        api_name=payload["api_name"],
        sentences=sentences,
        score_threshold_used=payload["score_threshold_used"],
    )

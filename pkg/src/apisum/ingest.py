"""Parse, filter, and persist Stack Overflow post data.

Input is either the public dump row format (``Posts.xml``), a JSONL mirror of
it, or the live REST source (see :mod:`apisum.remote`).  The persisted store
is a one-line version header followed by rows in the same JSONL schema, so a
store file is itself valid ``--source jsonl`` input from the second line on.
"""

from __future__ import annotations

import io
import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Iterator

from .errors import MalformedRecord, SchemaVersionMismatch

QUESTION = "question"
ANSWER = "answer"

STORE_HEADER = "apisum-store 1"

_TAG_RE = re.compile(r"<([^<>]+)>")


@dataclass(frozen=True)
class RawPost:
    """One Stack Overflow post (question or answer)."""

    id: int
    post_type: str  # QUESTION or ANSWER
    score: int
    body_html: str
    creation_date: datetime
    parent_id: int | None = None  # answers only
    title: str | None = None      # questions only
    tags: tuple[str, ...] = ()    # questions only

    def __post_init__(self):
        if self.id <= 0:
            raise ValueError(f"post id must be positive, got {self.id}")
        if self.post_type == ANSWER:
            if self.parent_id is None:
                raise ValueError("answer without parent_id")
            if self.title is not None or self.tags:
                raise ValueError("answer must not carry title or tags")
        elif self.post_type == QUESTION:
            if self.parent_id is not None:
                raise ValueError("question must not carry parent_id")
        else:
            raise ValueError(f"unknown post_type {self.post_type!r}")

    @property
    def is_question(self):
        return self.post_type == QUESTION

    @property
    def is_answer(self):
        return self.post_type == ANSWER


@dataclass(frozen=True)
class IngestConfig:
    tag: str = "android"
    date_from: datetime = datetime(2009, 1, 1, tzinfo=timezone.utc)
    date_to: datetime = datetime(2020, 4, 30, tzinfo=timezone.utc)
    source: str = "dump_file"  # dump_file | jsonl_file | remote

    def __post_init__(self):
        if not self.tag or self.tag != self.tag.lower():
            raise ValueError("tag must be a nonempty lowercase string")
        if self.date_from > self.date_to:
            raise ValueError("date_from must not be after date_to")


@dataclass
class Dataset:
    """Kept posts in input order, with question/answer linkage indexed."""

    posts: list[RawPost] = field(default_factory=list)

    def __post_init__(self):
        self._questions = {p.id: p for p in self.posts if p.is_question}
        self._answers_by_parent: dict[int, list[RawPost]] = {}
        for p in self.posts:
            if p.is_answer:
                self._answers_by_parent.setdefault(p.parent_id, []).append(p)

    def __len__(self):
        return len(self.posts)

    def __eq__(self, other):
        return isinstance(other, Dataset) and self.posts == other.posts

    @property
    def questions(self) -> list[RawPost]:
        return [p for p in self.posts if p.is_question]

    @property
    def answers(self) -> list[RawPost]:
        return [p for p in self.posts if p.is_answer]

    def question(self, post_id: int) -> RawPost | None:
        return self._questions.get(post_id)

    def answers_to(self, question_id: int) -> list[RawPost]:
        return self._answers_by_parent.get(question_id, [])


def _parse_date(value: str) -> datetime:
    dt = datetime.fromisoformat(value.replace("Z", "+00:00"))
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)  # dump timestamps are UTC
    return dt.astimezone(timezone.utc)


def _parse_tags(value) -> tuple[str, ...]:
    if value is None:
        return ()
    if isinstance(value, (list, tuple)):
        return tuple(str(t).lower() for t in value)
    found = _TAG_RE.findall(value)
    if found:
        return tuple(t.lower() for t in found)
    # newer dumps delimit with pipes instead of angle brackets
    return tuple(t.lower() for t in value.split("|") if t)


def _post_from_fields(index, post_type_id, fields) -> RawPost | None:
    """Build a RawPost from a raw field dict; None for non-post row types."""
    if post_type_id not in (1, 2):
        return None
    try:
        for name in ("id", "score", "body", "creation_date"):
            if fields.get(name) is None:
                raise ValueError(f"missing field {name}")
        common = dict(
            id=int(fields["id"]),
            score=int(fields["score"]),
            body_html=str(fields["body"]),
            creation_date=_parse_date(fields["creation_date"]),
        )
        if post_type_id == 1:
            return RawPost(
                post_type=QUESTION,
                title=fields.get("title"),
                tags=_parse_tags(fields.get("tags")),
                **common,
            )
        if fields.get("parent_id") is None:
            raise ValueError("missing field parent_id")
        return RawPost(post_type=ANSWER, parent_id=int(fields["parent_id"]), **common)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedRecord(index, str(exc)) from exc


def _iter_xml_rows(stream) -> Iterator[tuple[int, dict]]:
    index = 0
    for _, elem in ET.iterparse(stream, events=("end",)):
        if elem.tag != "row":
            continue
        index += 1
        a = elem.attrib
        yield index, {
            "post_type_id": a.get("PostTypeId"),
            "id": a.get("Id"),
            "parent_id": a.get("ParentId"),
            "score": a.get("Score"),
            "title": a.get("Title"),
            "body": a.get("Body"),
            "tags": a.get("Tags"),
            "creation_date": a.get("CreationDate"),
        }
        elem.clear()


def _iter_jsonl_rows(stream) -> Iterator[tuple[int, dict]]:
    for index, line in enumerate(stream, start=1):
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedRecord(index, f"invalid JSON: {exc}") from exc
        post_type = obj.get("post_type")
        # unknown type strings mirror unknown PostTypeIds: skipped, not errors
        type_id = {"question": 1, "answer": 2, None: None}.get(post_type, 0)
        yield index, {
            "post_type_id": type_id,
            "id": obj.get("id"),
            "parent_id": obj.get("parent_id"),
            "score": obj.get("score"),
            "title": obj.get("title"),
            "body": obj.get("body_html"),
            "tags": obj.get("tags"),
            "creation_date": obj.get("creation_date"),
        }


def parse_dump(record_stream, format: str, lenient: bool = False) -> Iterator[RawPost]:
    """Yield one RawPost per valid row, preserving input order.

    Rows whose type is neither question nor answer are skipped silently.
    Malformed rows raise :class:`MalformedRecord`; with ``lenient=True`` they
    are skipped and parsing continues.
    """
    if format == "xml_rows":
        rows = _iter_xml_rows(record_stream)
    elif format == "jsonl":
        rows = _iter_jsonl_rows(record_stream)
    else:
        raise ValueError(f"unknown dump format {format!r}")

    for index, fields in rows:
        try:
            type_id = fields["post_type_id"]
            if type_id is None:
                raise MalformedRecord(index, "missing post type")
            try:
                type_id = int(type_id)
            except (TypeError, ValueError) as exc:
                raise MalformedRecord(index, f"bad post type: {type_id!r}") from exc
            post = _post_from_fields(index, type_id, fields)
        except MalformedRecord:
            if lenient:
                continue
            raise
        if post is not None:
            yield post


def filter_dataset(posts: Iterable[RawPost], cfg: IngestConfig) -> Dataset:
    """Keep tagged in-window questions and every answer linked to them.

    The date window applies to questions only; an answer posted after the
    window closes is kept as long as its parent question is in.
    """
    materialized = list(posts)
    kept_questions = {
        p.id
        for p in materialized
        if p.is_question
        and cfg.tag in p.tags
        and cfg.date_from <= p.creation_date <= cfg.date_to
    }
    kept = [
        p
        for p in materialized
        if (p.is_question and p.id in kept_questions)
        or (p.is_answer and p.parent_id in kept_questions)
    ]
    return Dataset(kept)


def post_to_record(post: RawPost) -> dict:
    """The documented JSONL wire form of a post."""
    return {
        "id": post.id,
        "post_type": post.post_type,
        "parent_id": post.parent_id,
        "score": post.score,
        "title": post.title,
        "body_html": post.body_html,
        "tags": list(post.tags),
        "creation_date": post.creation_date.isoformat(),
    }


def store_save(dataset: Dataset, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with io.open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(STORE_HEADER + "\n")
        for post in dataset.posts:
            fh.write(json.dumps(post_to_record(post), ensure_ascii=False) + "\n")
    return path


def store_load(path) -> Dataset:
    with io.open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header != STORE_HEADER:
            raise SchemaVersionMismatch(
                f"expected header {STORE_HEADER!r}, found {header!r}"
            )
        return Dataset(list(parse_dump(fh, "jsonl")))

"""Dump parsing, filtering rules, and store round trips."""

import io
import json
from datetime import datetime, timezone

import pytest

from apisum import ingest
from apisum.errors import MalformedRecord, SchemaVersionMismatch
from apisum.ingest import Dataset, IngestConfig, RawPost


def _utc(*args):
    return datetime(*args, tzinfo=timezone.utc)


def make_question(id=1, score=5, tags=("android",), date=None, title="T",
                  body="<p>x</p>"):
    return RawPost(
        id=id, post_type="question", score=score, title=title,
        body_html=body, tags=tuple(tags),
        creation_date=date or _utc(2015, 1, 1),
    )


def make_answer(id=2, parent=1, score=3, date=None, body="<p>y</p>"):
    return RawPost(
        id=id, post_type="answer", parent_id=parent, score=score,
        body_html=body, creation_date=date or _utc(2015, 1, 2),
    )


class TestRawPost:
    def test_answer_requires_parent(self):
        with pytest.raises(ValueError):
            RawPost(id=3, post_type="answer", score=3, body_html="b",
                    creation_date=_utc(2015, 1, 1))

    def test_question_rejects_parent(self):
        with pytest.raises(ValueError):
            RawPost(id=3, post_type="question", parent_id=1, score=3,
                    body_html="b", creation_date=_utc(2015, 1, 1))

    def test_positive_id(self):
        with pytest.raises(ValueError):
            make_question(id=0)


class TestParseXml:
    def test_question_row(self):
        xml = (
            b'<posts><row Id="1" PostTypeId="1" Score="5" Title="T" '
            b'Body="&lt;p&gt;x&lt;/p&gt;" Tags="&lt;android&gt;" '
            b'CreationDate="2015-01-01T00:00:00" /></posts>'
        )
        (post,) = ingest.parse_dump(io.BytesIO(xml), "xml_rows")
        assert post.is_question
        assert post.score == 5
        assert post.tags == ("android",)
        assert post.body_html == "<p>x</p>"
        assert post.creation_date == _utc(2015, 1, 1)

    def test_answer_row(self):
        xml = (
            b'<posts><row Id="2" PostTypeId="2" ParentId="1" Score="3" '
            b'Body="&lt;p&gt;y&lt;/p&gt;" CreationDate="2015-01-02T00:00:00"/>'
            b"</posts>"
        )
        (post,) = ingest.parse_dump(io.BytesIO(xml), "xml_rows")
        assert post.is_answer
        assert post.parent_id == 1

    def test_answer_without_parent_is_malformed(self):
        xml = (
            b'<posts><row Id="3" PostTypeId="2" Score="3" Body="b" '
            b'CreationDate="2015-01-02T00:00:00"/></posts>'
        )
        with pytest.raises(MalformedRecord):
            list(ingest.parse_dump(io.BytesIO(xml), "xml_rows"))

    def test_other_post_types_skipped(self):
        xml = (
            b'<posts><row Id="9" PostTypeId="4" Score="0" Body="b" '
            b'CreationDate="2015-01-01T00:00:00"/></posts>'
        )
        assert list(ingest.parse_dump(io.BytesIO(xml), "xml_rows")) == []

    def test_lenient_skips_bad_rows(self):
        xml = (
            b"<posts>"
            b'<row Id="3" PostTypeId="2" Score="3" Body="b" '
            b'CreationDate="2015-01-02T00:00:00"/>'
            b'<row Id="2" PostTypeId="2" ParentId="1" Score="3" Body="b" '
            b'CreationDate="2015-01-02T00:00:00"/>'
            b"</posts>"
        )
        posts = list(ingest.parse_dump(io.BytesIO(xml), "xml_rows", lenient=True))
        assert [p.id for p in posts] == [2]


class TestParseJsonl:
    def test_round_trip_record(self):
        post = make_question()
        line = json.dumps(ingest.post_to_record(post))
        (parsed,) = ingest.parse_dump(io.StringIO(line), "jsonl")
        assert parsed == post

    def test_malformed_reports_line(self):
        lines = json.dumps(ingest.post_to_record(make_question())) + "\n{broken\n"
        with pytest.raises(MalformedRecord) as err:
            list(ingest.parse_dump(io.StringIO(lines), "jsonl"))
        assert err.value.index == 2

    def test_matches_xml_parse(self, fixture_posts, fixture_xml):
        with fixture_xml.open("rb") as fh:
            from_xml = list(ingest.parse_dump(fh, "xml_rows"))
        assert from_xml == fixture_posts


class TestFilterDataset:
    def test_keeps_tagged_question_with_answers(self):
        posts = [
            make_question(id=1),
            make_answer(id=2, parent=1),
            make_answer(id=3, parent=1),
            make_question(id=4, tags=("java",)),
        ]
        ds = ingest.filter_dataset(posts, IngestConfig())
        assert len(ds) == 3
        assert {p.id for p in ds.posts} == {1, 2, 3}

    def test_date_window_drops_thread(self):
        posts = [
            make_question(id=1, date=_utc(2021, 1, 1)),
            make_answer(id=2, parent=1, date=_utc(2021, 1, 2)),
        ]
        assert len(ingest.filter_dataset(posts, IngestConfig())) == 0

    def test_answer_after_window_kept_with_parent(self):
        posts = [
            make_question(id=1, date=_utc(2020, 4, 1)),
            make_answer(id=2, parent=1, date=_utc(2020, 7, 1)),
        ]
        ds = ingest.filter_dataset(posts, IngestConfig())
        assert {p.id for p in ds.posts} == {1, 2}

    def test_orphan_answers_dropped(self, dataset):
        parents = {q.id for q in dataset.questions}
        assert all(a.parent_id in parents for a in dataset.answers)

    def test_idempotent(self, dataset):
        again = ingest.filter_dataset(dataset.posts, IngestConfig())
        assert again == dataset

    def test_fixture_counts(self, dataset):
        # 3 threads fall outside the tag or date rules
        assert len(dataset.questions) == 14
        assert len(dataset.answers) == 30


class TestStore:
    def test_empty_round_trip(self, tmp_path):
        path = ingest.store_save(Dataset([]), tmp_path / "empty.store")
        assert ingest.store_load(path) == Dataset([])

    def test_three_post_round_trip(self, tmp_path):
        ds = Dataset([make_question(), make_answer(), make_answer(id=3)])
        path = ingest.store_save(ds, tmp_path / "posts.store")
        assert ingest.store_load(path) == ds

    def test_version_mismatch(self, tmp_path):
        path = tmp_path / "bad.store"
        path.write_text("apisum-store 999\n", encoding="utf-8")
        with pytest.raises(SchemaVersionMismatch):
            ingest.store_load(path)

    def test_body_html_byte_exact(self, tmp_path, dataset):
        path = ingest.store_save(dataset, tmp_path / "fixture.store")
        loaded = ingest.store_load(path)
        for before, after in zip(dataset.posts, loaded.posts):
            assert before.body_html == after.body_html

"""Code-entity extraction, validation, normalization, counting, ranking."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apisum.entities import (
    BLOCK,
    FILE,
    INLINE,
    METHOD,
    REJECTED,
    ApiMethodStats,
    CodeEntity,
    EntityFilterConfig,
    count_mentions,
    extract_code_entities,
    normalize_entity,
    rank_top_k,
    simple_name,
    validate_entity,
)
from apisum.errors import UnbalancedParens
from apisum.ingest import Dataset, RawPost

# a post body in the shape Stack Overflow renders: numbered advice with
# inline mentions, a manifest attribute, and a multi-line class sample
ROTATION_POST = (
    "<p>There are basically two ways to implement this change.</p>"
    "<ol><li>using <code>onSaveInstanceState()</code> and "
    "<code>onRestoreInstanceState()</code>.</li>"
    "<li>In manifest "
    "<code>android:configChanges=&quot;orientation|screenSize&quot;</code>."
    "</li></ol>"
    "<pre><code>class MyModel extends Serializable{\n"
    "    JSONObject obj;\n"
    "}\n</code></pre>"
    "<p>Now in your activity in onCreate do the following.</p>"
)


def entity(text, kind=INLINE):
    return CodeEntity(text, source_post_id=1, kind=kind)


class TestExtraction:
    def test_inline_span(self):
        (e,) = extract_code_entities("<p>use <code>onCreate()</code></p>")
        assert (e.raw_text, e.kind) == ("onCreate()", INLINE)

    def test_newline_makes_block(self):
        (e,) = extract_code_entities("<pre><code>class X {\n}</code></pre>")
        assert (e.raw_text, e.kind) == ("class X {\n}", BLOCK)

    def test_pre_wrapping_forces_block(self):
        (e,) = extract_code_entities("<pre><code>short</code></pre>")
        assert e.kind == BLOCK

    def test_length_cap_makes_block(self):
        body = f"<code>{'x' * 200}</code>"
        (e,) = extract_code_entities(body, inline_length_cap=120)
        assert e.kind == BLOCK

    def test_unclosed_span_closes_at_end(self):
        (e,) = extract_code_entities("<p>use <code>finish()")
        assert e.raw_text == "finish()"

    def test_document_order_and_entity_decoding(self):
        spans = extract_code_entities(ROTATION_POST)
        texts = [e.raw_text for e in spans]
        assert texts[0] == "onSaveInstanceState()"
        assert texts[1] == "onRestoreInstanceState()"
        assert texts[2] == 'android:configChanges="orientation|screenSize"'
        assert spans[3].kind == BLOCK and texts[3].startswith("class MyModel")
        assert [e.kind for e in spans[:3]] == [INLINE] * 3


class TestNormalize:
    def test_argument_stripping(self):
        assert normalize_entity("onCreate(Bundle savedInstanceState)") == "onCreate()"

    def test_qualified_identity(self):
        assert normalize_entity("app.Activity.onCreate()") == "app.Activity.onCreate()"

    def test_unbalanced(self):
        with pytest.raises(UnbalancedParens):
            normalize_entity("finish(")

    def test_nested_argument_parens(self):
        assert normalize_entity("setContentView(R.layout.main(x))") == "setContentView()"

    def test_bare_name_needs_flag(self):
        assert normalize_entity("finish") == "finish"
        assert normalize_entity("finish", assume_method_without_parens=True) == "finish()"


VALIDATION_CFG = EntityFilterConfig(
    denylist=frozenset(
        {"Activity", "TextView", "managedQuery()",
         "onRetainNonConfigurationInstance()"}
    )
)


class TestValidation:
    # >= 20 entities: the three canonical examples plus the long tail
    CASES = [
        ("app.Activity.onCreate()", INLINE, METHOD),
        ('android:configChanges="orientation|screenSize"', INLINE, REJECTED),
        ("studio.sh", INLINE, FILE),
        ("onCreate()", INLINE, METHOD),
        ("onCreate(Bundle)", INLINE, METHOD),
        ("findViewById(R.id.button)", INLINE, METHOD),
        ("getString(R.string.app_name)", INLINE, METHOD),
        ("onCreate(Bundle savedInstanceState)", INLINE, REJECTED),  # space
        ("Activity", INLINE, REJECTED),       # denylisted class name
        ("TextView", INLINE, REJECTED),
        ("managedQuery()", INLINE, REJECTED),  # denylisted deprecated method
        ("onRetainNonConfigurationInstance()", INLINE, REJECTED),
        ("onSaveInstanceState()", INLINE, METHOD),
        ("build.gradle", INLINE, FILE),
        # slashes fail the charset test before the file pattern can apply
        ("/usr/local/bin/adb.exe", INLINE, REJECTED),
        ("res/layout/activity_main.xml", INLINE, REJECTED),
        ("activity_main.xml", INLINE, FILE),
        ("AndroidManifest.xml", INLINE, FILE),
        ("gradle-wrapper.properties", INLINE, REJECTED),  # hyphen
        ("class X {\n}", BLOCK, REJECTED),
        ("x()", INLINE, METHOD),
        ("a.b.c()", INLINE, METHOD),
        ("123()", INLINE, REJECTED),          # no letter
        ("_init_()", INLINE, METHOD),
        ("foo.bar", INLINE, FILE),
        ("foo", INLINE, REJECTED),            # bare name, flag off
        ("finish(", INLINE, REJECTED),        # unbalanced
        ("setContentView(R.layout.activity_main)", INLINE, METHOD),
    ]

    @pytest.mark.parametrize("raw,kind,expected", CASES)
    def test_classification(self, raw, kind, expected):
        assert validate_entity(entity(raw, kind), VALIDATION_CFG) == expected

    def test_pure_function(self):
        e = entity("onCreate()")
        assert (validate_entity(e, VALIDATION_CFG)
                == validate_entity(e, VALIDATION_CFG) == METHOD)

    @given(st.text(min_size=1, max_size=40))
    def test_total_over_arbitrary_text(self, text):
        cfg = EntityFilterConfig()
        result = validate_entity(entity(text), cfg)
        assert result in (METHOD, FILE, REJECTED)


def _question(id, body, tags=("android",)):
    from datetime import datetime, timezone

    return RawPost(
        id=id, post_type="question", score=1, title="T", body_html=body,
        tags=tuple(tags), creation_date=datetime(2015, 1, 1, tzinfo=timezone.utc),
    )


def _answer(id, parent, body):
    from datetime import datetime, timezone

    return RawPost(
        id=id, post_type="answer", parent_id=parent, score=3, body_html=body,
        creation_date=datetime(2015, 1, 2, tzinfo=timezone.utc),
    )


class TestCounting:
    def test_buckets_by_post_type(self):
        ds = Dataset([
            _question(1, "<p><code>go()</code></p>"),
            _answer(2, 1, "<p><code>go()</code></p>"),
            _answer(3, 1, "<p><code>go()</code></p>"),
        ])
        (stats,) = count_mentions(ds, EntityFilterConfig())
        assert (stats.question_mentions, stats.answer_mentions, stats.total) == (1, 2, 3)

    def test_double_mention_in_one_post(self):
        ds = Dataset([
            _question(1, "<p>q</p>"),
            _answer(2, 1, "<p><code>go()</code> and <code>go()</code></p>"),
        ])
        (stats,) = count_mentions(ds, EntityFilterConfig())
        assert stats.answer_mentions == 2

    def test_blocks_not_counted_by_default(self):
        body = "<pre><code>go()</code></pre><p><code>go()</code></p>"
        ds = Dataset([_question(1, body)])
        (stats,) = count_mentions(ds, EntityFilterConfig())
        assert stats.total == 1
        (stats,) = count_mentions(ds, EntityFilterConfig(count_blocks=True))
        assert stats.total == 2

    def test_merge_onto_longest_qualified(self):
        ds = Dataset([
            _question(1, "<p><code>a.b.go()</code></p>"),
            _answer(2, 1, "<p><code>go()</code> <code>b.go()</code></p>"),
        ])
        (stats,) = count_mentions(ds, EntityFilterConfig())
        assert stats.name == "a.b.go()"
        assert stats.total == 3

    def test_qualifier_map_wins(self):
        ds = Dataset([_question(1, "<p><code>go()</code></p>")])
        cfg = EntityFilterConfig(qualified_names={"go()": "x.y.go()"})
        (stats,) = count_mentions(ds, cfg)
        assert stats.name == "x.y.go()"

    def test_canonical_name_shape(self, dataset, entity_cfg):
        import re

        for stats in count_mentions(dataset, entity_cfg):
            assert re.fullmatch(r"[A-Za-z0-9_.]+\(\)", stats.name), stats.name

    def test_partition_property(self, dataset, entity_cfg):
        """Per-post counts sum to the dataset totals for every method."""
        totals = {}
        for post in dataset.posts:
            for stats in count_mentions(Dataset([post]), entity_cfg):
                key = simple_name(stats.name)
                totals[key] = totals.get(key, 0) + stats.total
        full = {
            simple_name(s.name): s.total
            for s in count_mentions(dataset, entity_cfg)
        }
        assert totals == full


class TestRankTopK:
    def test_tie_break_by_name(self):
        stats = [
            ApiMethodStats("b()", 0, 5),
            ApiMethodStats("a()", 0, 5),
            ApiMethodStats("c()", 0, 2),
        ]
        ranked = rank_top_k(stats, EntityFilterConfig(top_k=2))
        assert [s.name for s in ranked] == ["a()", "b()"]

    def test_denylisted_dropped(self):
        stats = [ApiMethodStats("x()", 0, 9)]
        cfg = EntityFilterConfig(denylist=frozenset({"x()"}), top_k=1)
        assert rank_top_k(stats, cfg) == []

    def test_output_never_denylisted(self, dataset):
        cfg = EntityFilterConfig(denylist=frozenset({"clearCache()"}), top_k=50)
        ranked = rank_top_k(count_mentions(dataset, cfg), cfg)
        assert all(s.name != "clearCache()" for s in ranked)

    def test_fixture_ranking(self, dataset, entity_cfg):
        ranked = rank_top_k(count_mentions(dataset, entity_cfg), entity_cfg)
        assert [s.name for s in ranked[:3]] == [
            "app.Widget.fakeMethod()",
            "clearCache()",
            "brokenThing()",
        ]
        assert ranked[0].total == 19
        assert ranked[1].total == 12

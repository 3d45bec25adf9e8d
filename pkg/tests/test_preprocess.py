"""Cleaning, stopwords, lemmatization, dedup, and pipeline idempotence."""

from hypothesis import given
from hypothesis import strategies as st

from apisum.corpus import ApiCorpus, SentenceRecord
from apisum.preprocess import (
    PrepConfig,
    attach_tokens,
    clean,
    dedup,
    lemmatize,
    load_lemma_exceptions,
    preprocess_sentence,
    remove_stopwords,
)

CFG = PrepConfig()


class TestClean:
    def test_punctuation_removed(self):
        assert clean("Call finish() now!") == ["call", "finish", "now"]

    def test_pure_numbers_dropped(self):
        assert clean("in 2015 it worked") == ["in", "it", "worked"]

    def test_empty(self):
        assert clean("") == []

    def test_underscore_and_digits_survive_in_mixed_tokens(self):
        assert clean("set_value2 = 7") == ["set_value2"]

    def test_no_lowercase_mode(self):
        assert clean("Call Finish()", lowercase=False) == ["Call", "Finish"]


class TestStopwords:
    def test_removal_preserves_order(self):
        assert remove_stopwords(["call", "the", "method"], CFG) == ["call", "method"]

    def test_all_stopwords(self):
        assert remove_stopwords(["the", "a", "of"], CFG) == []

    def test_empty_identity(self):
        assert remove_stopwords([], CFG) == []


class TestLemmatize:
    def test_ies_rule(self):
        assert lemmatize(["activities"]) == ["activity"]

    def test_consonant_doubling(self):
        assert lemmatize(["running"]) == ["run"]

    def test_no_rule_applies(self):
        assert lemmatize(["onpostexecute"]) == ["onpostexecute"]

    def test_tokens_with_digits_or_underscore_pass_through(self):
        assert lemmatize(["value2s", "set_things"]) == ["value2s", "set_things"]

    def test_plural_and_past(self):
        assert lemmatize(["views", "worked", "classes"]) == ["view", "work", "class"]

    def test_double_s_not_stripped(self):
        assert lemmatize(["class", "process"]) == ["class", "process"]

    def test_exception_table(self):
        table = load_lemma_exceptions()
        assert lemmatize(["ran", "children"], table) == ["run", "child"]

    def test_fixed_point_per_token(self):
        words = ["dressings", "activities", "running", "nows", "glasses", "uses"]
        once = lemmatize(words)
        assert lemmatize(once) == once


class TestPipeline:
    def test_composition(self):
        tokens = preprocess_sentence("Call the fakeMethod() before you update!", CFG)
        assert tokens == ["call", "fakemethod", "update"]

    def test_stopword_only_sentence_empties(self):
        assert preprocess_sentence("And that is all.", CFG) == []

    def test_lemma_landing_on_stopword_swept(self):
        # "nows" lemmatizes to the stopword "now" and must not survive
        assert preprocess_sentence("nows", CFG) == []

    @given(st.text(max_size=120))
    def test_idempotent_on_arbitrary_text(self, text):
        once = preprocess_sentence(text, CFG)
        again = preprocess_sentence(" ".join(once), CFG)
        assert again == once

    @given(st.lists(st.sampled_from(
        ["the", "views", "Running", "fakeMethod()", "2015", "data",
         "classes", "e.g.", "dressings", "worked", "ran", "It's"]),
        max_size=12))
    def test_idempotent_on_wordlike_text(self, words):
        text = " ".join(words)
        once = preprocess_sentence(text, CFG)
        assert preprocess_sentence(" ".join(once), CFG) == once


def _corpus(token_lists):
    sentences = tuple(
        SentenceRecord(
            original_text=f"sentence {i}",
            source_post_id=i,
            source_kind="answer_body",
            position=0,
            selection_reason=frozenset({"first_sentence"}),
            processed_tokens=tuple(tokens),
        )
        for i, tokens in enumerate(token_lists)
    )
    return ApiCorpus("go()", sentences, 3)


class TestDedup:
    def test_first_of_duplicates_kept(self):
        corpus = dedup(_corpus([("use", "finish"), ("use", "finish")]))
        assert [r.source_post_id for r in corpus.sentences] == [0]

    def test_empty_tokens_dropped(self):
        corpus = dedup(_corpus([(), ("keep",)]))
        assert [r.source_post_id for r in corpus.sentences] == [1]

    def test_all_unique_unchanged(self):
        before = _corpus([("a",), ("b",), ("c",)])
        assert dedup(before).sentences == before.sentences

    def test_output_is_subsequence_with_distinct_keys(self, dataset):
        from apisum.corpus import CorpusConfig, build_corpus

        corpus = attach_tokens(
            build_corpus(dataset, "app.Widget.fakeMethod()", CorpusConfig()), CFG
        )
        deduped = dedup(corpus)
        keys = [r.processed_tokens for r in deduped.sentences]
        assert len(keys) == len(set(keys))
        it = iter(corpus.sentences)
        assert all(rec in it for rec in deduped.sentences), "subsequence"

    def test_originals_never_modified(self, dataset):
        from apisum.corpus import CorpusConfig, build_corpus

        raw = build_corpus(dataset, "app.Widget.fakeMethod()", CorpusConfig())
        processed = dedup(attach_tokens(raw, CFG))
        originals = {r.original_text for r in raw.sentences}
        assert all(r.original_text in originals for r in processed.sentences)

"""Sentence segmentation, tokenization, and entity merging."""

import string

from hypothesis import given, settings
from hypothesis import strategies as st

from entsum.preprocess import (
    merge_proper_nouns,
    norm_words,
    preprocess,
    split_sentences,
    tokenize,
)


def sentence_texts(raw, abbrevs=None):
    return [s for s in split_sentences(raw, abbrevs or set())]


class TestNormWords:
    def test_lowercases_and_strips_surrounding_punctuation(self):
        assert norm_words("The 'Engine', (finally) ran.") == (
            "the",
            "engine",
            "finally",
            "ran",
        )

    def test_keeps_internal_hyphens_and_apostrophes(self):
        assert norm_words("well-known o'clock") == ("well-known", "o'clock")

    def test_drops_pure_punctuation_words(self):
        assert norm_words("wait -- what !!") == ("wait", "what")

    def test_empty(self):
        assert norm_words("   ") == ()


class TestSplitSentences:
    ABBREVS = frozenset({"dr", "mr", "mrs", "st", "e.g", "vol"})

    def test_plain_periods(self):
        got = sentence_texts("One ran. Two ran. Three ran.")
        assert got == ["One ran.", "Two ran.", "Three ran."]

    def test_abbreviation_does_not_split(self):
        got = split_sentences("Dr. Smith arrived. He sat down.", self.ABBREVS)
        assert got == ["Dr. Smith arrived.", "He sat down."]

    def test_multi_period_abbreviation(self):
        got = split_sentences("See e.g. the manual. It helps.", self.ABBREVS)
        assert got == ["See e.g. the manual.", "It helps."]

    def test_single_initials_do_not_split(self):
        got = split_sentences("J. K. Rowling wrote it.", self.ABBREVS)
        assert got == ["J. K. Rowling wrote it."]

    def test_decimal_numbers_do_not_split(self):
        got = split_sentences("The rate rose 3.5 percent. Prices fell.", self.ABBREVS)
        assert got == ["The rate rose 3.5 percent.", "Prices fell."]

    def test_terminator_runs_stay_attached(self):
        got = split_sentences("What a day!! It ended well...", self.ABBREVS)
        assert got == ["What a day!!", "It ended well..."]

    def test_question_and_exclamation(self):
        got = split_sentences("Who won? Nobody knows! Sad.", self.ABBREVS)
        assert got == ["Who won?", "Nobody knows!", "Sad."]

    def test_trailing_text_without_terminator(self):
        got = split_sentences("First part ended. second kept going", self.ABBREVS)
        assert got == ["First part ended.", "second kept going"]

    def test_whitespace_only(self):
        assert split_sentences("  \n\t ", self.ABBREVS) == []


# templates are guaranteed single sentences: capitalized start, one terminal
# mark, internal periods only in protected positions
_TEMPLATES = [
    "Dr. Lee met Mr. Park near the river.",
    "The rate rose 3.5 percent before lunch.",
    "J. K. Rowling wrote many books.",
    "Nobody answered the second bell!",
    "Who carried the ladder upstairs?",
    "A quiet crowd waited outside.",
    "Mrs. Field counted 12.75 dollars.",
    "The show ended early...",
]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(_TEMPLATES), min_size=1, max_size=8))
def test_split_count_matches_template_count(parts):
    abbrevs = frozenset({"dr", "mr", "mrs", "e.g"})
    raw = " ".join(parts)
    assert len(split_sentences(raw, abbrevs)) == len(parts)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(_TEMPLATES), min_size=1, max_size=8))
def test_segmentation_preserves_alphanumeric_content(parts):
    raw = "  ".join(parts)
    doc = preprocess(raw)
    original = "".join(ch for ch in raw if ch.isalnum())
    rebuilt = "".join(ch for s in doc.sentences for ch in s.text if ch.isalnum())
    assert rebuilt == original


class TestTokenize:
    def test_strips_edge_punctuation_only(self):
        toks = tokenize("The (well-known) engine, ran!")
        assert [t.surface for t in toks] == ["The", "well-known", "engine", "ran"]
        assert [t.normalized for t in toks] == ["the", "well-known", "engine", "ran"]

    def test_spans_index_into_source_text(self):
        raw = "  Alice   built an engine.  "
        for tok in tokenize(raw):
            assert raw[tok.span[0] : tok.span[1]] == tok.surface

    def test_pure_punctuation_chunks_dropped(self):
        assert list(tokenize("-- ... !!")) == []


class TestMergeProperNouns:
    STOP = frozenset({"the", "a", "of"})

    def _merge(self, text):
        return merge_proper_nouns(tokenize(text), stopwords=self.STOP, text=text)

    def test_initials_merge_into_one_token(self):
        toks = self._merge("J. K. Rowling wrote it.")
        assert toks[0].surface == "J. K. Rowling"
        assert toks[0].is_entity_merge
        assert toks[0].words == ("j", "k", "rowling")
        assert [t.surface for t in toks[1:]] == ["wrote", "it"]

    def test_single_capitalized_token_not_merged(self):
        toks = self._merge("he saw Alice")
        assert [t.surface for t in toks] == ["he", "saw", "Alice"]
        assert not any(t.is_entity_merge for t in toks)

    def test_capitalized_stopword_breaks_run(self):
        # "The" is capitalized but a stopword, so no run forms through it
        toks = self._merge("The Grand Hall opened.")
        assert toks[0].surface == "The"
        assert toks[1].surface == "Grand Hall"
        assert toks[1].is_entity_merge

    def test_merge_is_idempotent(self):
        once = self._merge("Dr. Elena Moreno praised Calder Energy.")
        twice = merge_proper_nouns(once, stopwords=self.STOP)
        assert twice == once


class TestPreprocess:
    def test_document_structure(self):
        doc = preprocess("Alice built an engine. She tested it.")
        assert len(doc.sentences) == 2
        assert doc.sentences[0].index == 0
        assert doc.sentences[1].index == 1
        assert doc.sentences[1].tokens[0].surface == "She"

    def test_every_sentence_has_tokens(self):
        # punctuation-only fragments must be glued to a neighbor, not kept
        doc = preprocess("Alice ran. ?! Bob slept.")
        assert doc.sentences
        for sentence in doc.sentences:
            assert sentence.tokens

    def test_merged_entities_survive_full_pipeline(self):
        doc = preprocess("Dr. Elena Moreno opened the Meadowbrook solar farm.")
        assert len(doc.sentences) == 1
        surfaces = [t.surface for t in doc.sentences[0].tokens]
        assert "Dr. Elena Moreno" in surfaces

    def test_words_stream_is_flat_and_normalized(self):
        doc = preprocess("J. K. Rowling wrote it.")
        assert doc.sentences[0].words == ("j", "k", "rowling", "wrote", "it")

    def test_empty_input(self):
        assert preprocess("").sentences == ()
        assert preprocess(" \n ").sentences == ()


@settings(max_examples=100, deadline=None)
@given(
    st.text(
        alphabet=string.ascii_letters + string.digits + " .,!?'-()",
        max_size=300,
    )
)
def test_preprocess_never_crashes_and_sentences_are_nonempty(raw):
    doc = preprocess(raw)
    for sentence in doc.sentences:
        assert sentence.tokens
        assert sentence.text.strip() == sentence.text

"""Verb-phrase extraction: pattern matching, constraint, argument finding."""
import re

import pytest

from oie import (
    PatternLexicon,
    apply_lexical_constraint,
    extract_verb_phrase,
    find_arguments,
    match_relation_phrases,
)

from conftest import graph

# Independent re-validation automaton over UPOS classes. Each span must be a
# concatenation of verb-led segments: V = verb particle? adv?, optionally
# followed by W* P.
_ENCODE = {
    "VERB": "v", "AUX": "v", "PART": "t", "ADP": "p", "ADV": "a",
    "NOUN": "w", "PROPN": "w", "ADJ": "w", "PRON": "w", "DET": "w",
}
_SEGMENT = re.compile(r"^(vt?a?(?:[wa]*[pt])?)+$")


def encode(g, indices):
    return "".join(_ENCODE.get(g.token(i).upos, "x") for i in indices)


def revalidates(g, indices):
    return bool(_SEGMENT.match(encode(g, indices)))


class TestMatchRelationPhrases:
    def test_award_single_span(self, verbphrase_fixtures):
        g = verbphrase_fixtures["vp-award"]
        phrases = match_relation_phrases(g)
        assert [p.span.rendered for p in phrases] == ["was awarded"]

    def test_headquartered_merges_adjacent(self, verbphrase_fixtures):
        g = verbphrase_fixtures["vp-hq"]
        phrases = match_relation_phrases(g)
        assert [p.span.rendered for p in phrases] == ["is headquartered in"]
        assert phrases[0].anchor_verb == 3

    def test_light_verb_pattern(self, verbphrase_fixtures):
        g = verbphrase_fixtures["vp-alqaeda"]
        phrases = match_relation_phrases(g)
        assert [p.span.rendered for p in phrases] == ["claimed responsibility for"]
        assert "VW*P" in phrases[0].alternatives_used

    def test_verbless_sentence_empty(self, misc):
        assert match_relation_phrases(misc["misc-punct"]) == []

    def test_spans_revalidate(self, all_fixture_graphs):
        for g in all_fixture_graphs.values():
            for p in match_relation_phrases(g):
                assert revalidates(g, p.span.token_indices), p.span.rendered

    def test_longest_match(self, all_fixture_graphs):
        for g in all_fixture_graphs.values():
            for p in match_relation_phrases(g):
                nxt = p.span.end + 1
                if nxt > len(g) or g.token(nxt).upos == "PUNCT":
                    continue
                extended = p.span.token_indices + (nxt,)
                assert not revalidates(g, extended), p.span.rendered


class TestLexicalConstraint:
    def test_empty_lexicon_is_identity(self, verbphrase_fixtures):
        g = verbphrase_fixtures["vp-award"]
        phrases = match_relation_phrases(g)
        assert apply_lexical_constraint(phrases, PatternLexicon()) == phrases
        assert apply_lexical_constraint(phrases, None) == phrases

    def test_normalization_is_lemma_based(self, verbphrase_fixtures):
        g = verbphrase_fixtures["vp-award"]
        (phrase,) = match_relation_phrases(g)
        assert phrase.normalized == "be award"
        kept = apply_lexical_constraint([phrase], PatternLexicon(frozenset({"be award"})))
        assert kept == [phrase]

    def test_non_member_filtered(self, verbphrase_fixtures):
        g = verbphrase_fixtures["vp-award"]
        phrases = match_relation_phrases(g)
        assert apply_lexical_constraint(phrases, PatternLexicon(frozenset({"be bear"}))) == []

    def test_preposition_keeps_surface(self, verbphrase_fixtures):
        g = verbphrase_fixtures["vp-hq"]
        (phrase,) = match_relation_phrases(g)
        assert phrase.normalized == "be headquarter in"


class TestFindArguments:
    def test_award_pair(self, verbphrase_fixtures):
        g = verbphrase_fixtures["vp-award"]
        (phrase,) = match_relation_phrases(g)
        arg1, arg2 = find_arguments(g, phrase)
        assert arg1.rendered == "Albert Einstein"
        assert arg2.rendered == "the Nobel Prize"

    def test_existential_there_blocks_side(self, guards):
        g = guards["guard-there"]
        (phrase,) = match_relation_phrases(g)
        assert phrase.span.rendered == "were"
        assert find_arguments(g, phrase) is None

    def test_no_left_chunk_means_absent(self, misc):
        g = misc["misc-runs"]
        (phrase,) = match_relation_phrases(g)
        assert find_arguments(g, phrase) is None


class TestExtract:
    def test_fig4_tuple(self, verbphrase_fixtures):
        records = extract_verb_phrase(verbphrase_fixtures["vp-hq"])
        tuples = [(r.arg1.rendered, r.rel.text, r.arg2.text) for r in records]
        assert ("Apple Inc.", "is headquartered in", "California") in tuples

    def test_author_relation(self, verbphrase_fixtures):
        records = extract_verb_phrase(verbphrase_fixtures["vp-author"])
        tuples = [(r.arg1.rendered, r.rel.text, r.arg2.text) for r in records]
        assert ("William Shakespeare", "is author of", "Romeo and Juliet") in tuples

    def test_no_matrix_subject_leakage(self, guards):
        records = extract_verb_phrase(guards["guard-peter"])
        for r in records:
            assert not (r.arg1.rendered == "Peter" and "began" in r.rel.text)
        tuples = [(r.arg1.rendered, r.rel.text, r.arg2.text) for r in records]
        assert ("John", "began his career as", "a scientist") in tuples

    def test_empty_sentence(self, misc):
        assert extract_verb_phrase(misc["misc-punct"]) == []

    def test_anchoring_invariant(self, all_fixture_graphs):
        for g in all_fixture_graphs.values():
            for r in extract_verb_phrase(g):
                assert r.arg1.end < r.rel.span.start
                assert r.rel.span.end < r.arg2.span.start

"""Post-extraction context: attribution of embedded claims, conditional
clause modifiers, and a small noun-mediated rule pack.

Annotators never add, drop or reorder records; they only fill the
``attributed_to`` and ``clausal_modifier`` fields.
"""
from __future__ import annotations

from dataclasses import replace
from pathlib import Path
from typing import Iterable, Optional

from .model import (
    EXTRACTOR_NOUN,
    ArgSpan,
    ExtractionRecord,
    PhraseSpan,
    RelationSpan,
    SentenceGraph,
    SUBJECT_DEPRELS,
    make_span,
    subtree_yield,
)

DEFAULT_ATTRIBUTION_VERBS = frozenset({
    "believe", "say", "claim", "think", "state", "argue", "report", "suggest",
})
DEFAULT_MODIFIER_MARKERS = frozenset({
    "if", "unless", "when", "although", "while", "because",
})
DEFAULT_RELATIONAL_NOUNS = frozenset({
    "founder", "co-founder", "president", "ceo", "author", "director", "capital",
})


def load_word_list(path: str | Path) -> frozenset[str]:
    """Newline-delimited lower-case entries; '#' lines are comments."""
    entries = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.add(line.lower())
    return frozenset(entries)


def _relation_anchor(record: ExtractionRecord) -> int:
    return record.rel.span.head_index


def _existential(tok) -> bool:
    return tok.deprel == "expl" or tok.surface.lower() == "there"


def _subject_of(graph: SentenceGraph, verb: int) -> Optional[PhraseSpan]:
    for c in graph.children_of(verb):
        if graph.token(c).deprel in SUBJECT_DEPRELS:
            return subtree_yield(graph, c)
    return None


def annotate_attribution(
    graph: SentenceGraph,
    records: list[ExtractionRecord],
    attribution_verbs: Optional[frozenset[str]] = None,
) -> list[ExtractionRecord]:
    """Attach (matrix subject, matrix verb lemma) to records extracted from
    inside a clausal complement of an attribution verb."""
    verbs = DEFAULT_ATTRIBUTION_VERBS if attribution_verbs is None else attribution_verbs
    scopes = []
    for tok in graph.tokens:
        if tok.deprel != "ccomp":
            continue
        matrix = graph.token(tok.head) if tok.head > 0 else None
        if matrix is None or matrix.lemma.lower() not in verbs:
            continue
        subject = _subject_of(graph, matrix.index)
        if subject is None:
            continue
        scopes.append((graph.descendants(tok.index), subject.rendered, matrix.lemma.lower()))
    if not scopes:
        return list(records)
    out = []
    for record in records:
        anchor = _relation_anchor(record)
        annotated = record
        for members, subject_text, verb_lemma in scopes:
            if anchor in members:
                annotated = replace(record, attributed_to=(subject_text, verb_lemma))
                break
        out.append(annotated)
    return out


def annotate_clausal_modifier(
    graph: SentenceGraph,
    records: list[ExtractionRecord],
    markers: Optional[frozenset[str]] = None,
) -> list[ExtractionRecord]:
    """Attach (marker, adverbial clause text) to records from the matrix
    clause of a marked adverbial clause."""
    marker_set = DEFAULT_MODIFIER_MARKERS if markers is None else markers
    scopes = []
    for tok in graph.tokens:
        if tok.deprel != "advcl":
            continue
        mark_tok = None
        for c in graph.children_of(tok.index):
            child = graph.token(c)
            if child.deprel == "mark" and child.surface.lower() in marker_set:
                mark_tok = child
                break
        if mark_tok is None:
            continue
        clause_span = subtree_yield(graph, tok.index, frozenset({"mark", "punct"}))
        scopes.append((graph.descendants(tok.index), mark_tok.surface.lower(), clause_span.rendered))
    if not scopes:
        return list(records)
    out = []
    for record in records:
        anchor = _relation_anchor(record)
        if any(anchor in members for members, _, _ in scopes):
            out.append(record)  # the record lives inside a conditional clause
        else:
            _, marker, clause_text = scopes[0]
            out.append(replace(record, clausal_modifier=(marker, clause_text)))
    return out


def _nominal_yield_excluding(
    graph: SentenceGraph, head: int, skip: int
) -> Optional[PhraseSpan]:
    dropped = graph.descendants(skip)
    indices = [
        i
        for i in graph.descendants(head)
        if i not in dropped and graph.token(i).deprel != "punct"
    ]
    if head not in indices:
        return None
    return make_span(graph, indices, head)


def noun_mediated_rules(
    graph: SentenceGraph,
    relational_nouns: Optional[frozenset[str]] = None,
) -> list[ExtractionRecord]:
    """Fixed noun-mediated patterns.

    (a) compound title: N1 <-compound- R -compound-> N2 head
        "Microsoft co-founder Bill Gates"  ->  (Bill Gates, be co-founder of, Microsoft)
    (b) appositive: X ,appos-> R -nmod(of)-> Y
        "Bill Gates, co-founder of Microsoft"  ->  (Bill Gates, be co-founder of, Microsoft)
    """
    nouns = DEFAULT_RELATIONAL_NOUNS if relational_nouns is None else relational_nouns
    records = []
    for tok in graph.tokens:
        if tok.upos not in ("NOUN", "PROPN") or tok.lemma.lower() not in nouns:
            continue
        rel = RelationSpan(
            span=make_span(graph, [tok.index], tok.index),
            text=f"be {tok.lemma.lower()} of",
        )
        if tok.deprel == "compound" and tok.head > 0:
            outer = graph.token(tok.head)
            if not outer.is_nominal or _existential(outer):
                continue
            inner = None
            for c in graph.children_of(tok.index):
                child = graph.token(c)
                if child.deprel in ("compound", "nmod") and child.is_nominal:
                    inner = child
                    break
            if inner is None:
                continue
            arg1 = _nominal_yield_excluding(graph, outer.index, tok.index)
            if arg1 is None:
                continue
            arg2 = subtree_yield(graph, inner.index)
            records.append(
                ExtractionRecord(
                    sentence_id=graph.sentence_id,
                    extractor=EXTRACTOR_NOUN,
                    arg1=arg1,
                    rel=rel,
                    arg2=ArgSpan(span=arg2),
                )
            )
        elif tok.deprel == "appos" and tok.head > 0:
            outer = graph.token(tok.head)
            if not outer.is_nominal or _existential(outer):
                continue
            target = None
            for c in graph.children_of(tok.index):
                child = graph.token(c)
                if child.deprel != "nmod" or not child.is_nominal:
                    continue
                has_of = any(
                    graph.token(g).deprel == "case" and graph.token(g).surface.lower() == "of"
                    for g in graph.children_of(c)
                )
                if has_of:
                    target = child
                    break
            if target is None:
                continue
            arg1 = _nominal_yield_excluding(graph, outer.index, tok.index)
            if arg1 is None:
                continue
            case_tokens = {
                g
                for g in graph.children_of(target.index)
                if graph.token(g).deprel == "case"
            }
            indices = [i for i in graph.descendants(target.index) if i not in case_tokens]
            arg2 = make_span(graph, indices, target.index)
            records.append(
                ExtractionRecord(
                    sentence_id=graph.sentence_id,
                    extractor=EXTRACTOR_NOUN,
                    arg1=arg1,
                    rel=rel,
                    arg2=ArgSpan(span=arg2),
                )
            )
    return records

"""Verb-phrase relation extraction: longest POS-pattern match plus nearest
noun-phrase arguments.

The pattern grammar over a sentence's POS tags is

    V | VP | VW*P
    V = verb particle? adv?
    W = noun | adj | adv | pron | det
    P = prep | particle | inf. marker

Matching starts at every verb-category token, takes the longest sequence,
and merges adjacent matches into a single relation phrase.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .model import (
    EXTRACTOR_VERB,
    ArgSpan,
    ExtractionRecord,
    PhraseSpan,
    RelationSpan,
    SentenceGraph,
    Token,
    make_span,
    noun_phrase_chunks,
)

W_TAGS = frozenset({"NOUN", "PROPN", "ADJ", "ADV", "PRON", "DET"})
P_TAGS = frozenset({"ADP", "PART"})
VERB_TAGS = frozenset({"VERB", "AUX"})

WH_WORDS = frozenset({
    "what", "who", "whom", "which", "whose", "where", "when", "why", "how", "that",
})
# Punctuation that separates clause regions; arguments never reach across it.
BARRIER_PUNCT = frozenset({",", ";", ":"})


@dataclass(frozen=True)
class RelationPhraseSpan:
    """A matched relation phrase and the grammar alternatives it merged."""

    span: PhraseSpan
    alternatives_used: tuple[str, ...]
    anchor_verb: int
    normalized: str


@dataclass(frozen=True)
class PatternLexicon:
    """Optional whitelist of normalized relation strings; empty accepts all."""

    entries: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if any(not e for e in self.entries):
            raise ValueError("lexicon entries must be non-empty strings")

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def __contains__(self, normalized: str) -> bool:
        return normalized in self.entries

    @classmethod
    def from_file(cls, path: str | Path) -> "PatternLexicon":
        entries = set()
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                entries.add(line.lower())
        return cls(frozenset(entries))


def normalize_relation(graph: SentenceGraph, indices: tuple[int, ...]) -> str:
    """Lemma for every token except P-category tokens, which keep their
    surface form; all lower-cased."""
    parts = []
    for i in indices:
        tok = graph.token(i)
        parts.append(tok.surface.lower() if tok.upos in P_TAGS else tok.lemma.lower())
    return " ".join(parts)


def _match_at(graph: SentenceGraph, start: int) -> tuple[int, str]:
    """Longest single match starting at verb ``start``.

    Returns (inclusive end index, alternative label). Purely POS-driven so
    the same decision is reproducible from the tag sequence alone.
    """
    n = len(graph)
    end = start
    j = start + 1
    if j <= n and graph.token(j).upos == "PART":
        end = j
        j += 1
    if j <= n and graph.token(j).upos == "ADV":
        end = j
        j += 1
    k = j
    while k <= n and graph.token(k).upos in W_TAGS:
        k += 1
    if k <= n and graph.token(k).upos in P_TAGS:
        label = "VP" if k == j else "VW*P"
        return k, label
    return end, "V"


def match_relation_phrases(graph: SentenceGraph) -> list[RelationPhraseSpan]:
    """All merged relation phrases of the sentence, sorted by start index."""
    segments: list[tuple[int, int, str]] = []
    i = 1
    n = len(graph)
    while i <= n:
        if graph.token(i).upos in VERB_TAGS:
            end, label = _match_at(graph, i)
            segments.append((i, end, label))
            i = end + 1
        else:
            i += 1
    merged: list[list] = []
    for start, end, label in segments:
        if merged and merged[-1][1] + 1 == start:
            merged[-1][1] = end
            merged[-1][2].append(label)
        else:
            merged.append([start, end, [label]])
    phrases = []
    for start, end, labels in merged:
        indices = tuple(range(start, end + 1))
        span = make_span(graph, indices, start)
        phrases.append(
            RelationPhraseSpan(
                span=span,
                alternatives_used=tuple(labels),
                anchor_verb=start,
                normalized=normalize_relation(graph, indices),
            )
        )
    return phrases


def apply_lexical_constraint(
    phrases: list[RelationPhraseSpan], lexicon: Optional[PatternLexicon]
) -> list[RelationPhraseSpan]:
    if lexicon is None or lexicon.is_empty:
        return list(phrases)
    return [p for p in phrases if p.normalized in lexicon]


def _eligible_argument(graph: SentenceGraph, chunk: PhraseSpan) -> bool:
    head: Token = graph.token(chunk.head_index)
    if head.deprel == "expl":
        return False
    surface = head.surface.lower()
    if surface == "there":
        return False
    if head.upos == "PRON" and surface in WH_WORDS:
        return False
    return True


def _barrier_between(graph: SentenceGraph, lo: int, hi: int) -> bool:
    return any(
        graph.token(i).upos == "PUNCT" and graph.token(i).surface in BARRIER_PUNCT
        for i in range(lo + 1, hi)
    )


def find_arguments(
    graph: SentenceGraph,
    rel: RelationPhraseSpan,
    chunks: Optional[list[PhraseSpan]] = None,
) -> Optional[tuple[PhraseSpan, PhraseSpan]]:
    """Nearest eligible noun-phrase chunk on each side of the relation.

    Existential, wh- and relative-pronoun chunks are skipped; separating
    punctuation between a candidate and the relation blocks that side.
    """
    if chunks is None:
        chunks = noun_phrase_chunks(graph)
    arg1 = None
    for chunk in sorted(chunks, key=lambda c: c.end, reverse=True):
        if chunk.end >= rel.span.start:
            continue
        if _barrier_between(graph, chunk.end, rel.span.start):
            break
        if _eligible_argument(graph, chunk):
            arg1 = chunk
            break
    arg2 = None
    for chunk in sorted(chunks, key=lambda c: c.start):
        if chunk.start <= rel.span.end:
            continue
        if _barrier_between(graph, rel.span.end, chunk.start):
            break
        if _eligible_argument(graph, chunk):
            arg2 = chunk
            break
    if arg1 is None or arg2 is None:
        return None
    return arg1, arg2


def extract_verb_phrase(
    graph: SentenceGraph, lexicon: Optional[PatternLexicon] = None
) -> list[ExtractionRecord]:
    """match -> lexical constraint -> nearest arguments, one record per phrase."""
    phrases = apply_lexical_constraint(match_relation_phrases(graph), lexicon)
    chunks = noun_phrase_chunks(graph)
    records = []
    for phrase in phrases:
        pair = find_arguments(graph, phrase, chunks)
        if pair is None:
            continue
        arg1, arg2 = pair
        records.append(
            ExtractionRecord(
                sentence_id=graph.sentence_id,
                extractor=EXTRACTOR_VERB,
                arg1=arg1,
                rel=RelationSpan(span=phrase.span, text=phrase.span.rendered),
                arg2=ArgSpan(span=arg2),
            )
        )
    return records

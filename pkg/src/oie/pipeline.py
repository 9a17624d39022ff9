"""Per-sentence extraction pipeline with optional process-pool fan-out.

Sentences are processed independently; output order follows input order via
ordered pool iteration, so results are byte-identical for any worker count.
"""
from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .clauses import VerbLists, extract_clauses
from .context import (
    DEFAULT_ATTRIBUTION_VERBS,
    DEFAULT_MODIFIER_MARKERS,
    DEFAULT_RELATIONAL_NOUNS,
    annotate_attribution,
    annotate_clausal_modifier,
    noun_mediated_rules,
)
from .model import ExtractionRecord, SentenceGraph
from .verbphrase import PatternLexicon, extract_verb_phrase

EXTRACTOR_CHOICES = ("verb", "clause", "noun")


@dataclass(frozen=True)
class ExtractOptions:
    extractors: tuple[str, ...] = EXTRACTOR_CHOICES
    lexicon: Optional[PatternLexicon] = None
    verb_lists: VerbLists = field(default_factory=VerbLists)
    attribution_verbs: frozenset[str] = DEFAULT_ATTRIBUTION_VERBS
    modifier_markers: frozenset[str] = DEFAULT_MODIFIER_MARKERS
    relational_nouns: frozenset[str] = DEFAULT_RELATIONAL_NOUNS
    workers: int = 1

    def __post_init__(self) -> None:
        unknown = set(self.extractors) - set(EXTRACTOR_CHOICES)
        if unknown:
            raise ValueError(f"unknown extractors: {sorted(unknown)}")


def extract_sentence(
    graph: SentenceGraph, options: ExtractOptions
) -> list[ExtractionRecord]:
    """Run the selected extractors and annotators over one sentence."""
    records: list[ExtractionRecord] = []
    if "verb" in options.extractors:
        records.extend(extract_verb_phrase(graph, options.lexicon))
    if "clause" in options.extractors:
        records.extend(extract_clauses(graph, options.verb_lists))
    if "noun" in options.extractors:
        records.extend(noun_mediated_rules(graph, options.relational_nouns))
    records = annotate_attribution(graph, records, options.attribution_verbs)
    records = annotate_clausal_modifier(graph, records, options.modifier_markers)
    seen: set[tuple] = set()
    unique = []
    for record in records:
        key = record.key()
        if key in seen:
            continue
        seen.add(key)
        unique.append(record)
    unique.sort(key=lambda r: (r.extractor, r.rel.span.start, r.arg1.start))
    return unique


_POOL_OPTIONS: Optional[ExtractOptions] = None


def _pool_init(options: ExtractOptions) -> None:
    global _POOL_OPTIONS
    _POOL_OPTIONS = options


def _pool_work(graph: SentenceGraph) -> list[ExtractionRecord]:
    assert _POOL_OPTIONS is not None
    return extract_sentence(graph, _POOL_OPTIONS)


def run_extract(
    graphs: Iterable[SentenceGraph], options: Optional[ExtractOptions] = None
) -> Iterator[ExtractionRecord]:
    """Stream records over a corpus in input sentence order."""
    if options is None:
        options = ExtractOptions()
    if options.workers <= 1:
        for graph in graphs:
            yield from extract_sentence(graph, options)
        return
    with multiprocessing.Pool(
        processes=options.workers, initializer=_pool_init, initargs=(options,)
    ) as pool:
        for batch in pool.imap(_pool_work, graphs, chunksize=4):
            yield from batch

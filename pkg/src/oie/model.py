"""Core data model: tokens, sentence graphs, phrase spans, extraction records.

Everything here is immutable after construction and safe to share across
worker processes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

UPOS_TAGS = frozenset({
    "NOUN", "PROPN", "PRON", "VERB", "AUX", "ADJ", "ADV", "ADP", "DET",
    "PART", "NUM", "CCONJ", "SCONJ", "PUNCT", "SYM", "INTJ", "X",
})

NOMINAL_TAGS = frozenset({"NOUN", "PROPN", "PRON"})
VERBAL_TAGS = frozenset({"VERB", "AUX"})

# Older Stanford-style labels normalized to UD v2 so both fixture styles load.
DEPREL_ALIASES = {
    "nsubjpass": "nsubj:pass",
    "csubjpass": "csubj:pass",
    "auxpass": "aux:pass",
    "dobj": "obj",
    "neg": "advmod",
    "tmod": "obl:tmod",
    "prt": "compound:prt",
    "poss": "nmod:poss",
    "relcl": "acl:relcl",
}

SUBJECT_DEPRELS = frozenset({"nsubj", "nsubj:pass", "csubj", "csubj:pass"})

EXTRACTOR_VERB = "verb-phrase"
EXTRACTOR_CLAUSE = "clause"
EXTRACTOR_NOUN = "noun-rule"
EXTRACTOR_IDS = (EXTRACTOR_VERB, EXTRACTOR_CLAUSE, EXTRACTOR_NOUN)


def normalize_deprel(deprel: str) -> str:
    return DEPREL_ALIASES.get(deprel, deprel)


class GraphError(ValueError):
    """A token or sentence violates a structural invariant."""


@dataclass(frozen=True)
class Token:
    """One token of a parsed sentence (1-based index, head 0 = root)."""

    index: int
    surface: str
    lemma: str
    upos: str
    head: int
    deprel: str

    def __post_init__(self) -> None:
        if self.index < 1:
            raise GraphError(f"token index must be >= 1, got {self.index}")
        if self.head < 0:
            raise GraphError(f"token head must be >= 0, got {self.head}")
        if self.head == self.index:
            raise GraphError(f"token {self.index} is its own head")
        if self.upos not in UPOS_TAGS:
            raise GraphError(f"unknown UPOS {self.upos!r} on token {self.index}")
        object.__setattr__(self, "deprel", normalize_deprel(self.deprel))

    @property
    def is_nominal(self) -> bool:
        return self.upos in NOMINAL_TAGS

    @property
    def is_verbal(self) -> bool:
        return self.upos in VERBAL_TAGS


@dataclass(frozen=True)
class SentenceGraph:
    """A dependency-parsed sentence with validated tree structure."""

    sentence_id: str
    text: str
    tokens: tuple[Token, ...]
    children: dict[int, tuple[int, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.tokens)
        roots = []
        kids: dict[int, list[int]] = {i: [] for i in range(0, n + 1)}
        for pos, tok in enumerate(self.tokens, start=1):
            if tok.index != pos:
                raise GraphError(
                    f"token indices must be contiguous from 1, got {tok.index} at position {pos}"
                )
            if tok.head > n:
                raise GraphError(f"token {tok.index} has head {tok.head} beyond sentence end")
            if tok.head == 0:
                roots.append(tok.index)
            kids[tok.head].append(tok.index)
        if n > 0 and len(roots) != 1:
            raise GraphError(f"sentence must have exactly one root, got {len(roots)}")
        # Cycle check: every token must reach the root in at most n steps.
        for tok in self.tokens:
            seen = 0
            cur = tok.index
            while cur != 0:
                cur = self.tokens[cur - 1].head
                seen += 1
                if seen > n:
                    raise GraphError(f"head links form a cycle through token {tok.index}")
        object.__setattr__(
            self, "children", {h: tuple(c) for h, c in kids.items()}
        )

    def __len__(self) -> int:
        return len(self.tokens)

    def token(self, index: int) -> Token:
        if not 1 <= index <= len(self.tokens):
            raise GraphError(f"token index {index} out of range")
        return self.tokens[index - 1]

    @property
    def root_index(self) -> int:
        for tok in self.tokens:
            if tok.head == 0:
                return tok.index
        raise GraphError("empty sentence has no root")

    def children_of(self, index: int) -> tuple[int, ...]:
        return self.children.get(index, ())

    def descendants(self, index: int) -> set[int]:
        """All indices reachable from ``index`` through child links, inclusive."""
        out = {index}
        stack = [index]
        while stack:
            for c in self.children_of(stack.pop()):
                if c not in out:
                    out.add(c)
                    stack.append(c)
        return out


@dataclass(frozen=True)
class PhraseSpan:
    """A set of token indices rendered in surface order."""

    token_indices: tuple[int, ...]
    head_index: int
    rendered: str

    def __post_init__(self) -> None:
        if not self.token_indices:
            raise GraphError("phrase span must be non-empty")
        if list(self.token_indices) != sorted(set(self.token_indices)):
            raise GraphError("span indices must be strictly increasing")
        if self.head_index not in self.token_indices:
            raise GraphError("span head must be a member of the span")

    @property
    def start(self) -> int:
        return self.token_indices[0]

    @property
    def end(self) -> int:
        return self.token_indices[-1]


def make_span(graph: SentenceGraph, indices: Iterable[int], head_index: int) -> PhraseSpan:
    ordered = tuple(sorted(set(indices)))
    rendered = " ".join(graph.token(i).surface for i in ordered)
    return PhraseSpan(ordered, head_index, rendered)


def subtree_yield(
    graph: SentenceGraph,
    root_index: int,
    exclusions: frozenset[str] | set[str] = frozenset(),
) -> PhraseSpan:
    """Span of all tokens reachable from ``root_index`` by child links.

    Children whose dependency label is in ``exclusions`` are skipped together
    with their own subtrees, at every level.
    """
    graph.token(root_index)
    keep = [root_index]
    stack = [root_index]
    while stack:
        for c in graph.children_of(stack.pop()):
            if graph.token(c).deprel in exclusions:
                continue
            keep.append(c)
            stack.append(c)
    return make_span(graph, keep, root_index)


# Labels that never belong inside a noun-phrase chunk: clausal material,
# adpositional modifiers, predicates and functional scaffolding. nmod:poss is
# deliberately absent so possessives stay inside the chunk.
CHUNK_EXCLUSIONS = frozenset({
    "acl", "acl:relcl", "advcl", "ccomp", "xcomp", "csubj", "csubj:pass",
    "nsubj", "nsubj:pass", "expl", "cop", "aux", "aux:pass",
    "obl", "obl:tmod", "obl:npmod", "nmod", "obj", "iobj",
    "mark", "punct", "advmod", "discourse", "parataxis", "vocative", "dep",
})


def _chunk_span(graph: SentenceGraph, head: int) -> PhraseSpan:
    full = subtree_yield(graph, head, CHUNK_EXCLUSIONS)
    # Drop the chunk head's own adposition (and anything under it); embedded
    # case tokens such as a possessive 's are preserved.
    dropped: set[int] = set()
    for c in graph.children_of(head):
        if graph.token(c).deprel == "case":
            dropped |= graph.descendants(c)
    indices = [i for i in full.token_indices if i not in dropped]
    return make_span(graph, indices, head)


def noun_phrase_chunks(graph: SentenceGraph) -> list[PhraseSpan]:
    """Non-overlapping noun-phrase spans, one per surviving nominal head.

    Nominal tokens already covered by an emitted span are suppressed; heads
    are visited shallowest-first so the widest phrase wins.
    """
    depths: dict[int, int] = {}
    for tok in graph.tokens:
        d = 0
        cur = tok.index
        while cur != 0:
            cur = graph.token(cur).head
            d += 1
        depths[tok.index] = d
    covered: set[int] = set()
    chunks: list[PhraseSpan] = []
    heads = [t.index for t in graph.tokens if t.is_nominal]
    for head in sorted(heads, key=lambda i: (depths[i], i)):
        if head in covered:
            continue
        span = _chunk_span(graph, head)
        if any(i in covered for i in span.token_indices):
            # Keep chunks disjoint even on unusual trees: fall back to the
            # uncovered remainder around the head.
            indices = [i for i in span.token_indices if i not in covered]
            if head not in indices:
                continue
            span = make_span(graph, indices, head)
        covered.update(span.token_indices)
        chunks.append(span)
    chunks.sort(key=lambda s: s.start)
    return chunks


@dataclass(frozen=True)
class RelationSpan:
    """Relation phrase: provenance tokens plus the rendered relation string.

    ``text`` differs from the raw token join when a preposition was absorbed
    from a following constituent or the relation is noun-mediated.
    """

    span: PhraseSpan
    text: str


@dataclass(frozen=True)
class ArgSpan:
    """Argument slot with an optional (possibly bracketed) preposition."""

    span: PhraseSpan
    prep: Optional[str] = None
    bracketed: bool = False

    @property
    def text(self) -> str:
        if self.prep is None:
            return self.span.rendered
        if self.bracketed:
            return f"[{self.prep}] {self.span.rendered}"
        return f"{self.prep} {self.span.rendered}"


@dataclass(frozen=True)
class ExtractionRecord:
    """Final output unit shared by all extractors."""

    sentence_id: str
    extractor: str
    arg1: PhraseSpan
    rel: RelationSpan
    arg2: Optional[ArgSpan] = None
    extra_args: tuple[ArgSpan, ...] = ()
    clause_type: Optional[str] = None
    attributed_to: Optional[tuple[str, str]] = None  # (subject text, verb lemma)
    clausal_modifier: Optional[tuple[str, str]] = None  # (marker, clause text)
    confidence: float = 1.0

    def __post_init__(self) -> None:
        if self.extractor not in EXTRACTOR_IDS:
            raise GraphError(f"unknown extractor id {self.extractor!r}")
        if not self.arg1.token_indices or not self.rel.span.token_indices:
            raise GraphError("arg1 and rel must be non-empty")

    def key(self) -> tuple:
        """Identity tuple used for per-sentence deduplication."""
        return (
            self.arg1.rendered,
            self.rel.text,
            self.arg2.text if self.arg2 else "",
            tuple(a.text for a in self.extra_args),
            self.extractor,
        )

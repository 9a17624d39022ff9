"""Clause detection, clause-type classification and n-ary proposition
generation.

One clause is built per subject dependency. The classifier is an ordered
decision tree over the clause's constituents, backed by three overridable
verb lists; all adverbials it does not mark obligatory are optional.
Propositions then expand each clause into its base pattern plus one extended
pattern per optional adverbial (plus a combined form when there are two or
more).
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from .model import (
    EXTRACTOR_CLAUSE,
    ArgSpan,
    ExtractionRecord,
    PhraseSpan,
    RelationSpan,
    SentenceGraph,
    SUBJECT_DEPRELS,
    make_span,
    subtree_yield,
)

SV = "SV"
SVA = "SVA"
SVC = "SVC"
SVO = "SVO"
SVOO = "SVOO"
SVOA = "SVOA"
SVOC = "SVOC"
CLAUSE_TYPES = frozenset({SV, SVA, SVC, SVO, SVOO, SVOA, SVOC})

DEFAULT_COPULAR = frozenset({
    "be", "seem", "appear", "become", "remain", "stay", "look", "sound",
    "feel", "taste", "smell",
})
DEFAULT_ADVERBIAL_REQUIRING = frozenset({
    "be", "remain", "stay", "live", "reside", "put", "place", "show",
    "lead", "go", "come",
})
DEFAULT_OBJECT_COMPLEMENT = frozenset({
    "declare", "make", "name", "call", "consider", "elect", "appoint", "find",
})


@dataclass(frozen=True)
class VerbLists:
    """Verb knowledge consumed by the classifier; sets may overlap."""

    copular: frozenset[str] = DEFAULT_COPULAR
    adverbial_requiring: frozenset[str] = DEFAULT_ADVERBIAL_REQUIRING
    object_complement: frozenset[str] = DEFAULT_OBJECT_COMPLEMENT

    @classmethod
    def from_file(cls, path: str | Path) -> "VerbLists":
        """Load the three-section config: [copular] / [adverbial_requiring] /
        [object_complement], one lemma per line."""
        sections: dict[str, set[str]] = {
            "copular": set(),
            "adverbial_requiring": set(),
            "object_complement": set(),
        }
        current: Optional[str] = None
        for raw in Path(path).read_text(encoding="utf-8").splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("[") and line.endswith("]"):
                name = line[1:-1].strip().lower()
                if name not in sections:
                    raise ValueError(f"unknown verb-list section {name!r}")
                current = name
                continue
            if current is None:
                raise ValueError(f"lemma {line!r} appears before any section header")
            sections[current].add(line.lower())
        return cls(
            copular=frozenset(sections["copular"]),
            adverbial_requiring=frozenset(sections["adverbial_requiring"]),
            object_complement=frozenset(sections["object_complement"]),
        )


@dataclass(frozen=True)
class Adverbial:
    span: PhraseSpan
    prep: Optional[str] = None
    obligatory: bool = False


@dataclass(frozen=True)
class Clause:
    subject: PhraseSpan
    verb_group: PhraseSpan
    verb_lemma: str
    indirect_object: Optional[PhraseSpan] = None
    direct_object: Optional[PhraseSpan] = None
    complement: Optional[PhraseSpan] = None
    adverbials: tuple[Adverbial, ...] = ()
    clause_type: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.subject.token_indices or not self.verb_group.token_indices:
            raise ValueError("clause subject and verb group must be non-empty")


# Direct children of a predicate head whose subtrees are carved out of its
# own constituent yield (they are arguments, adjuncts or scaffolding, not
# part of the predicate phrase). Applied one level deep only, so nested
# material such as "of Romeo and Juliet" stays intact.
_PREDICATE_CHILD_EXCLUSIONS = frozenset({
    "nsubj", "nsubj:pass", "csubj", "csubj:pass", "expl",
    "cop", "aux", "aux:pass", "obj", "iobj", "xcomp", "ccomp",
    "obl", "obl:tmod", "obl:npmod", "advcl",
    "mark", "punct", "discourse", "parataxis", "vocative", "dep",
})


def _yield_without_children(
    graph: SentenceGraph, head: int, excluded_deprels: frozenset[str]
) -> PhraseSpan:
    dropped: set[int] = set()
    for c in graph.children_of(head):
        if graph.token(c).deprel in excluded_deprels:
            dropped |= graph.descendants(c)
    indices = [i for i in graph.descendants(head) if i not in dropped]
    return make_span(graph, indices, head)


def _strip_case(graph: SentenceGraph, head: int, span: PhraseSpan) -> Adverbial:
    """Turn a constituent span into an adverbial: the head's own adposition
    becomes the recorded preposition."""
    case_tokens: set[int] = set()
    for c in graph.children_of(head):
        if graph.token(c).deprel == "case":
            case_tokens |= graph.descendants(c)
    prep = " ".join(graph.token(i).surface for i in sorted(case_tokens)) or None
    indices = [i for i in span.token_indices if i not in case_tokens]
    return Adverbial(span=make_span(graph, indices, head), prep=prep)


def _adverbial_from_obl(graph: SentenceGraph, obl_index: int) -> Adverbial:
    return _strip_case(graph, obl_index, subtree_yield(graph, obl_index))


def _verb_group(graph: SentenceGraph, head: int, copula: Optional[int]) -> PhraseSpan:
    indices = [head] if copula is None else [copula]
    anchor = head if copula is None else copula
    for c in graph.children_of(head):
        if graph.token(c).deprel in ("aux", "aux:pass"):
            indices.append(c)
    return make_span(graph, indices, anchor)


def detect_clauses(graph: SentenceGraph) -> list[Clause]:
    """One clause per subject dependency; existential subjects are dropped."""
    by_governor: dict[int, int] = {}
    for tok in graph.tokens:
        if tok.deprel not in SUBJECT_DEPRELS or tok.head == 0:
            continue
        if tok.surface.lower() == "there":
            continue  # existential subject, never a clause
        by_governor.setdefault(tok.head, tok.index)  # first subject wins
    clauses = []
    for governor in sorted(by_governor):
        subj_index = by_governor[governor]
        gov = graph.token(governor)
        subject = subtree_yield(graph, subj_index)
        cop_children = [
            c for c in graph.children_of(governor) if graph.token(c).deprel == "cop"
        ]
        adverbials: list[Adverbial] = []
        iobj = dobj = complement = None
        copular = bool(cop_children) and not gov.is_verbal
        if copular:
            copula = cop_children[0]
            verb_group = _verb_group(graph, governor, copula)
            verb_lemma = graph.token(copula).lemma.lower()
            predicate = _yield_without_children(
                graph, governor, _PREDICATE_CHILD_EXCLUSIONS
            )
            has_case = any(
                graph.token(c).deprel == "case" for c in graph.children_of(governor)
            )
            if has_case:
                # Adpositional predicate ("is in Princeton"): treat it as a
                # locative adverbial, not a complement.
                adverbials.append(_strip_case(graph, governor, predicate))
            else:
                complement = predicate
        else:
            verb_group = _verb_group(graph, governor, None)
            verb_lemma = gov.lemma.lower()
            for c in graph.children_of(governor):
                deprel = graph.token(c).deprel
                if deprel == "obj" and dobj is None:
                    dobj = subtree_yield(graph, c)
                elif deprel == "iobj" and iobj is None:
                    iobj = subtree_yield(graph, c)
                elif deprel == "xcomp" and complement is None:
                    complement = subtree_yield(graph, c)
        for c in graph.children_of(governor):
            child = graph.token(c)
            if child.deprel.startswith("obl"):
                adverbials.append(_adverbial_from_obl(graph, c))
            elif not copular and child.deprel == "advmod" and child.upos == "ADV":
                adverbials.append(Adverbial(span=subtree_yield(graph, c)))
        adverbials.sort(key=lambda a: a.span.start)
        clauses.append(
            Clause(
                subject=subject,
                verb_group=verb_group,
                verb_lemma=verb_lemma,
                indirect_object=iobj,
                direct_object=dobj,
                complement=complement,
                adverbials=tuple(adverbials),
            )
        )
    return clauses


def classify_clause(clause: Clause, lists: Optional[VerbLists] = None) -> Clause:
    """Assign one of the seven clause types and mark adverbial obligatoriness.

    Ordered tree:
      1. complement and no direct object            -> SVC
      2. indirect object                            -> SVOO
      3. direct object:
           complement + object-complement verb      -> SVOC
           adverbial-requiring verb + an adverbial  -> SVOA (first obligatory)
           otherwise                                -> SVO
      4. no object:
           adverbial-requiring verb + an adverbial  -> SVA (first obligatory)
           otherwise                                -> SV
    """
    if lists is None:
        lists = VerbLists()
    lemma = clause.verb_lemma
    adverbials = [replace(a, obligatory=False) for a in clause.adverbials]

    def mark_first_obligatory() -> None:
        adverbials[0] = replace(adverbials[0], obligatory=True)

    if clause.complement is not None and clause.direct_object is None:
        ctype = SVC
    elif clause.indirect_object is not None:
        ctype = SVOO
    elif clause.direct_object is not None:
        if clause.complement is not None and lemma in lists.object_complement:
            ctype = SVOC
        elif lemma in lists.adverbial_requiring and adverbials:
            ctype = SVOA
            mark_first_obligatory()
        else:
            ctype = SVO
    else:
        if lemma in lists.adverbial_requiring and adverbials:
            ctype = SVA
            mark_first_obligatory()
        else:
            ctype = SV
    return replace(clause, clause_type=ctype, adverbials=tuple(adverbials))


@dataclass(frozen=True)
class Proposition:
    subject: PhraseSpan
    relation: RelationSpan
    args: tuple[ArgSpan, ...]
    pattern: str
    clause_type: str

    def __post_init__(self) -> None:
        if len(self.pattern) - 2 != len(self.args):
            raise ValueError(
                f"pattern {self.pattern} does not match arity {len(self.args)}"
            )


def _relation(clause: Clause, absorbed: Optional[str]) -> RelationSpan:
    text = clause.verb_group.rendered
    if absorbed:
        text = f"{text} {absorbed}"
    return RelationSpan(span=clause.verb_group, text=text)


def _base_slots(clause: Clause) -> list[tuple[PhraseSpan, Optional[str], str]]:
    """Obligatory constituents in pattern order as (span, prep, letter)."""
    ctype = clause.clause_type
    obligatory = [a for a in clause.adverbials if a.obligatory]
    if ctype == SV:
        return []
    if ctype == SVA:
        a = obligatory[0]
        return [(a.span, a.prep, "A")]
    if ctype == SVC:
        return [(clause.complement, None, "C")]
    if ctype == SVO:
        return [(clause.direct_object, None, "O")]
    if ctype == SVOO:
        slots = [(clause.indirect_object, None, "O")]
        if clause.direct_object is not None:  # degenerate parses may lack obj
            slots.append((clause.direct_object, None, "O"))
        return slots
    if ctype == SVOA:
        a = obligatory[0]
        return [(clause.direct_object, None, "O"), (a.span, a.prep, "A")]
    if ctype == SVOC:
        return [(clause.direct_object, None, "O"), (clause.complement, None, "C")]
    raise ValueError(f"clause has no classified type: {ctype!r}")


def _build(
    clause: Clause,
    slots: list[tuple[PhraseSpan, Optional[str], str]],
    displaced: list[Adverbial],
) -> Proposition:
    """Assemble one proposition; the first slot's preposition is absorbed
    into the relation, displaced adverbials keep bracketed prepositions."""
    absorbed = None
    args: list[ArgSpan] = []
    letters = []
    for pos, (span, prep, letter) in enumerate(slots):
        letters.append(letter)
        if pos == 0 and prep:
            absorbed = prep
            args.append(ArgSpan(span=span))
        else:
            args.append(ArgSpan(span=span, prep=prep))
    for adv in displaced:
        letters.append("A")
        args.append(ArgSpan(span=adv.span, prep=adv.prep, bracketed=adv.prep is not None))
    return Proposition(
        subject=clause.subject,
        relation=_relation(clause, absorbed),
        args=tuple(args),
        pattern="SV" + "".join(letters),
        clause_type=clause.clause_type,
    )


def generate_propositions(clause: Clause) -> list[Proposition]:
    """Base pattern, one extension per optional adverbial, and a combined
    all-adverbials form when two or more adverbials are optional."""
    if clause.clause_type is None:
        raise ValueError("clause must be classified before proposition generation")
    base = _base_slots(clause)
    optionals = [a for a in clause.adverbials if not a.obligatory]
    props = [_build(clause, base, [])]
    for adv in optionals:
        props.append(_build(clause, base + [(adv.span, adv.prep, "A")], []))
    if len(optionals) >= 2:
        if base:
            slots = base + [(a.span, a.prep, "A") for a in optionals]
            props.append(_build(clause, slots, []))
        else:
            # All adverbials optional: the last one in surface order fills the
            # argument slot, earlier ones trail with bracketed prepositions.
            last = optionals[-1]
            slots = [(last.span, last.prep, "A")]
            props.append(_build(clause, slots, optionals[:-1]))
    return props


def link_triples(
    graph: SentenceGraph, propositions: list[Proposition]
) -> list[ExtractionRecord]:
    """Project each proposition onto an (arg1, rel, arg2, extras) record."""
    records = []
    for prop in propositions:
        records.append(
            ExtractionRecord(
                sentence_id=graph.sentence_id,
                extractor=EXTRACTOR_CLAUSE,
                arg1=prop.subject,
                rel=prop.relation,
                arg2=prop.args[0] if prop.args else None,
                extra_args=tuple(prop.args[1:]),
                clause_type=prop.clause_type,
            )
        )
    return records


def extract_clauses(
    graph: SentenceGraph, lists: Optional[VerbLists] = None
) -> list[ExtractionRecord]:
    """detect -> classify -> propositions -> records for one sentence."""
    records = []
    for clause in detect_clauses(graph):
        classified = classify_clause(clause, lists)
        records.extend(link_triples(graph, generate_propositions(classified)))
    return records

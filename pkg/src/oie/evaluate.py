"""Scoring extracted records against gold triples, and wildcard querying."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .model import ExtractionRecord

_ARTICLES = ("a", "an", "the")
_WS = re.compile(r"\s+")

# Single-noun companions of light verbs; a bare-verb relation followed by one
# of these is the classic truncated extraction.
LIGHT_VERB_NOUNS = frozenset({
    "responsibility", "part", "place", "advantage", "care", "charge",
    "attention", "note", "action",
})


class UsageError(ValueError):
    """Caller asked for something the interface cannot answer."""


def normalize_phrase(text: str, strip_article: bool = True) -> str:
    text = _WS.sub(" ", text.strip()).lower()
    if strip_article:
        head, _, rest = text.partition(" ")
        if head in _ARTICLES and rest:
            text = rest
    return text


@dataclass(frozen=True)
class GoldRecord:
    sentence_id: str
    arg1: str
    rel: str
    arg2: Optional[str] = None
    extra_args: tuple[str, ...] = ()
    extractor: Optional[str] = None
    clause_type: Optional[str] = None
    attributed_to: Optional[tuple[str, str]] = None
    clausal_modifier: Optional[tuple[str, str]] = None

    def __post_init__(self) -> None:
        if not self.arg1 or not self.rel:
            raise ValueError("gold records need non-empty arg1 and rel")


def load_gold_jsonl(data: Union[bytes, str]) -> list[GoldRecord]:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    out = []
    for line in data.splitlines():
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        attributed = obj.get("attributed_to")
        modifier = obj.get("clausal_modifier")
        out.append(
            GoldRecord(
                sentence_id=obj["sentence_id"],
                arg1=obj["arg1"],
                rel=obj["rel"],
                arg2=obj.get("arg2"),
                extra_args=tuple(obj.get("extra_args") or ()),
                extractor=obj.get("extractor"),
                clause_type=obj.get("clause_type"),
                attributed_to=(
                    (attributed["subject"], attributed["verb"]) if attributed else None
                ),
                clausal_modifier=(
                    (modifier["marker"], modifier["clause"]) if modifier else None
                ),
            )
        )
    return out


@dataclass(frozen=True)
class RecordView:
    """Uniform read-only view over predicted records from any source."""

    sentence_id: str
    extractor: str
    arg1: str
    rel: str
    arg2: Optional[str]
    extra_args: tuple[str, ...]
    spans: Optional[dict] = None

    @classmethod
    def of(cls, record) -> "RecordView":
        if isinstance(record, RecordView):
            return record
        if isinstance(record, ExtractionRecord):
            return cls(
                sentence_id=record.sentence_id,
                extractor=record.extractor,
                arg1=record.arg1.rendered,
                rel=record.rel.text,
                arg2=record.arg2.text if record.arg2 else None,
                extra_args=tuple(a.text for a in record.extra_args),
                spans={
                    "arg1": list(record.arg1.token_indices),
                    "rel": list(record.rel.span.token_indices),
                },
            )
        if isinstance(record, GoldRecord):
            return cls(
                sentence_id=record.sentence_id,
                extractor=record.extractor or "gold",
                arg1=record.arg1,
                rel=record.rel,
                arg2=record.arg2,
                extra_args=record.extra_args,
            )
        if isinstance(record, dict):
            return cls(
                sentence_id=record["sentence_id"],
                extractor=record.get("extractor", "unknown"),
                arg1=record["arg1"],
                rel=record["rel"],
                arg2=record.get("arg2"),
                extra_args=tuple(record.get("extra_args") or ()),
                spans=record.get("spans"),
            )
        raise TypeError(f"cannot view {type(record)!r} as a record")


def load_predictions_jsonl(data: Union[bytes, str]) -> list[RecordView]:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return [
        RecordView.of(json.loads(line))
        for line in data.splitlines()
        if line.strip()
    ]


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    f1: float
    matched: int = 0
    predicted: int = 0
    gold: int = 0

    @classmethod
    def from_counts(cls, matched: int, predicted: int, gold: int) -> "Metrics":
        precision = matched / predicted if predicted else 0.0
        recall = matched / gold if gold else 0.0
        f1 = (
            2 * precision * recall / (precision + recall)
            if precision + recall > 0
            else 0.0
        )
        return cls(precision, recall, f1, matched, predicted, gold)


@dataclass(frozen=True)
class GuardCounts:
    incoherent: int = 0
    uninformative: int = 0
    existential_subjects: int = 0


@dataclass(frozen=True)
class EvalReport:
    exact: Metrics
    overlap: Metrics
    per_extractor: dict[str, Metrics] = field(default_factory=dict)
    guards: GuardCounts = GuardCounts()


def _exact_key(view: RecordView) -> tuple:
    return (
        view.sentence_id,
        normalize_phrase(view.arg1),
        normalize_phrase(view.rel, strip_article=False),
        normalize_phrase(view.arg2) if view.arg2 else "",
        tuple(sorted(normalize_phrase(a) for a in view.extra_args)),
    )


def _gold_key(gold: GoldRecord) -> tuple:
    return _exact_key(RecordView.of(gold))


def _jaccard(a: str, b: str) -> float:
    sa = set(normalize_phrase(a).split())
    sb = set(normalize_phrase(b).split())
    if not sa and not sb:
        return 1.0
    if not sa or not sb:
        return 0.0
    return len(sa & sb) / len(sa | sb)


def _match_exact(gold: Sequence[GoldRecord], views: Sequence[RecordView]) -> int:
    remaining = {}
    for g in gold:
        remaining[_gold_key(g)] = remaining.get(_gold_key(g), 0) + 1
    matched = 0
    for view in views:
        key = _exact_key(view)
        if remaining.get(key, 0) > 0:
            remaining[key] -= 1
            matched += 1
    return matched


def _match_overlap(
    gold: Sequence[GoldRecord], views: Sequence[RecordView], threshold: float
) -> int:
    """Greedy one-to-one matching by descending combined argument overlap."""
    candidates = []
    for gi, g in enumerate(gold):
        for pi, view in enumerate(views):
            if g.sentence_id != view.sentence_id:
                continue
            if normalize_phrase(g.rel, strip_article=False) != normalize_phrase(
                view.rel, strip_article=False
            ):
                continue
            if (g.arg2 is None) != (view.arg2 is None):
                continue
            j1 = _jaccard(g.arg1, view.arg1)
            j2 = _jaccard(g.arg2, view.arg2) if g.arg2 is not None else 1.0
            if j1 >= threshold and j2 >= threshold:
                candidates.append((-(j1 + j2), gi, pi))
    candidates.sort()
    used_gold: set[int] = set()
    used_pred: set[int] = set()
    matched = 0
    for _, gi, pi in candidates:
        if gi in used_gold or pi in used_pred:
            continue
        used_gold.add(gi)
        used_pred.add(pi)
        matched += 1
    return matched


def _guard_counts(views: Sequence[RecordView]) -> GuardCounts:
    existential = sum(1 for v in views if normalize_phrase(v.arg1) == "there")
    uninformative = 0
    for v in views:
        rel_tokens = v.rel.split()
        arg2_tokens = (v.arg2 or "").split()
        if (
            len(rel_tokens) == 1
            and len(arg2_tokens) == 1
            and arg2_tokens[0].lower() in LIGHT_VERB_NOUNS
        ):
            uninformative += 1
    incoherent = 0
    by_sentence: dict[str, list[RecordView]] = {}
    for v in views:
        by_sentence.setdefault(v.sentence_id, []).append(v)
    for group in by_sentence.values():
        rel_ranges = []
        for v in group:
            if v.spans and v.spans.get("rel"):
                idx = v.spans["rel"]
                rel_ranges.append((min(idx), max(idx)))
        for v in group:
            if not v.spans or not v.spans.get("arg1") or not v.spans.get("rel"):
                continue
            gap_lo = max(v.spans["arg1"])
            gap_hi = min(v.spans["rel"])
            if gap_hi <= gap_lo + 1:
                continue
            # Another relation sitting wholly between a subject and its
            # relation marks matrix-subject leakage.
            for lo, hi in rel_ranges:
                if gap_lo < lo and hi < gap_hi:
                    incoherent += 1
                    break
    return GuardCounts(
        incoherent=incoherent,
        uninformative=uninformative,
        existential_subjects=existential,
    )


def score(
    gold: Sequence[GoldRecord],
    predicted: Iterable,
    overlap_threshold: float = 0.75,
) -> EvalReport:
    """Exact-tuple and token-overlap precision/recall/F1 plus guard counts."""
    if not 0 < overlap_threshold <= 1:
        raise UsageError(f"overlap threshold must be in (0, 1], got {overlap_threshold}")
    views = [RecordView.of(p) for p in predicted]
    exact = Metrics.from_counts(_match_exact(gold, views), len(views), len(gold))
    overlap = Metrics.from_counts(
        _match_overlap(gold, views, overlap_threshold), len(views), len(gold)
    )
    per_extractor: dict[str, Metrics] = {}
    for extractor in sorted({v.extractor for v in views}):
        subset = [v for v in views if v.extractor == extractor]
        gold_subset = [g for g in gold if g.extractor in (None, extractor)]
        per_extractor[extractor] = Metrics.from_counts(
            _match_exact(gold_subset, subset), len(subset), len(gold_subset)
        )
    return EvalReport(
        exact=exact,
        overlap=overlap,
        per_extractor=per_extractor,
        guards=_guard_counts(views),
    )


def query(records: Iterable, template: tuple[str, str, str]) -> list:
    """Filter records by an (arg1, rel, arg2) template; '?' is a wildcard."""
    arg1_t, rel_t, arg2_t = template
    if arg1_t == "?" and rel_t == "?" and arg2_t == "?":
        raise UsageError("at least one template slot must be concrete")
    out = []
    for record in records:
        view = RecordView.of(record)
        if arg1_t != "?" and normalize_phrase(view.arg1) != normalize_phrase(arg1_t):
            continue
        if rel_t != "?" and normalize_phrase(
            view.rel, strip_article=False
        ) != normalize_phrase(rel_t, strip_article=False):
            continue
        if arg2_t != "?":
            if view.arg2 is None:
                continue
            if normalize_phrase(view.arg2) != normalize_phrase(arg2_t):
                continue
        out.append(record)
    return out

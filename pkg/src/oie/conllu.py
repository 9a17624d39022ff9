"""CoNLL-U reading and record serialization."""
from __future__ import annotations

import io
import json
import logging
import re
from dataclasses import dataclass
from typing import BinaryIO, Callable, Iterable, Iterator, Optional, Union

from .model import ExtractionRecord, GraphError, SentenceGraph, Token

log = logging.getLogger("oie")

_MWT_ID = re.compile(r"^\d+-\d+$")
_EMPTY_ID = re.compile(r"^\d+\.\d+$")
_SENT_ID = re.compile(r"^#\s*sent_id\s*=\s*(.+)$")
_TEXT = re.compile(r"^#\s*text\s*=\s*(.+)$")


class ConlluParseError(ValueError):
    """Malformed CoNLL-U input that cannot be interpreted at all."""


@dataclass(frozen=True)
class Corpus:
    sentences: tuple[SentenceGraph, ...]
    source: str = "<stream>"
    errors: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        ids = [s.sentence_id for s in self.sentences]
        if len(ids) != len(set(ids)):
            raise ConlluParseError(f"duplicate sentence ids in {self.source}")

    def __iter__(self) -> Iterator[SentenceGraph]:
        return iter(self.sentences)

    def __len__(self) -> int:
        return len(self.sentences)


def _decode(data: Union[bytes, str]) -> str:
    if isinstance(data, str):
        return data
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ConlluParseError(f"input is not valid UTF-8 at byte {exc.start}") from exc


def _build_sentence(
    ordinal: int,
    sent_id: Optional[str],
    text: Optional[str],
    rows: list[tuple[int, list[str]]],
) -> SentenceGraph:
    tokens = []
    for lineno, cols in rows:
        try:
            head = int(cols[6])
        except ValueError:
            raise ConlluParseError(f"line {lineno}: HEAD {cols[6]!r} is not an integer")
        try:
            index = int(cols[0])
        except ValueError:
            raise ConlluParseError(f"line {lineno}: ID {cols[0]!r} is not an integer")
        tokens.append(
            Token(
                index=index,
                surface=cols[1],
                lemma=cols[2],
                upos=cols[3],
                head=head,
                deprel=cols[7],
            )
        )
    sid = sent_id if sent_id is not None else f"s{ordinal}"
    stext = text if text is not None else " ".join(t.surface for t in tokens)
    return SentenceGraph(sentence_id=sid, text=stext, tokens=tuple(tokens))


def iter_conllu(
    data: Union[bytes, str],
    source: str = "<stream>",
    on_error: Optional[Callable[[str], None]] = None,
) -> Iterator[SentenceGraph]:
    """Yield validated sentences, skipping any that fail tree validation.

    Format-level problems (wrong column count, non-integer HEAD/ID) raise
    ConlluParseError with the offending line number; tree-level problems are
    reported through ``on_error`` and parsing continues.
    """
    text = _decode(data)
    sent_id: Optional[str] = None
    sent_text: Optional[str] = None
    rows: list[tuple[int, list[str]]] = []
    ordinal = 0

    def flush() -> Optional[SentenceGraph]:
        nonlocal sent_id, sent_text, rows, ordinal
        if not rows:
            sent_id, sent_text = None, None
            return None
        ordinal += 1
        try:
            graph = _build_sentence(ordinal, sent_id, sent_text, rows)
        except GraphError as exc:
            label = sent_id or f"s{ordinal}"
            msg = f"{source}: sentence {label} skipped: {exc}"
            log.warning("%s", msg)
            if on_error is not None:
                on_error(msg)
            graph = None
        sent_id, sent_text, rows = None, None, []
        return graph

    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip("\r")
        if not line.strip():
            graph = flush()
            if graph is not None:
                yield graph
            continue
        if line.startswith("#"):
            m = _SENT_ID.match(line)
            if m:
                sent_id = m.group(1).strip()
            m = _TEXT.match(line)
            if m:
                sent_text = m.group(1)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluParseError(f"line {lineno}: expected 10 columns, got {len(cols)}")
        if _MWT_ID.match(cols[0]) or _EMPTY_ID.match(cols[0]):
            continue  # multiword ranges and empty nodes carry no tree structure
        rows.append((lineno, cols))
    graph = flush()
    if graph is not None:
        yield graph


def parse_conllu(data: Union[bytes, str, BinaryIO], source: str = "<stream>") -> Corpus:
    """Parse a whole CoNLL-U stream into a Corpus, collecting skip reports."""
    if hasattr(data, "read"):
        data = data.read()
    errors: list[str] = []
    sentences = tuple(iter_conllu(data, source=source, on_error=errors.append))
    return Corpus(sentences=sentences, source=source, errors=tuple(errors))


def serialize_conllu(sentences: Iterable[SentenceGraph]) -> bytes:
    """Write sentences back out as CoNLL-U (unused columns as '_')."""
    buf = io.StringIO()
    for graph in sentences:
        buf.write(f"# sent_id = {graph.sentence_id}\n")
        buf.write(f"# text = {graph.text}\n")
        for tok in graph.tokens:
            buf.write(
                "\t".join(
                    [
                        str(tok.index), tok.surface, tok.lemma, tok.upos, "_", "_",
                        str(tok.head), tok.deprel, "_", "_",
                    ]
                )
                + "\n"
            )
        buf.write("\n")
    return buf.getvalue().encode("utf-8")


def _tsv_escape(value: str) -> str:
    return value.replace("\t", " ").replace("\n", " ").replace("\r", " ")


def record_to_dict(record: ExtractionRecord) -> dict:
    return {
        "sentence_id": record.sentence_id,
        "extractor": record.extractor,
        "arg1": record.arg1.rendered,
        "rel": record.rel.text,
        "arg2": record.arg2.text if record.arg2 else None,
        "extra_args": [a.text for a in record.extra_args],
        "clause_type": record.clause_type,
        "attributed_to": (
            {"subject": record.attributed_to[0], "verb": record.attributed_to[1]}
            if record.attributed_to
            else None
        ),
        "clausal_modifier": (
            {"marker": record.clausal_modifier[0], "clause": record.clausal_modifier[1]}
            if record.clausal_modifier
            else None
        ),
        "confidence": record.confidence,
        "spans": {
            "arg1": list(record.arg1.token_indices),
            "rel": list(record.rel.span.token_indices),
            "arg2": list(record.arg2.span.token_indices) if record.arg2 else None,
            "extra_args": [list(a.span.token_indices) for a in record.extra_args],
        },
    }


TSV_COLUMNS = (
    "sentence_id", "extractor", "arg1", "rel", "arg2",
    "extra_args", "clause_type", "attributed_to", "clausal_modifier", "confidence",
)


def _record_to_tsv(record: ExtractionRecord) -> str:
    attributed = (
        f"{record.attributed_to[1]}; {record.attributed_to[0]}" if record.attributed_to else ""
    )
    modifier = (
        f"{record.clausal_modifier[0]}; {record.clausal_modifier[1]}"
        if record.clausal_modifier
        else ""
    )
    cells = [
        record.sentence_id,
        record.extractor,
        record.arg1.rendered,
        record.rel.text,
        record.arg2.text if record.arg2 else "",
        ";".join(a.text for a in record.extra_args),
        record.clause_type or "",
        attributed,
        modifier,
        str(record.confidence),
    ]
    return "\t".join(_tsv_escape(c) for c in cells)


def serialize_records(records: Iterable[ExtractionRecord], format: str = "jsonl") -> bytes:
    """One record per line, input order preserved, deterministic bytes."""
    if format not in ("jsonl", "tsv"):
        raise ValueError(f"unknown format {format!r}")
    lines = []
    for record in records:
        if format == "jsonl":
            lines.append(json.dumps(record_to_dict(record), ensure_ascii=False))
        else:
            lines.append(_record_to_tsv(record))
    if not lines:
        return b""
    return ("\n".join(lines) + "\n").encode("utf-8")

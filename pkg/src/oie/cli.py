"""Command-line interface: extract, eval, query.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 all sentences failed
validation. OIE_LOG controls diagnostic verbosity (debug/info/warning/error).
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Optional

from .clauses import VerbLists
from .conllu import ConlluParseError, iter_conllu, serialize_records
from .context import (
    DEFAULT_ATTRIBUTION_VERBS,
    DEFAULT_MODIFIER_MARKERS,
    DEFAULT_RELATIONAL_NOUNS,
)
from .evaluate import (
    UsageError,
    load_gold_jsonl,
    load_predictions_jsonl,
    query,
    score,
)
from .pipeline import EXTRACTOR_CHOICES, ExtractOptions, run_extract
from .verbphrase import PatternLexicon

log = logging.getLogger("oie")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_ALL_INVALID = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        raise SystemExit_(EXIT_USAGE, f"{self.prog}: error: {message}")


class SystemExit_(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code
        self.message = message


def _configure_logging() -> None:
    level_name = os.environ.get("OIE_LOG", "warning").upper()
    level = getattr(logging, level_name, logging.WARNING)
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(message)s")


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise SystemExit_(EXIT_IO, f"cannot read {path}: {exc}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oie", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="extract records from CoNLL-U input")
    p_extract.add_argument("--input", required=True, help="CoNLL-U path or - for stdin")
    p_extract.add_argument(
        "--extractor",
        default="verb,clause,noun",
        help="comma-separated subset of verb,clause,noun",
    )
    p_extract.add_argument("--format", default="jsonl", choices=("jsonl", "tsv"))
    p_extract.add_argument("--lexicon", default=None, help="relation lexicon file")
    p_extract.add_argument("--verb-lists", default=None, help="verb-lists config file")
    p_extract.add_argument(
        "--workers", type=int, default=os.cpu_count() or 1, help="worker processes"
    )

    p_eval = sub.add_parser("eval", help="score predictions against gold records")
    p_eval.add_argument("--gold", required=True)
    p_eval.add_argument("--pred", required=True)
    p_eval.add_argument("--overlap", type=float, default=0.75)

    p_query = sub.add_parser("query", help="wildcard template over extracted records")
    p_query.add_argument("--records", required=True)
    p_query.add_argument("--arg1", default="?")
    p_query.add_argument("--rel", default="?")
    p_query.add_argument("--arg2", default="?")
    return parser


def _cmd_extract(args: argparse.Namespace) -> int:
    extractors = tuple(e.strip() for e in args.extractor.split(",") if e.strip())
    if not extractors or set(extractors) - set(EXTRACTOR_CHOICES):
        raise SystemExit_(EXIT_USAGE, f"--extractor must be a subset of {EXTRACTOR_CHOICES}")
    lexicon = None
    if args.lexicon:
        try:
            lexicon = PatternLexicon.from_file(args.lexicon)
        except OSError as exc:
            raise SystemExit_(EXIT_IO, f"cannot read lexicon: {exc}")
    verb_lists = VerbLists()
    if args.verb_lists:
        try:
            verb_lists = VerbLists.from_file(args.verb_lists)
        except OSError as exc:
            raise SystemExit_(EXIT_IO, f"cannot read verb lists: {exc}")
    options = ExtractOptions(
        extractors=extractors,
        lexicon=lexicon,
        verb_lists=verb_lists,
        workers=max(1, args.workers),
    )
    data = _read_input(args.input)
    failures: list[str] = []
    parsed = 0

    def count_and_yield():
        nonlocal parsed
        for graph in iter_conllu(data, source=args.input, on_error=failures.append):
            parsed += 1
            yield graph

    try:
        # Stream record by record; bytes are identical to one batch call.
        for record in run_extract(count_and_yield(), options):
            sys.stdout.buffer.write(serialize_records([record], format=args.format))
    except ConlluParseError as exc:
        raise SystemExit_(EXIT_IO, str(exc))
    sys.stdout.buffer.flush()
    if failures and parsed == 0:
        return EXIT_ALL_INVALID
    return EXIT_OK


def _cmd_eval(args: argparse.Namespace) -> int:
    gold = load_gold_jsonl(_read_input(args.gold))
    pred = load_predictions_jsonl(_read_input(args.pred))
    report = score(gold, pred, overlap_threshold=args.overlap)

    def line(name, m):
        print(
            f"{name}\tprecision={m.precision:.4f}\trecall={m.recall:.4f}\tf1={m.f1:.4f}"
            f"\tmatched={m.matched}\tpredicted={m.predicted}\tgold={m.gold}"
        )

    line("exact", report.exact)
    line("overlap", report.overlap)
    for extractor, metrics in report.per_extractor.items():
        line(f"extractor:{extractor}", metrics)
    g = report.guards
    print(
        f"guards\tincoherent={g.incoherent}\tuninformative={g.uninformative}"
        f"\texistential_subjects={g.existential_subjects}"
    )
    return EXIT_OK


def _cmd_query(args: argparse.Namespace) -> int:
    records = load_predictions_jsonl(_read_input(args.records))
    hits = query(records, (args.arg1, args.rel, args.arg2))
    for hit in hits:
        arg2 = hit.arg2 if hit.arg2 is not None else ""
        extras = "; ".join(hit.extra_args)
        tail = f", {extras}" if extras else ""
        print(f"({hit.arg1}, {hit.rel}, {arg2}{tail})\t[{hit.sentence_id}]")
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "extract":
            return _cmd_extract(args)
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "query":
            return _cmd_query(args)
        return EXIT_USAGE
    except SystemExit_ as exc:
        if exc.message:
            print(exc.message, file=sys.stderr)
        return exc.code
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConlluParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_IO


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()

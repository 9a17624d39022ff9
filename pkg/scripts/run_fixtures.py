#!/usr/bin/env python3
"""Run both extractors over the checked-in fixture corpora and print a
readable summary table, grouped by sentence."""
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from oie import parse_conllu  # noqa: E402
from oie.pipeline import ExtractOptions, run_extract  # noqa: E402

FIXTURES = ["table1.conllu", "verbphrase.conllu", "fig6.conllu", "guards.conllu", "misc.conllu"]


def main() -> int:
    options = ExtractOptions(workers=1)
    for name in FIXTURES:
        path = ROOT / "tests" / "data" / name
        corpus = parse_conllu(path.read_bytes(), source=name)
        print(f"== {name} ({len(corpus)} sentences)")
        current = None
        for record in run_extract(iter(corpus), options):
            if record.sentence_id != current:
                current = record.sentence_id
                graph = next(g for g in corpus if g.sentence_id == current)
                print(f"  {current}: {graph.text}")
            parts = [record.arg1.rendered, record.rel.text]
            if record.arg2:
                parts.append(record.arg2.text)
            parts.extend(a.text for a in record.extra_args)
            line = f"    [{record.extractor:>11}] ({', '.join(parts)})"
            if record.clause_type:
                line += f"  <{record.clause_type}>"
            if record.attributed_to:
                line += f"  AttributedTo {record.attributed_to[1]}; {record.attributed_to[0]}"
            if record.clausal_modifier:
                line += f"  ClausalModifier {record.clausal_modifier[0]}; {record.clausal_modifier[1]}"
            print(line)
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

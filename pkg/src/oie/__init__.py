"""Rule-based open information extraction over dependency-parsed sentences.

Two extraction paradigms over the same parsed input: verb-phrase pattern
matching with nearest-argument attachment, and clause detection with
type-driven n-ary proposition generation; plus context annotation and a
noun-mediated rule pack.
"""
from .clauses import (
    Clause,
    Proposition,
    VerbLists,
    classify_clause,
    detect_clauses,
    extract_clauses,
    generate_propositions,
    link_triples,
)
from .conllu import (
    ConlluParseError,
    Corpus,
    iter_conllu,
    parse_conllu,
    serialize_conllu,
    serialize_records,
)
from .context import (
    annotate_attribution,
    annotate_clausal_modifier,
    noun_mediated_rules,
)
from .evaluate import EvalReport, GoldRecord, UsageError, query, score
from .model import (
    ArgSpan,
    ExtractionRecord,
    GraphError,
    PhraseSpan,
    RelationSpan,
    SentenceGraph,
    Token,
    noun_phrase_chunks,
    subtree_yield,
)
from .pipeline import ExtractOptions, extract_sentence, run_extract
from .verbphrase import (
    PatternLexicon,
    RelationPhraseSpan,
    apply_lexical_constraint,
    extract_verb_phrase,
    find_arguments,
    match_relation_phrases,
)

__version__ = "0.1.0"

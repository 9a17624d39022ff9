import sys
from pathlib import Path

import pytest

SRC = Path(__file__).resolve().parent.parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from oie import SentenceGraph, Token, parse_conllu  # noqa: E402

DATA = Path(__file__).resolve().parent / "data"


def load_corpus(name):
    path = DATA / name
    return parse_conllu(path.read_bytes(), source=str(path))


def by_id(corpus):
    return {g.sentence_id: g for g in corpus}


def graph(sentence_id, rows, text=None):
    """Build a SentenceGraph from (surface, lemma, upos, head, deprel) rows."""
    tokens = tuple(
        Token(index=i, surface=s, lemma=l, upos=u, head=h, deprel=d)
        for i, (s, l, u, h, d) in enumerate(rows, start=1)
    )
    return SentenceGraph(
        sentence_id=sentence_id,
        text=text or " ".join(t.surface for t in tokens),
        tokens=tokens,
    )


@pytest.fixture(scope="session")
def table1():
    return by_id(load_corpus("table1.conllu"))


@pytest.fixture(scope="session")
def verbphrase_fixtures():
    return by_id(load_corpus("verbphrase.conllu"))


@pytest.fixture(scope="session")
def fig6():
    return by_id(load_corpus("fig6.conllu"))


@pytest.fixture(scope="session")
def guards():
    return by_id(load_corpus("guards.conllu"))


@pytest.fixture(scope="session")
def misc():
    return by_id(load_corpus("misc.conllu"))


@pytest.fixture(scope="session")
def all_fixture_graphs(table1, verbphrase_fixtures, fig6, guards, misc):
    merged = {}
    for group in (table1, verbphrase_fixtures, fig6, guards, misc):
        merged.update(group)
    return merged

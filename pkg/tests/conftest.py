from importlib import resources

import pytest

from knotcert.codec import CorpusRecord, read_corpus
from knotcert.diagram import build_diagram


def corpus_path():
    return str(resources.files("knotcert") / "data" / "knots10.jsonl")


@pytest.fixture(scope="session")
def corpus():
    recs = list(read_corpus(corpus_path()))
    assert all(isinstance(r, CorpusRecord) for r in recs)
    return recs


@pytest.fixture(scope="session")
def diagrams(corpus):
    return {r.name: build_diagram(r.pd) for r in corpus}


# acceptance lines, printed once at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])

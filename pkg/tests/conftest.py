from pathlib import Path

import pytest

from nswcat.lexer import load_lexicon, load_rules
from nswcat.taxonomy import load_taxonomy

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN_CORPUS = FIXTURES / "golden" / "corpus"
GOLDEN_ANNOTATIONS = FIXTURES / "golden" / "annotations.tsv"


@pytest.fixture(scope="session")
def taxonomy():
    return load_taxonomy()


@pytest.fixture(scope="session")
def lexicon(taxonomy):
    return load_lexicon(None, taxonomy)


@pytest.fixture(scope="session")
def rules(taxonomy):
    return load_rules(None, taxonomy)


@pytest.fixture(scope="session")
def golden_corpus_path():
    return GOLDEN_CORPUS


@pytest.fixture(scope="session")
def golden_annotations():
    """Planted (doc_id, start, end, type_name, surface) tuples."""
    rows = []
    for line in GOLDEN_ANNOTATIONS.read_text("utf-8").splitlines():
        doc_id, start, end, type_name, surface = line.split("\t")
        rows.append((doc_id, int(start), int(end), type_name, surface))
    return rows

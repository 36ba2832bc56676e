import sys
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parent.parent
FIXTURES = REPO / "fixtures"
SCHEMAS = REPO / "schemas"

sys.path.insert(0, str(REPO / "src"))

from fivepillars.corpus import load_corpus  # noqa: E402
from fivepillars.evidence import RetrievalConfig, load_blocklist  # noqa: E402
from fivepillars.geo import ingest_gazetteer  # noqa: E402
from fivepillars.mocks import load_mock_backends  # noqa: E402
from fivepillars.pipeline.run import ImageLoader  # noqa: E402


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def schemas_dir() -> Path:
    return SCHEMAS


@pytest.fixture(scope="session")
def corpus():
    return load_corpus(FIXTURES / "corpus.jsonl")


@pytest.fixture(scope="session")
def cases_by_id(corpus):
    return {case.id: case for case in corpus}


@pytest.fixture()
def backends():
    return load_mock_backends(FIXTURES)


@pytest.fixture(scope="session")
def blocklist():
    return load_blocklist(REPO / "src" / "fivepillars" / "resources" / "fc_blocklist.txt")


@pytest.fixture()
def retrieval(blocklist):
    return RetrievalConfig(fc_domain_blocklist=blocklist)


@pytest.fixture()
def image_loader(backends):
    return ImageLoader(FIXTURES, fetcher=backends.fetcher)


@pytest.fixture(scope="session")
def gazetteer():
    return ingest_gazetteer(FIXTURES / "gazetteer_fixture.tsv")

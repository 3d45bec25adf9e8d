import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for oracles / mock helpers

from apisum import ingest
from apisum.entities import EntityFilterConfig, load_denylist, load_qualifier_map

FIXTURES = Path(__file__).parent / "fixtures"
TOY_EMBEDDINGS = (
    Path(__file__).resolve().parents[1] / "src" / "apisum" / "data" / "toy_embeddings.txt"
)


@pytest.fixture(scope="session")
def fixture_jsonl() -> Path:
    return FIXTURES / "so_fixture.jsonl"


@pytest.fixture(scope="session")
def fixture_xml() -> Path:
    return FIXTURES / "so_fixture.xml"


@pytest.fixture(scope="session")
def fixture_posts(fixture_jsonl):
    with fixture_jsonl.open(encoding="utf-8") as fh:
        return list(ingest.parse_dump(fh, "jsonl"))


@pytest.fixture(scope="session")
def dataset(fixture_posts) -> ingest.Dataset:
    return ingest.filter_dataset(fixture_posts, ingest.IngestConfig())


@pytest.fixture(scope="session")
def entity_cfg() -> EntityFilterConfig:
    return EntityFilterConfig(
        denylist=load_denylist(), qualified_names=load_qualifier_map()
    )


@pytest.fixture(scope="session")
def toy_embeddings_path() -> Path:
    return TOY_EMBEDDINGS

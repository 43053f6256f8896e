from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
MINI_CORPUS = REPO_ROOT / "data" / "mini_corpus.ndjson"


@pytest.fixture(scope="session")
def mini_corpus_path() -> str:
    return str(MINI_CORPUS)

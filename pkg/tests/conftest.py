from pathlib import Path

import pytest

from alignforge.taxonomy import load_bundle
from alignforge.workspace import replay

REPO = Path(__file__).resolve().parents[1]
FIXTURES = REPO / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def full_bundle():
    """Every shipped ontology store, merged."""
    return load_bundle(FIXTURES / "ontologies")


@pytest.fixture(scope="session")
def golden_bundle():
    """The two stores the golden session aligns (mid-tier store excluded,
    so the equivalence it would make derivable stays a real decision)."""
    return load_bundle(FIXTURES / "ontologies", names=["emmo_mini", "osmo_viso_vov"])


@pytest.fixture(scope="session")
def golden_bench():
    """The golden session replayed once; treat as read-only."""
    return replay(FIXTURES / "sessions" / "golden-session.jsonl", FIXTURES)

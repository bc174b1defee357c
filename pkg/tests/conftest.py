import json
from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def golden_jacobi():
    return json.loads((GOLDEN / "jacobi.json").read_text())


@pytest.fixture(scope="session")
def golden_counts():
    return json.loads((GOLDEN / "counts.json").read_text())

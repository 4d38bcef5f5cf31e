import os
from pathlib import Path

import pytest


@pytest.fixture
def fixtures():
    default = Path(__file__).resolve().parents[2] / "fixtures"
    return Path(os.environ.get("POMODEL_FIXTURE_DIR", default))

import json
import pathlib

import pytest

from gsinv import PrecisionContext

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(30)


@pytest.fixture(scope="session")
def ctx20():
    return PrecisionContext(20)


def load_fixture(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text())

import pytest
import os
import sys
from unittest.mock import MagicMock

# Add project root to path for imports
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config import settings
from src.netattack.core.catalog import Catalog
from src.netattack.services import load_scenario


@pytest.fixture(scope="session")
def catalog():
    return Catalog.load()


@pytest.fixture
def scenario_path():
    def _path(name: str) -> str:
        return str(settings.SCENARIOS_DIR / f"{name}.json")
    return _path


@pytest.fixture
def load(scenario_path, catalog):
    def _load(name: str):
        return load_scenario(scenario_path(name), catalog=catalog)
    return _load


@pytest.fixture
def mock_event_bus():
    return MagicMock()

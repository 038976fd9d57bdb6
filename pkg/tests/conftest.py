"""
Shared fixtures for the test suite
"""

import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from backend.services.file_handler import FileHandler  # noqa: E402
from backend.utils.base_results import TableSource  # noqa: E402


@pytest.fixture(scope="session")
def file_handler(tmp_path_factory):
    return FileHandler(output_dir=tmp_path_factory.mktemp("outputs"))


@pytest.fixture(scope="session")
def fixtures(file_handler):
    return file_handler.load_all()


@pytest.fixture(scope="session")
def appendix1(fixtures):
    return fixtures.appendix1


@pytest.fixture(scope="session")
def euler_table(appendix1):
    return TableSource(appendix1)

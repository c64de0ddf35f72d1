from __future__ import annotations

import os
from pathlib import Path

import pytest

from infchess.core.config import PROJECT_ROOT, get_settings
from infchess.services.solver import SearchBudget


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch: pytest.MonkeyPatch):
    for key in list(os.environ):
        if key.startswith("INFCHESS_"):
            monkeypatch.delenv(key, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def fixture_dir() -> Path:
    return PROJECT_ROOT / "fixtures"


@pytest.fixture
def budget() -> SearchBudget:
    return SearchBudget(mate_bound=6, horizon=30, node_limit=2_000_000)


@pytest.fixture
def small_budget() -> SearchBudget:
    return SearchBudget(mate_bound=3, horizon=12, node_limit=200_000)

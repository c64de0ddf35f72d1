import pytest
from pydantic import ValidationError

from infchess.core.config import PROJECT_ROOT, Settings, get_settings


def test_defaults() -> None:
    settings = get_settings()
    assert settings.fixture_dir == PROJECT_ROOT / "fixtures"
    assert settings.mate_in == 6
    assert settings.workers == 1
    assert settings.locale == "en"
    assert settings.debug is False


def test_environment_overrides(monkeypatch, tmp_path) -> None:
    monkeypatch.setenv("INFCHESS_FIXTURE_DIR", str(tmp_path))
    monkeypatch.setenv("INFCHESS_WORKERS", "4")
    monkeypatch.setenv("INFCHESS_DEBUG", "true")
    settings = get_settings()
    assert settings.fixture_dir == tmp_path
    assert settings.workers == 4
    assert settings.debug is True


def test_settings_are_cached() -> None:
    assert get_settings() is get_settings()


def test_invalid_values_are_rejected(monkeypatch) -> None:
    monkeypatch.setenv("INFCHESS_HORIZON", "0")
    with pytest.raises(ValidationError):
        Settings()

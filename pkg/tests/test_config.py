from pydantic import ValidationError
import pytest

from molex.config import DEFAULT_ALPHA_GRID, DEFAULT_K_GRID, Settings, get_settings


def test_defaults():
    settings = get_settings()
    assert settings.tol == 1e-9
    assert settings.grid_step == 1e-3
    assert settings.alpha_grid == DEFAULT_ALPHA_GRID
    assert settings.k_grid == DEFAULT_K_GRID
    assert settings.jobs == 1
    assert settings.max_order == 12
    assert settings.log_level == "INFO"
    assert get_settings() is settings


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("MOLEX_TOL", "1e-6")
    monkeypatch.setenv("MOLEX_ALPHA_GRID", "[-1, 2]")
    monkeypatch.setenv("MOLEX_LOG_LEVEL", "debug")
    settings = Settings()
    assert settings.tol == 1e-6
    assert settings.alpha_grid == [-1.0, 2.0]
    assert settings.log_level == "DEBUG"


@pytest.mark.parametrize("name,value", [
    ("MOLEX_LOG_LEVEL", "chatty"),
    ("MOLEX_TOL", "0"),
    ("MOLEX_MAX_ORDER", "13"),
    ("MOLEX_JOBS", "0"),
])
def test_invalid_values_are_rejected(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValidationError):
        Settings()

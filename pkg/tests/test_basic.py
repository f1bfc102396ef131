"""Basic tests for the settings object."""
import pytest

from mirror_mf.config import QConvention, Settings


def test_imports():
    """Test that the settings object imports with its defaults."""
    from mirror_mf.config import settings

    assert settings.identity_tolerance > 0
    assert isinstance(settings.q_convention, QConvention)
    assert settings.max_weight_sum == 12


def test_env_override(monkeypatch):
    """Test that MIRROR_MF_ variables override defaults."""
    monkeypatch.setenv("MIRROR_MF_Q_CONVENTION", "q-root")
    monkeypatch.setenv("MIRROR_MF_SCAN_T1_STEPS", "5")
    fresh = Settings()
    assert fresh.q_convention is QConvention.Q_ROOT
    assert fresh.scan_t1_steps == 5


@pytest.mark.parametrize("name, expected", [("section3", QConvention.Q_SQUARE), ("section6", QConvention.Q_ROOT)])
def test_convention_aliases(monkeypatch, name, expected):
    """The older convention names resolve to the same settings."""
    assert QConvention(name) is expected
    monkeypatch.setenv("MIRROR_MF_Q_CONVENTION", name)
    assert Settings().q_convention is expected

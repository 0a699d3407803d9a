"""
Engine configuration tests.
"""

import pytest

from fbiharm.config import EngineConfig, get_engine_config, update_engine_config


def test_defaults():
    config = EngineConfig()
    assert config.jet_order == 4
    assert config.tolerance == 1e-7
    assert config.fd_levels == 2


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("FBIHARM_JET_ORDER", "6")
    monkeypatch.setenv("FBIHARM_FD_STEP", "0.002")
    config = EngineConfig()
    assert config.jet_order == 6
    assert isinstance(config.jet_order, int)
    assert config.fd_step == 0.002


def test_invalid_environment_value(monkeypatch):
    monkeypatch.setenv("FBIHARM_WORKERS", "0")
    with pytest.raises(ValueError):
        EngineConfig()


class TestUpdate:
    def test_update_and_restore(self):
        before = get_engine_config().fd_step
        try:
            assert update_engine_config(fd_step=2e-3).fd_step == 2e-3
            assert get_engine_config().fd_step == 2e-3
        finally:
            update_engine_config(fd_step=before)

    def test_unknown_setting(self):
        with pytest.raises(ValueError, match="unknown engine setting"):
            update_engine_config(fd_stride=1.0)

    def test_failed_update_leaves_config_intact(self):
        before = get_engine_config().jet_order
        with pytest.raises(ValueError):
            update_engine_config(jet_order=0)
        assert get_engine_config().jet_order == before

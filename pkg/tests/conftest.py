"""Shared fixtures for RadoKit tests."""
import pytest

from radokit_core.config import reset_config


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Point config and cache at a temporary home for every test."""
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.setenv("RADOKIT_CACHE_PATH", str(tmp_path / "cache.jsonl"))
    for name in ("RADOKIT_BUDGET", "RADOKIT_WORKERS", "RADOKIT_CACHE_ENABLED", "RADOKIT_SYMMETRY_BREAKING"):
        monkeypatch.delenv(name, raising=False)
    reset_config()
    yield tmp_path
    reset_config()

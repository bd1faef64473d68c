import os
import sys

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from utils.config import RunConfig


@pytest.fixture
def config(tmp_path):
    """Config with the cache and action log inside a temporary directory"""
    return RunConfig(cache_path=str(tmp_path / "cache.json"), action_log=str(tmp_path / "actions.jsonl"))


@pytest.fixture(autouse=True)
def isolated_action_log(tmp_path, monkeypatch):
    from utils import logging as action_logging

    monkeypatch.setattr(action_logging, "_action_log", str(tmp_path / "actions.jsonl"))
    monkeypatch.delenv("CKFORMS_CONFIG", raising=False)
    monkeypatch.chdir(tmp_path)

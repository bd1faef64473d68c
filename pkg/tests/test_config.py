import pytest

from utils.config import RunConfig, load_config, read_config_file
from utils.errors import ConfigError


def test_defaults():
    config = RunConfig()
    assert config.mc_samples == 20000
    assert (config.threshold_low, config.threshold_high) == (3.0, 5.0)
    assert config.output_format == "json"
    assert "workers" not in config.cache_key_fields()
    assert config.cache_key_fields()["seed"] == 0


@pytest.mark.parametrize(
    "overrides",
    [
        {"mc_samples": 0},
        {"threshold_low": 5.0, "threshold_high": 3.0},
        {"search_cap": -1},
        {"output_format": "xml"},
        {"seed": -2},
    ],
)
def test_invalid_values(overrides):
    with pytest.raises(ConfigError):
        RunConfig(**overrides)


def test_file_then_overrides(tmp_path):
    path = tmp_path / "ckforms.toml"
    path.write_text("[ckforms]\nmc_samples = 500\nseed = 3\nthreshold_high = 6\n", encoding="utf-8")
    config = load_config(str(path), {"seed": 11, "workers": None})
    assert config.mc_samples == 500
    assert config.seed == 11
    assert config.threshold_high == 6.0
    assert config.workers == 1


def test_env_var_points_to_config(tmp_path, monkeypatch):
    path = tmp_path / "env.toml"
    path.write_text("use_mc = true\n", encoding="utf-8")
    monkeypatch.setenv("CKFORMS_CONFIG", str(path))
    assert load_config().use_mc is True


def test_bad_files(tmp_path):
    with pytest.raises(ConfigError):
        read_config_file(str(tmp_path / "missing.toml"))
    broken = tmp_path / "broken.toml"
    broken.write_text("mc_samples = [", encoding="utf-8")
    with pytest.raises(ConfigError):
        read_config_file(str(broken))
    unknown = tmp_path / "unknown.toml"
    unknown.write_text("colour = 'blue'\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(str(unknown))
    typed = tmp_path / "typed.toml"
    typed.write_text("use_mc = 1\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(str(typed))


def test_with_overrides_ignores_none():
    config = RunConfig().with_overrides(seed=None, mc_samples=1000)
    assert config.seed == 0
    assert config.mc_samples == 1000

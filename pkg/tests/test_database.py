import json

from utils import database
from utils.catalog import analyze_pair
from utils.grammar import parse_pair
from utils.obstructions import classify
from utils.report import emit_report


def test_cache_key_depends_on_inputs(config):
    key = database.cache_key("SO(3,2)/SO(3,1)", config)
    assert key == database.cache_key("SO(3,2)/SO(3,1)", config)
    assert key != database.cache_key("SO(3,4)/SO(3,2)", config)
    assert key != database.cache_key("SO(3,2)/SO(3,1)", config.with_overrides(seed=1))
    assert key != database.cache_key("SO(3,2)/SO(3,1)", config, version="0.0.0")
    # workers do not change results
    assert key == database.cache_key("SO(3,2)/SO(3,1)", config.with_overrides(workers=4))


def test_save_get_clear(tmp_path):
    path = str(tmp_path / "cache.json")
    assert database.get_cached_verdict("k", path) is None
    assert database.save_verdict("k", {"classification": "Unknown"}, path)
    assert database.save_verdict("j", {"classification": "RationalVolume"}, path)
    assert database.get_cached_verdict("k", path) == {"classification": "Unknown"}
    assert database.clear_cache(path) == 2
    assert database.load_cache(path) == {}


def test_corrupt_cache_reads_as_empty(tmp_path):
    path = tmp_path / "cache.json"
    path.write_text("{not json", encoding="utf-8")
    assert database.load_cache(str(path)) == {}


def test_empty_path_disables_cache():
    assert database.save_verdict("k", {}, "") is False
    assert database.load_cache("") == {}


def test_log_action(tmp_path):
    path = tmp_path / "actions.jsonl"
    assert database.log_action("analyze", {"pair": "SO(3,2)/SO(3,1)"}, str(path))
    assert database.log_action("catalog", {"n": 2}, str(path))
    records = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]
    assert [r["action"] for r in records] == ["analyze", "catalog"]
    assert records[0]["data"]["pair"] == "SO(3,2)/SO(3,1)"
    assert "timestamp" in records[0]


def test_log_action_failure_is_not_fatal(tmp_path, capsys):
    assert database.log_action("x", {}, str(tmp_path / "missing" / "log.jsonl")) is False
    assert "Error logging action" in capsys.readouterr().out


def test_cached_verdict_matches_recomputation(config):
    ps = parse_pair("SL_R(3)/SL_R(2)")
    first = analyze_pair(ps, config)
    key = database.cache_key(ps.text, config)
    assert database.get_cached_verdict(key, config.cache_path) is not None
    cached = analyze_pair(ps, config)
    fresh = classify(ps, config).to_dict()
    assert emit_report(cached, "json") == emit_report(fresh, "json") == emit_report(first, "json")

import pytest

from utils.catalog import CatalogEntry, builtin_catalog, load_catalog, run_catalog
from utils.errors import ConfigError, ParseError
from utils.obstructions import NO_COMPACT_FORMS, RATIONAL_VOLUME, UNKNOWN
from utils.report import emit_report

SMALL = ["vf1-1a", "vf1-2a", "rv-1a", "rv-3a"]


def _entries(ids):
    by_id = {e.id: e for e in builtin_catalog()}
    return [by_id[i] for i in ids]


def test_builtin_catalog_shape():
    entries = builtin_catalog()
    assert len(entries) == 30
    assert len({e.id for e in entries}) == 30
    expected = [e.expected for e in entries]
    assert expected.count(NO_COMPACT_FORMS) == 22
    assert expected.count(RATIONAL_VOLUME) == 6
    assert expected.count(UNKNOWN) == 2


@pytest.mark.slow
def test_builtin_catalog_has_no_mismatches(config):
    report = run_catalog(config, use_cache=False)
    assert [r.entry.id for r in report.mismatches] == []
    assert report.to_dict()["n_errors"] == 0


def test_small_catalog_rows_keep_order(config):
    report = run_catalog(config, _entries(SMALL))
    assert [r.entry.id for r in report.rows] == SMALL
    assert all(r.match for r in report.rows)
    evidence = {r["id"]: r["evidence"] for r in report.to_dict()["entries"]}
    assert "sign" in evidence["vf1-2a"]
    assert evidence["rv-1a"] == ["rank"]


def test_runs_are_byte_identical(config):
    first = emit_report(run_catalog(config, _entries(SMALL), use_cache=False).to_dict())
    second = emit_report(run_catalog(config, _entries(SMALL), use_cache=False).to_dict())
    assert first == second


def test_cached_run_matches_fresh_run(config):
    fresh = emit_report(run_catalog(config, _entries(SMALL), use_cache=False).to_dict())
    run_catalog(config, _entries(SMALL))
    cached = emit_report(run_catalog(config, _entries(SMALL)).to_dict())
    assert cached == fresh


def test_entry_errors_are_collected(config):
    entries = [
        CatalogEntry.from_text("bad", "SO(2,2)/SL_R(2)", "no block embedding", UNKNOWN),
        _entries(["rv-1a"])[0],
    ]
    report = run_catalog(config, entries)
    assert report.rows[0].error.startswith("IncompatiblePair")
    assert not report.rows[0].match
    assert report.rows[1].match
    assert len(report.mismatches) == 1


def test_entry_validation():
    with pytest.raises(ConfigError):
        CatalogEntry.from_text("x", "SO(2,2)/SO(2,1)", "label", "Maybe")
    with pytest.raises(ConfigError):
        CatalogEntry.from_text("x", "SO(2,2)/SO(2,1)", "", RATIONAL_VOLUME)
    with pytest.raises(ParseError):
        CatalogEntry.from_text("x", "SO(2,2)", "label", RATIONAL_VOLUME)


def test_load_catalog_from_toml(tmp_path):
    path = tmp_path / "catalog.toml"
    path.write_text(
        '[[entry]]\nid = "a"\npair = "SO(2,2)/SO(2,1)"\npaper_label = "rank"\nexpected = "RationalVolume"\n'
        '[[entry]]\nid = "b"\npair = "GROUP(SL_R(2))"\npaper_label = "group"\nexpected = "RationalVolume"\n',
        encoding="utf-8",
    )
    entries = load_catalog(str(path))
    assert [e.id for e in entries] == ["a", "b"]
    assert entries[1].pair.text == "GROUP(SL_R(2))"
    assert len(load_catalog()) == 30


@pytest.mark.parametrize(
    "body",
    [
        'title = "empty"\n',
        '[[entry]]\nid = "a"\npair = "SO(2,2)/SO(2,1)"\nexpected = "RationalVolume"\n',
        '[[entry]]\nid = "a"\npair = "SO(2,2)/SO(2,1)"\npaper_label = "x"\nexpected = "RationalVolume"\n' * 2,
    ],
)
def test_bad_catalog_files(tmp_path, body):
    path = tmp_path / "catalog.toml"
    path.write_text(body, encoding="utf-8")
    with pytest.raises(ConfigError):
        load_catalog(str(path))

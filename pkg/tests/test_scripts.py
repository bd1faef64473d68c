import os

import pandas as pd

from scripts.clear_cache import clear
from scripts.export_catalog import export_catalog

CATALOG = (
    '[[entry]]\nid = "a"\npair = "SO(1,2)/SO(1,1)"\npaper_label = "sign"\nexpected = "NoCompactForms"\n'
    '[[entry]]\nid = "b"\npair = "SO(2,2)/SO(2,1)"\npaper_label = "rank"\nexpected = "{expected}"\n'
)


def test_export_catalog_writes_csv(tmp_path, capsys):
    catalog = tmp_path / "catalog.toml"
    catalog.write_text(CATALOG.format(expected="RationalVolume"), encoding="utf-8")
    out = tmp_path / "catalog.csv"
    assert export_catalog(str(catalog), str(out)) is True
    df = pd.read_csv(out)
    assert list(df["id"]) == ["a", "b"]
    assert df["match"].all()
    assert list(df["dim_V"]) == [1, 2]
    assert "CATALOG SUMMARY" in capsys.readouterr().out


def test_export_catalog_reports_mismatch(tmp_path, capsys):
    catalog = tmp_path / "catalog.toml"
    catalog.write_text(CATALOG.format(expected="Unknown"), encoding="utf-8")
    assert export_catalog(str(catalog), str(tmp_path / "out.csv"), use_cache=False) is False
    assert "Mismatches:" in capsys.readouterr().out


def test_clear_cache_script(tmp_path):
    catalog = tmp_path / "catalog.toml"
    catalog.write_text(CATALOG.format(expected="RationalVolume"), encoding="utf-8")
    export_catalog(str(catalog), str(tmp_path / "out.csv"))
    assert os.path.exists(".ckforms_cache.json")
    open("ckforms_actions.jsonl", "a").close()
    assert clear(include_log=True, confirm=False) is True
    assert not os.path.exists(".ckforms_cache.json")
    assert not os.path.exists("ckforms_actions.jsonl")

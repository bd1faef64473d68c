#!/usr/bin/env python3
"""
Script to run the catalog and export the results table to CSV
"""
import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import argparse
from datetime import datetime

import pandas as pd

from utils.catalog import load_catalog, run_catalog
from utils.config import load_config


def export_catalog(catalog_file=None, output_file=None, config_file=None, use_cache=True):
    """Classify the catalog and save one CSV row per entry"""
    print("Running catalog...")
    try:
        config = load_config(config_file)
        entries = load_catalog(catalog_file)
    except Exception as e:
        print(f"❌ Error loading catalog: {str(e)}")
        return False

    report = run_catalog(config, entries, use_cache=use_cache)
    rows = []
    for row in report.rows:
        verdict = row.verdict or {}
        rows.append({
            "id": row.entry.id,
            "pair": row.entry.pair.text,
            "paper_label": row.entry.paper_label,
            "expected": row.entry.expected,
            "computed": row.computed or "",
            "match": row.match,
            "dim_V": verdict.get("dims", {}).get("V", ""),
            "sign_found": verdict.get("sign", {}).get("found", ""),
            "error": row.error or "",
        })
        status = "✅" if row.match else "❌"
        print(f"{status} {row.entry.id}: {row.entry.pair.text} -> {row.computed}")

    df = pd.DataFrame(rows)
    try:
        if not output_file:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            output_file = f"ckforms_catalog_{timestamp}.csv"
        df.to_csv(output_file, index=False)
        print(f"💾 Catalog saved to: {output_file}")
    except Exception as e:
        print(f"❌ Error saving CSV: {str(e)}")
        return False

    generate_summary_report(df)
    return not report.mismatches


def generate_summary_report(df):
    """Print counts per expected classification and the mismatches"""
    print("\n" + "=" * 60)
    print("CATALOG SUMMARY")
    print("=" * 60)
    print(f"Entries: {len(df)}")
    print(f"Matches: {int(df['match'].sum())}")
    for expected, group in df.groupby("expected"):
        print(f"  {expected}: {int(group['match'].sum())}/{len(group)}")
    mismatched = df[~df["match"]]
    if len(mismatched):
        print("\nMismatches:")
        for _, row in mismatched.iterrows():
            print(f"  {row['id']} {row['pair']}: expected {row['expected']}, computed {row['computed'] or row['error']}")
    print("=" * 60)


def main():
    parser = argparse.ArgumentParser(description="Run the ckforms catalog and export a CSV table")
    parser.add_argument("--file", help="TOML catalog file (default: built-in catalog)")
    parser.add_argument("--output", help="output CSV path (default: timestamped file)")
    parser.add_argument("--config", help="TOML config file")
    parser.add_argument("--no-cache", action="store_true", help="recompute every verdict")
    args = parser.parse_args()

    ok = export_catalog(args.file, args.output, args.config, use_cache=not args.no_cache)
    sys.exit(0 if ok else 3)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""
Script to clear the ckforms verdict cache and, optionally, the action log
"""
import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import argparse

from utils.config import load_config
from utils.database import clear_cache


def clear(config_file=None, include_log=False, confirm=True):
    config = load_config(config_file)
    print(f"🧹 Clearing cache {config.cache_path}...")
    if confirm:
        answer = input("Delete all cached verdicts? (yes/no): ").strip().lower()
        if answer != "yes":
            print("Cancelled.")
            return False
    removed = clear_cache(config.cache_path)
    print(f"✅ Removed {removed} cached verdicts")
    if include_log and config.action_log and os.path.exists(config.action_log):
        os.remove(config.action_log)
        print(f"✅ Removed action log {config.action_log}")
    return True


def main():
    parser = argparse.ArgumentParser(description="Clear the ckforms verdict cache")
    parser.add_argument("--config", help="TOML config file")
    parser.add_argument("--log", action="store_true", help="also delete the action log")
    parser.add_argument("--yes", action="store_true", help="do not ask for confirmation")
    args = parser.parse_args()

    try:
        clear(args.config, include_log=args.log, confirm=not args.yes)
    except Exception as e:
        print(f"❌ Error: {str(e)}")
        sys.exit(1)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Populate the statkit data cache.

Downloads the publicly hosted datasets that the acceptance suite and the CLI
examples use into $STATKIT_DATA_DIR (default: ./data). Each file is validated
against its known row count where the count is pinned below.

Usage:
    python3 tools/fetch_data.py [--dir DIR] [--list]
"""

import argparse
import os
import sys
import urllib.request

BASE = "https://raw.githubusercontent.com/gagolews/teaching-data/master/"

# (relative URL, expected data-row count or None)
DATASETS = [
    ("marek/nhanes_adult_female_height_2020.txt", 4221),
    ("marek/uk_income_simulated_2020.txt", 1000),
    ("marek/nhanes_adult_female_bmx_2020.csv", 4221),
    ("marek/nhanes_p_demo_bmx_2020.csv", 14300),
    ("marek/world_factbook_2020_subset1.csv", None),
    ("marek/ssi_2016_indicators.csv", None),
    ("marek/ssi_2016_categories.csv", None),
    ("marek/37_pzu_warsaw_marathon_simplified.csv", None),
    ("marek/blobs1.txt", 2056),
    ("marek/blobs2.txt", 2000),
    ("marek/spokane_temperature.txt", 48365),
    ("clustering/sipu_unbalance.csv", 6500),
    ("other/us_cities_2000.txt", 19447),
    ("other/sweetwhitewine_train2.csv", 1000),
    ("other/sweetwhitewine_test2.csv", None),
]


def data_rows(path: str) -> int:
    """Number of non-comment, non-blank lines, header excluded for .csv files."""
    count = 0
    saw_header = False
    is_csv = path.endswith(".csv")
    with open(path, "r", encoding="utf-8", errors="replace") as handle:
        for line in handle:
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if is_csv and not saw_header:
                saw_header = True
                continue
            count += 1
    return count


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dir", default=os.environ.get("STATKIT_DATA_DIR", "data"))
    parser.add_argument("--list", action="store_true", help="print URLs and exit")
    args = parser.parse_args()

    if args.list:
        for rel, _ in DATASETS:
            print(BASE + rel)
        return 0

    os.makedirs(args.dir, exist_ok=True)
    failures = 0
    for rel, expected_rows in DATASETS:
        name = os.path.basename(rel)
        target = os.path.join(args.dir, name)
        if not os.path.exists(target):
            url = BASE + rel
            print(f"fetching {url}")
            try:
                with urllib.request.urlopen(url, timeout=60) as response:
                    payload = response.read()
                with open(target, "wb") as out:
                    out.write(payload)
            except Exception as error:  # noqa: BLE001 - report and continue
                print(f"  FAILED: {error}", file=sys.stderr)
                failures += 1
                continue
        if expected_rows is not None:
            rows = data_rows(target)
            if rows != expected_rows:
                print(
                    f"  WARNING: {name} has {rows} data rows, expected {expected_rows}",
                    file=sys.stderr,
                )
                failures += 1
                continue
        print(f"ok: {name}")
    if failures:
        print(f"{failures} file(s) missing or failed validation", file=sys.stderr)
        return 1
    print(f"data cache ready at {args.dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Exhaustive verification for small moduli: every character pair, every A,
every odd B, k in the default list, for m = 3..5 (or the m's given).

Usage: python scripts/exhaustive_small.py [m ...]
"""

import json
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from charsum.sweep import exhaustive_records, run_check  # noqa: E402


def main() -> int:
    ms = [int(a) for a in sys.argv[1:]] or [3, 4, 5]
    records = []
    for m in ms:
        records.extend(exhaustive_records(m))
    t0 = time.perf_counter()
    report = run_check(records, jobs=1)
    elapsed = time.perf_counter() - t0
    doc = report.to_json_dict()
    doc["elapsed_seconds"] = elapsed
    doc["moduli"] = ms
    print(json.dumps(doc, indent=2))
    return 0 if report.ok() else 1


if __name__ == "__main__":
    sys.exit(main())

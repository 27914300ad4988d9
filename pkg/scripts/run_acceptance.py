"""Run every acceptance criterion and write a JSON summary.

    python3 scripts/run_acceptance.py [--out acceptance.json] [--only 3 4]
"""

import argparse
import json
import sys
import time

from symblob.acceptance import CRITERIA, SCHEMA, run


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out")
    ap.add_argument("--only", nargs="*", default=list(CRITERIA))
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    results = []
    for key in args.only:
        t = time.time()
        r = run(key, args.seed)
        print(f"{r.line()}  ({time.time() - t:.1f}s)", flush=True)
        results.append(r.to_json())
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"schema": SCHEMA, "results": results}, fh, indent=2, sort_keys=True, default=str)
    return 0 if all(r["passed"] for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())

"""Run the full property suite and write the JSON report.

    python scripts/run_suite.py [--config cfg.json] [--output report.json]
"""

import argparse
import json
import sys
import time

from boolample.formats import dumps
from boolample.suite import SuiteConfig, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config")
    ap.add_argument("--output", default="suite_report.json")
    args = ap.parse_args()
    cfg = SuiteConfig.from_file(args.config) if args.config else SuiteConfig()
    t = time.perf_counter()
    res = run_suite(cfg)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(dumps(res.to_dict()))
    for c in res.checks:
        print(f"{c.status:>17}  {c.name}  {json.dumps(c.detail, sort_keys=True) if c.detail else ''}")
    print(f"{len(res.checks)} checks in {time.perf_counter() - t:.1f}s, exit {res.exit_code}")
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())

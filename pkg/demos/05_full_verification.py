#!/usr/bin/env python3
# The whole battery in one call: run the verification checks in-process,
# inspect the report dictionary, then sweep the arc scale N and watch the
# separation margin shrink.  Everything lands in a scratch directory.

import json
import tempfile
from pathlib import Path

from roughkernel import emit, make_config, run_sweep, run_verify

scratch = Path(tempfile.mkdtemp(prefix="roughkernel_demo_"))

cfg = make_config({
    "n": "8",
    "N": "2^32",
    "grid": "4096",
    "p": "4,8",
    "emit": "json,csv",
    "out": str(scratch),
})

artifacts = {}
report = run_verify(cfg, artifacts)
print(f"aborted: {report['aborted']}")
for chk in report["checks"]:
    flag = "skip" if chk["skipped"] else ("pass" if chk["passed"] else "FAIL")
    print(f"  {chk['name']:<22} {flag}")

paths = emit(report, cfg, artifacts)
print("\nwrote:", *[p.name for p in paths])

body = json.loads((scratch / "report.json").read_text())
summary = body["construction"]
print(f"\nreport summary: c={summary['c']:.6g}  |D|={summary['absD']:.6f}  "
      f"margin={summary['margin']:.4f}  sup_m={summary['sup_m']:.4f}")

# sweep N at fixed n: the margin is non-increasing, the norm stays finite
reports = run_sweep(cfg, "N", [2.0**28, 2.0**36, 2.0**44])
print(f"\n{'N':>12}  {'margin':>8}  {'luxemburg':>10}")
for r in reports:
    s = r["construction"]
    print(f"{s['N']:>12.4g}  {s['margin']:>8.4f}  {s['luxemburg']:>10.4f}")

print(f"\nscratch directory: {scratch}")

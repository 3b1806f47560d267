"""
A short run of the property suite
=================================

Same thing as ``bcpolar suite --trials 25 --max-dim 3``, from Python.
"""

import json

from bcpolar import run_suite

report = run_suite(seed=1, field="Fp:7", max_dim=3, trials=25)
for rec in report.properties:
    status = "ok" if rec.failures == 0 and not rec.starved else "FAIL"
    print(f"{rec.id:22s} {rec.passes:3d}/{rec.trials:<3d} {status}")
print(f"wall time {report.wall_time:.1f}s")

# the JSON body has no timing, so it is reproducible byte for byte
body = json.dumps(report.to_json())
again = json.dumps(run_suite(seed=1, field="Fp:7", max_dim=3, trials=25).to_json())
print("reproducible:", body == again)

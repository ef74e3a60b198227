"""
Command-line reports
====================

The ``wavehedge`` command writes every table as CSV (or JSON) with
provenance comment lines. This script drives it in-process on a synthetic
pair and prints the first lines of each output.
"""

import tempfile
from pathlib import Path

import numpy as np

from wavehedge.cli import main
from wavehedge.synthetic import common_factor_pair, prices_from_returns

work = Path(tempfile.mkdtemp(prefix="wavehedge-demo-"))
spot, fut = common_factor_pair(2500, seed=2)
dates = np.busday_offset(np.datetime64("2000-01-03"), np.arange(2501), roll="forward")
with open(work / "pair.csv", "w") as fh:
    fh.write("date,spot,futures\n")
    for d, s, f in zip(dates, prices_from_returns(spot), prices_from_returns(fut)):
        fh.write(f"{d},{s:.6f},{f:.6f}\n")

###############################################################################
# The equivalent shell commands are
#
#   wavehedge stats --data pair.csv --out out
#   wavehedge subsample --data pair.csv --out out
#   wavehedge hedge --data pair.csv --stride 25 --out out

data = str(work / "pair.csv")
out = str(work / "out")
for args in (["stats"], ["subsample"], ["hedge", "--stride", "25"]):
    main(args + ["--data", data, "--out", out])

for name in ("stats.csv", "subsample_summary.csv", "hedge_summary.csv"):
    print(f"\n== {name}")
    lines = (work / "out" / name).read_text().splitlines()
    print("\n".join(lines[:12]))

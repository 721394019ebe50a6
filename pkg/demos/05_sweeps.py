"""
Figure data
===========

Every figure is a (header, rows) table with simulated columns next to their
closed forms; the CSV writer is byte-stable.
"""
import numpy as np

from ctrldense import sweep

for fig in ("fig1", "fig3", "fig7"):
    header, rows = sweep.figure(fig, sweep.default_grid(fig, 11))
    print(f"{fig}: {', '.join(header)}")
    print(sweep.to_csv(header, rows[:3]), end="")

header, rows = sweep.figure("fig3")
arr = np.array(rows, dtype=float)
print("\nfig3 max |wootters - |sin 2t||:", np.max(np.abs(arr[:, 2] - arr[:, 3])))

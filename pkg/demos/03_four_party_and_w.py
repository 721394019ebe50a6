"""
Four-party GHZ, maximal slice and W-class resources
===================================================

A second controller (Paul) multiplies in a second angle. W-class states are
the negative case: the concentrated pair never becomes maximal, except for
the W_n family after a parity projection.
"""
import numpy as np

from ctrldense import protocol as proto
from ctrldense import sweep
from ctrldense.entangle import branch_concurrence, state_concurrence

t, e = np.pi / 6, np.pi / 6
res = proto.run_ghz4(t, e)
print(res.summary_line(), " expected", 2 * np.sin(t) ** 2 * np.sin(e) ** 2)
print("branch concurrence", branch_concurrence(proto.ghz4_aux0_branch(t, e)))

ms = proto.run_ms(np.pi / 4, np.pi / 2, msg=1)
print("\nmaximal slice at delta=pi/2:", ms.summary_line(), "fidelity", ms.flags["bell_fidelity"])
print("maximal slice at delta=0.3 normalized branch:", proto.run_ms(np.pi / 4, 0.3).flags["branch_normalized"])

w3 = max(state_concurrence(sweep.w3_aux0(x)) for x in np.linspace(np.pi / 4, np.pi / 2, 201))
print(f"\nW3 best concurrence on [pi/4, pi/2]: {w3:.4f}")
_, rows = sweep.figure("fig6", sweep.default_grid("fig6", 41))
print(f"W4 best branch concurrence: {max(r[2] for r in rows):.4f}")

wn = proto.run_wn(1, np.pi / 4, msg=3)
print("\nW_1 with parity projection:", wn.summary_line(), "parity", wn.stages["parity"])

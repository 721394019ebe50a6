"""
Qutrit GHZ dense coding
=======================

Three-level GHZ resource with four encodings on Alice's qutrit. At pi/4 the
braid matrices concentrate exactly; elsewhere a generic filter on levels 0
and 2 is used.
"""
import numpy as np

from ctrldense import concentrate as conc
from ctrldense import protocol as proto
from ctrldense.qcore import check_unitary

for m in range(4):
    print(f"msg={m}:", proto.run_qutrit(np.pi / 4, msg=m).summary_line())

for t in (np.pi / 6, np.pi / 4, np.pi / 3):
    print(check_unitary(conc.braid_b1(t)).line())

for t in (np.pi / 6, np.pi / 3):
    p = proto.run_qutrit(t, msg=0).success_probability
    print(f"theta={t:.4f} generic path P={p:.10f}  2min(sin^2,cos^2)={2 * min(np.sin(t), np.cos(t)) ** 2:.10f}")

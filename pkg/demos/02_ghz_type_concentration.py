"""
Non-maximal GHZ-type resources
==============================

With L(|000> + l|111>) the pair left after Charlie's measurement is not a
Bell pair. Picking tan(theta) = 1/l makes it one; otherwise Bob falls back
on unambiguous discrimination and sometimes gets nothing.
"""
import numpy as np

from ctrldense import protocol as proto
from ctrldense import sweep

# Conclusive decoding probability against the closed form 2l^2/(1+l^2).
print("l     P(conclusive)  2l^2/(1+l^2)")
for l in (0.2, 0.5, 0.8, 1.0):
    p = proto.run_ghz_type(l, np.pi / 4).stages["decode"]
    print(f"{l:.1f}   {p:.10f}   {2 * l * l / (1 + l * l):.10f}")

# Monte Carlo at l = 0.5: inconclusive outcomes happen, wrong ones never do.
stats = proto.roundtrip("ghz-type", 10_000, seed=7, l=0.5)
print("\nl=0.5 sampled:", stats)

# The angle relation: at theta = atan(1/l) the filtered pair has weight 1.
for l in (0.5, 1.0, 1.5):
    t = np.arctan(1 / l)
    s = sweep.ghz_type_aux0(l, t)
    print(f"l={l}: theta={t:.4f}  ancilla-0 weight={s.norm_sq:.12f}")

header, rows = sweep.table("t22")
print("\n" + ", ".join(header))
for l, t, shared, p, cf in rows[::5]:
    print(f"{l:.1f}, {t:.6f}, {shared}, {p:.10f}, {cf:.10f}")

"""Figure and table data as rows, plus a byte-stable CSV writer.

Each figure function returns ``(header, rows)``. Columns sourced from a
simulation sit next to the closed form they are meant to reproduce, so a
consumer can plot either and see where they part ways.

Several figures cover angles outside the validity domain of the matrix
that generates them (e.g. U1' beyond pi/4). The ancilla-0 branch of the
matrix is still real there and equals the hand-derived expression, so those
points are computed with the matrix applied unchecked and an ``in_domain``
column marks them.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from . import concentrate as conc
from . import protocol as proto
from . import states as st
from .entangle import branch_concurrence, paper_closed_forms, state_concurrence
from .measure import QubitBasis, measure_party
from .qcore import PureState, apply

Q = np.pi / 4
H = np.pi / 2


@dataclass(frozen=True)
class SweepGrid:
    names: tuple[str, ...]
    lower: tuple[float, ...]
    upper: tuple[float, ...]
    points: int = 101

    def __post_init__(self):
        if self.points < 2:
            raise ValueError(f"a grid needs at least 2 points, got {self.points}")
        if not (len(self.names) == len(self.lower) == len(self.upper)):
            raise ValueError("names, lower and upper must have equal length")
        if not all(np.isfinite(self.lower)) or not all(np.isfinite(self.upper)):
            raise ValueError("grid bounds must be finite")

    def axis(self, k: int = 0) -> np.ndarray:
        return np.linspace(self.lower[k], self.upper[k], self.points)


DEFAULT_GRIDS = {
    "fig1": SweepGrid(("theta",), (0.0,), (H,)),
    "fig2": SweepGrid(("theta",), (Q,), (H,)),
    "fig3": SweepGrid(("theta",), (Q,), (H,)),
    "fig4": SweepGrid(("theta", "epsilon"), (0.0, 0.0), (Q, H)),
    "fig5": SweepGrid(("theta",), (Q,), (H,)),
    "fig6": SweepGrid(("theta", "epsilon"), (Q, Q), (H, H)),
    "fig7": SweepGrid(("theta",), (0.0,), (H,)),
}


def default_grid(fig: str, points: int | None = None) -> SweepGrid:
    if fig not in DEFAULT_GRIDS:
        raise ValueError(f"unknown figure {fig!r}; expected one of {sorted(DEFAULT_GRIDS)}")
    g = DEFAULT_GRIDS[fig]
    return g if points is None else SweepGrid(g.names, g.lower, g.upper, points)


# --- shared-state oracles used by the figures and by the tests --------------------

def ghz_type_aux0(l: float, theta: float) -> PureState:
    """Raw ancilla-0 branch of GHZ-type after U1', sin t (|00> + l|11>) when tan t = 1/l."""
    branch = measure_party(st.make(st.ghz_type(l), normalized=False), "C", QubitBasis(theta))["+"].state
    return conc.concentrate(branch, conc.u1_prime(theta, unchecked=True), 2, unchecked=True)["0"].state


def w3_aux0(theta: float) -> PureState:
    """sin t|01> + (sin^2 t / cos t)|00> + cos t|10>."""
    branch = measure_party(st.make(st.W3, normalized=False), "C", QubitBasis(theta))["+"].state
    return conc.concentrate(branch, conc.u1_prime(theta, unchecked=True), 2, unchecked=True)["0"].state


def w4_aux0(theta: float, epsilon: float) -> PureState:
    """tan t sin(t+e)|00> + sin t cos e|01> + cos t cos e|10>."""
    s = measure_party(st.make(st.W4, normalized=False), "C", QubitBasis(theta))["+"].state
    t1 = measure_party(s, "P", QubitBasis(epsilon))["+"].state
    return conc.concentrate(t1, conc.u1_prime(theta, unchecked=True), 2, unchecked=True)["0"].state


def _in_domain(m_builder, *args) -> int:
    return int(m_builder(*args, unchecked=True).domain_ok)


# --- figures ---------------------------------------------------------------------

def _fig1(g: SweepGrid):
    header = ["theta", "bits_sin_branch", "bits_cos_branch", "closed_form_sin", "closed_form_cos"]
    rows = []
    for t in g.axis():
        sin_bits = proto.run_ghz(1, t).average_bits if t <= Q + 1e-12 else np.nan
        cos_bits = proto.run_ghz(0, t, "+").average_bits if t >= Q - 1e-12 else np.nan
        rows.append([t, sin_bits, cos_bits, 1 + 2 * np.sin(t) ** 2, 1 + 2 * np.cos(t) ** 2])
    return header, rows


def _fig2(g: SweepGrid):
    header = ["theta", "l", "aux0_weight", "in_domain"]
    rows = []
    for t in g.axis():
        l = 1 / np.tan(t)
        rows.append([t, l, ghz_type_aux0(l, t).norm_sq, _in_domain(conc.u1_prime, t)])
    return header, rows


def _fig3(g: SweepGrid):
    header = ["theta", "l", "wootters", "closed_form"]
    rows = []
    for t in g.axis():
        l = 1 / np.tan(t)
        rows.append([t, l, state_concurrence(ghz_type_aux0(l, t)), paper_closed_forms("C", t)])
    return header, rows


def _fig4(g: SweepGrid):
    header = ["theta", "epsilon", "in_domain", "branch_c1", "closed_form"]
    rows = []
    for t in g.axis(0):
        for e in g.axis(1):
            b = proto.ghz4_aux0_branch(t, e, unchecked=True)
            rows.append([t, e, int(conc.u3_4ghz(t, e, unchecked=True).domain_ok), branch_concurrence(b),
                         paper_closed_forms("C1", t, e)])
    return header, rows


def _fig5(g: SweepGrid):
    header = ["theta", "wootters", "branch", "closed_form_sqrt2"]
    rows = []
    for t in g.axis():
        s = w3_aux0(t)
        rows.append([t, state_concurrence(s), branch_concurrence(s), paper_closed_forms("C2", t)])
    return header, rows


def _fig6(g: SweepGrid):
    header = ["theta", "epsilon", "c3_branch", "c3_wootters", "on_slice"]
    rows = []
    for t in g.axis(0):
        for e in g.axis(1):
            s = w4_aux0(t, e)
            rows.append([t, e, branch_concurrence(s), state_concurrence(s), int(abs(e - Q) < 1e-12)])
    return header, rows


def _fig7(g: SweepGrid):
    header = ["theta", "in_domain", "parity_probability", "c4", "closed_form"]
    rows = []
    for t in g.axis():
        aux0, proj = proto.wn_parity_branch(1, t, unchecked=True)
        rows.append([t, _in_domain(conc.u3_wn, t), proj.norm_sq / aux0.norm_sq, state_concurrence(proj),
                     paper_closed_forms("C4", t)])
    return header, rows


_FIGURES = {"fig1": _fig1, "fig2": _fig2, "fig3": _fig3, "fig4": _fig4, "fig5": _fig5,
            "fig6": _fig6, "fig7": _fig7}


def figure(fig: str, grid: SweepGrid | None = None):
    """(header, rows) for ``fig``; the grid defaults to the figure's printed range."""
    if fig not in _FIGURES:
        raise ValueError(f"unknown figure {fig!r}; expected one of {sorted(_FIGURES)}")
    return _FIGURES[fig](grid or default_grid(fig))


# --- tables ----------------------------------------------------------------------

def _t21(points: int = 9):
    header = ["variant", "outcome", "formula", "theta", "simulated_bits", "closed_form", "abs_error"]
    rows = []
    for k in range(1, 8):
        outcome, formula = proto.GHZ_TABLE[k]
        lo, hi = (0.0, Q) if formula == "sin" else (Q, H)
        for t in np.linspace(lo, hi, points):
            sim = proto.run_ghz(k, t, outcome).average_bits
            cf = 1 + 2 * (np.sin(t) if formula == "sin" else np.cos(t)) ** 2
            rows.append([f"G{k}", outcome, f"1+2{formula}^2(theta)", t, sim, cf, abs(sim - cf)])
    return header, rows


def _describe(s: PureState) -> str:
    terms = [(k, a.real) for k, a in s.nonzero().items() if abs(a) > 1e-6]
    return " + ".join(f"{a:.6g}|{k}>" for k, a in terms)


def _t22():
    header = ["l", "theta", "shared_state", "success_probability", "closed_form"]
    rows = []
    for l in [0.0] + [round(0.1 * k, 10) for k in range(1, 11)]:
        # l = 0 is the limit of the family; evaluated just above it
        le = max(l, 1e-9)
        t = np.arctan(1 / le)
        shared = ghz_type_aux0(le, t).normalize()
        al = apply(proto.alignment(shared, {0: 1, 1: 1}), shared, ["A"])
        dec = proto.parity_usd_decode(al, al)
        p = float(sum(v for m, v in dec.items() if m is not None))
        rows.append([l, t, _describe(shared), p, 2 * l * l / (1 + l * l)])
    return header, rows


def table(tid: str, points: int | None = None):
    if tid == "t21":
        return _t21(points or 9)
    if tid == "t22":
        return _t22()
    raise ValueError(f"unknown table {tid!r}; expected t21 or t22")


def generate(name: str, points: int | None = None):
    """Figure or table by name, as used by the command line."""
    if name in ("t21", "t22"):
        return table(name, points)
    return figure(name, default_grid(name, points))


# --- CSV -------------------------------------------------------------------------

def _cell(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if np.isnan(x):
            return "nan"
        return format(0.0 if x == 0 else x, ".12g")
    return str(x)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(x) for x in r])
    return buf.getvalue()


def write_csv(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(to_csv(header, rows))

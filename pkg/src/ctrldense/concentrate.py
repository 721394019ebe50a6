"""Ancilla-assisted entanglement concentration.

The printed two-level concentration matrices are reproduced entry for entry
(with one corrected typo, see :func:`u3_4ghz`), each with its own validity
domain. :func:`generic_concentrator` is the unitary-everywhere replacement
used wherever a printed matrix does not apply.
"""
from __future__ import annotations

import numpy as np

from .measure import BranchDecomposition, ComputationalBasis, measure_party
from .qcore import DomainError, GateMatrix, PureState, apply, ket, root_entry, tensor

# printed (A, aux) ordering of the 4x4 qubit matrices
PAPER_ORDER = ("00", "10", "01", "11")
QUTRIT_ORDER = tuple(f"{a}{b}" for a in range(3) for b in range(3))


def _ratio(num: float, den: float, label: str) -> float:
    if abs(den) < 1e-300:
        raise DomainError(f"{label} is undefined (division by zero)")
    return num / den


def _build(name, rows, dims, ordering, params, violations, unchecked) -> GateMatrix:
    m = GateMatrix(name, np.array(rows, dtype=complex), dims, ordering, params, tuple(violations))
    if violations and not unchecked:
        raise DomainError(f"{name} at {params}: " + "; ".join(violations))
    return m


def u1_ghz(theta: float, unchecked: bool = False) -> GateMatrix:
    """Scales A's |0> by cot(theta); real and unitary for theta in [pi/4, pi/2]."""
    v: list[str] = []
    c = _ratio(np.cos(theta), np.sin(theta), "cot(theta)")
    r = root_entry(1 - c * c, "sqrt(1 - cot^2)", v)
    rows = [[c, 0, r, 0],
            [0, 1, 0, 0],
            [0, 0, 0, -1],
            [r, 0, -c, 0]]
    return _build("U1", rows, (2, 2), PAPER_ORDER, {"theta": theta}, v, unchecked)


def u2_ghz(theta: float, unchecked: bool = False) -> GateMatrix:
    """Variant of U1 for an ancilla prepared in |1>; same domain."""
    v: list[str] = []
    c = _ratio(np.cos(theta), np.sin(theta), "cot(theta)")
    r = root_entry(1 - c * c, "sqrt(1 - cot^2)", v)
    rows = [[1, 0, 0, 0],
            [0, c, r, 0],
            [0, -r, c, 0],
            [0, 0, 0, 1]]
    return _build("U2", rows, (2, 2), PAPER_ORDER, {"theta": theta}, v, unchecked)


def u1_prime(theta: float, unchecked: bool = False) -> GateMatrix:
    """Scales A's |0> by tan(theta); real and unitary for theta in [0, pi/4]."""
    v: list[str] = []
    t = _ratio(np.sin(theta), np.cos(theta), "tan(theta)")
    r = root_entry(1 - t * t, "sqrt(1 - tan^2)", v)
    rows = [[t, 0, r, 0],
            [0, 1, 0, 0],
            [0, 0, 0, -1],
            [r, 0, -t, 0]]
    return _build("U1'", rows, (2, 2), PAPER_ORDER, {"theta": theta}, v, unchecked)


def u3_4ghz(theta: float, epsilon: float, as_printed: bool = False,
            unchecked: bool = False) -> GateMatrix:
    """Concentrator for the four-party GHZ branch, ratio q = tan(theta) tan(epsilon).

    The printed third row reads (-sqrt(1-q^2), 1, q, 0), which is not unitary
    for any q. The default build uses 0 in place of that 1; ``as_printed``
    keeps it for auditing.
    """
    v: list[str] = []
    q = _ratio(np.sin(theta) * np.sin(epsilon), np.cos(theta) * np.cos(epsilon),
               "tan(theta) tan(epsilon)")
    r = root_entry(1 - q * q, "sqrt(1 - q^2)", v)
    stray = 1 if as_printed else 0
    rows = [[q, 0, r, 0],
            [0, 1, 0, 0],
            [-r, stray, q, 0],
            [0, 0, 0, -1]]
    name = "U3-4GHZ (as printed)" if as_printed else "U3-4GHZ"
    return _build(name, rows, (2, 2), PAPER_ORDER, {"theta": theta, "epsilon": epsilon}, v,
                  unchecked)


def u3_wn(theta: float, unchecked: bool = False) -> GateMatrix:
    """Scales A's |1> by tan(theta); real and unitary for theta in [0, pi/4].

    Read with the same (A, aux) ordering as the other 4x4 matrices; that
    reading also reproduces the sign of the printed ancilla-|1> term.
    """
    v: list[str] = []
    t = _ratio(np.sin(theta), np.cos(theta), "tan(theta)")
    r = root_entry(1 - t * t, "sqrt(1 - tan^2)", v)
    rows = [[1, 0, 0, 0],
            [0, t, r, 0],
            [0, -r, t, 0],
            [0, 0, 0, 1]]
    return _build("U3-Wn", rows, (2, 2), PAPER_ORDER, {"theta": theta}, v, unchecked)


def _braid(name: str, outer: float, inner: float, theta: float, unchecked: bool) -> GateMatrix:
    # outer ratio couples |00>,|22> of (A, aux); inner couples |02>,|20>
    v: list[str] = []
    ro = root_entry(1 - outer * outer, "(0,8)/(8,0)", v)
    ri = root_entry(1 - inner * inner, "(2,6)/(6,2)", v)
    m = np.eye(9, dtype=complex)
    m[0, 0], m[0, 8], m[8, 0], m[8, 8] = outer, ro, ro, -outer
    m[2, 2], m[2, 6], m[6, 2], m[6, 6] = inner, ri, ri, -inner
    return _build(name, m, (3, 3), QUTRIT_ORDER, {"theta": theta}, v, unchecked)


def braid_b1(theta: float, unchecked: bool = True) -> GateMatrix:
    """9x9 braid matrix with cot(theta) on the |00>,|22> block and tan(theta) on |02>,|20>.

    Both square-root entries are real only at theta = pi/4, so the matrix is
    built unchecked by default and its domain violations ride along.
    """
    c = _ratio(np.cos(theta), np.sin(theta), "cot(theta)")
    t = _ratio(np.sin(theta), np.cos(theta), "tan(theta)")
    return _braid("B1", c, t, theta, unchecked)


def braid_b2(theta: float, unchecked: bool = True) -> GateMatrix:
    """B1 with the tan and cot blocks exchanged."""
    c = _ratio(np.cos(theta), np.sin(theta), "cot(theta)")
    t = _ratio(np.sin(theta), np.cos(theta), "tan(theta)")
    return _braid("B2", t, c, theta, unchecked)


def generic_concentrator(a: float, b: float, dim: int = 2, levels: tuple[int, int] = (0, 1)) -> GateMatrix:
    """Two-level concentrator on (party, ancilla), unitary for every input.

    For a shared state a|i..> + b|j..> (party level i, j), the level carrying
    the larger amplitude is damped by min/max on ancilla 0 and the remainder
    is rotated onto ancilla 1. The ancilla-0 branch is then
    min(a, b) (|i..> + |j..>), reached with probability 2 min(a, b)^2.
    """
    if dim not in (2, 3):
        raise ValueError(f"dim must be 2 or 3, got {dim}")
    i, j = levels
    if i == j or not (0 <= i < dim and 0 <= j < dim):
        raise ValueError(f"levels {levels} invalid for dim {dim}")
    if a < 0 or b < 0:
        raise ValueError("amplitudes must be non-negative magnitudes")
    if abs(a * a + b * b - 1) > 1e-9:
        raise ValueError(f"unnormalized pair: a^2 + b^2 = {a * a + b * b!r}")
    big, small = (i, a), (j, b)
    if b > a:
        big, small = small, big
    q = small[1] / big[1]
    r = np.sqrt(max(0.0, 1 - q * q))
    m = np.eye(dim * dim, dtype=complex)
    g0, g1 = big[0] * dim + 0, big[0] * dim + 1
    m[g0, g0], m[g1, g0] = q, r
    m[g0, g1], m[g1, g1] = -r, q
    return GateMatrix("generic", m, (dim, dim), params={"a": a, "b": b, "levels": levels})


def concentrate(shared: PureState, m: GateMatrix, aux_dim: int, party: str = "A",
                aux_init: int = 0, unchecked: bool = False) -> BranchDecomposition:
    """Attach |aux_init>, apply ``m`` on (party, aux), read the ancilla in the computational basis."""
    extended = tensor(shared, ket((("aux", aux_dim),), str(aux_init)))
    out = apply(m, extended, [party, "aux"], unchecked=unchecked)
    return measure_party(out, "aux", ComputationalBasis(aux_dim))

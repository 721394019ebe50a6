"""Catalog of the multipartite states used by the protocols."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qcore import GateMatrix, PureState, apply, from_terms

QUBITS3 = (("A", 2), ("B", 2), ("C", 2))
QUBITS4 = (("P", 2), ("A", 2), ("B", 2), ("C", 2))
QUTRITS3 = (("A", 3), ("B", 3), ("C", 3))

FAMILIES = ("GHZ_VARIANT", "GHZ_TYPE", "MS", "GHZ4", "W3", "W4", "WN", "QUTRIT_GHZ")

# variant 0 is |001> + |110>; 1..7 are the relabelled forms, in listed order
_GHZ_VARIANTS = {
    0: {"001": 1, "110": 1},
    1: {"010": 1, "101": 1},
    2: {"010": 1, "101": -1},
    3: {"001": 1, "110": -1},
    4: {"001": 1, "110": 1},
    5: {"100": 1, "011": -1},
    6: {"100": 1, "011": 1},
    7: {"000": 1, "111": -1},
}


@dataclass(frozen=True)
class StateSpec:
    family: str
    k: int = 0
    l: float = 1.0
    delta: float = 0.0
    n: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.family == "GHZ_VARIANT" and not 0 <= self.k <= 7:
            raise ValueError(f"GHZ variant index must be 0..7, got {self.k}")
        if self.family == "GHZ_TYPE" and not self.l > 0:
            raise ValueError(f"GHZ-type parameter l must be > 0, got {self.l}")
        if self.family == "WN" and self.n < 1:
            raise ValueError(f"W_n parameter n must be >= 1, got {self.n}")


def ghz_variant(k: int) -> StateSpec:
    return StateSpec("GHZ_VARIANT", k=k)


def ghz_type(l: float) -> StateSpec:
    return StateSpec("GHZ_TYPE", l=l)


def maximal_slice(delta: float) -> StateSpec:
    return StateSpec("MS", delta=delta)


def wn(n: int) -> StateSpec:
    return StateSpec("WN", n=n)


GHZ4 = StateSpec("GHZ4")
W3 = StateSpec("W3")
W4 = StateSpec("W4")
QUTRIT_GHZ = StateSpec("QUTRIT_GHZ")


def phi_n(n: int) -> dict[str, float]:
    """(|10> + sqrt(n)|01>)/sqrt(n+1) on AB."""
    r = 1 / np.sqrt(n + 1)
    return {"10": r, "01": np.sqrt(n) * r}


def phi_n_perp(n: int) -> dict[str, float]:
    """(sqrt(n)|10> - |01>)/sqrt(n+1): the real orthogonal complement of phi_n in span{|10>,|01>}."""
    r = 1 / np.sqrt(n + 1)
    return {"10": np.sqrt(n) * r, "01": -r}


def _terms(spec: StateSpec) -> tuple[tuple, dict[str, complex]]:
    f = spec.family
    if f == "GHZ_VARIANT":
        return QUBITS3, dict(_GHZ_VARIANTS[spec.k])
    if f == "GHZ_TYPE":
        return QUBITS3, {"000": 1, "111": spec.l}
    if f == "MS":
        return QUBITS3, {"000": 1, "110": np.cos(spec.delta), "111": np.sin(spec.delta)}
    if f == "GHZ4":
        return QUBITS4, {"0000": 1, "1111": 1}
    if f == "W3":
        return QUBITS3, {"100": 1, "010": 1, "001": 1}
    if f == "W4":
        return QUBITS4, {"1000": 1, "0100": 1, "0010": 1, "0001": 1}
    if f == "WN":
        terms = {ab + "0": a for ab, a in phi_n(spec.n).items()}
        terms["001"] = 1
        return QUBITS3, terms
    return QUTRITS3, {"000": 1, "111": 1, "222": 1}


def make(spec: StateSpec, normalized: bool = True) -> PureState:
    """Catalog state for ``spec``.

    With ``normalized=False`` the overall normalization constant is left off,
    e.g. GHZ-type comes back as ``|000> + l|111>``. Measurement branches of
    that raw form carry the coefficients in the shape they are usually written
    by hand, and the closed-form success weights refer to them.
    """
    register, terms = _terms(spec)
    return from_terms(register, terms, normalize=normalized)


def u_ab(n: int) -> GateMatrix:
    """|phi><00| + |11><01| + |phi_perp><10| + |00><11| on (A, B)."""
    cols = {
        "00": phi_n(n),
        "01": {"11": 1.0},
        "10": phi_n_perp(n),
        "11": {"00": 1.0},
    }
    m = np.zeros((4, 4))
    for src, image in cols.items():
        for dst, a in image.items():
            m[int(dst, 2), int(src, 2)] = a
    return GateMatrix("U_AB", m, (2, 2), params={"n": n})


def wn_from_ghz(n: int) -> PureState:
    """(U_AB (x) I_C) applied to (|000> + |111>)/sqrt(2)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return apply(u_ab(n), make(ghz_type(1.0)), ["A", "B"])


CLI_NAMES = {
    "ghz": ghz_variant(0),
    **{f"g{k}": ghz_variant(k) for k in range(1, 8)},
    "ghz-type": None,
    "ms": None,
    "ghz4": GHZ4,
    "w3": W3,
    "w4": W4,
    "wn": None,
    "qutrit-ghz": QUTRIT_GHZ,
}

CATALOG = [
    ("ghz, g1..g7", "GHZ_VARIANT(k: 0..7)", "(|001>+|110>)/sqrt2 and its seven relabelled forms"),
    ("ghz-type", "GHZ_TYPE(l > 0)", "L(|000> + l|111>), L = 1/sqrt(1+l^2)"),
    ("ms", "MS(delta)", "(|000> + cos d|110> + sin d|111>)/sqrt2"),
    ("ghz4", "GHZ4", "(|0000> + |1111>)/sqrt2 on PABC"),
    ("w3", "W3", "(|100> + |010> + |001>)/sqrt3"),
    ("w4", "W4", "(|1000> + |0100> + |0010> + |0001>)/2 on PABC"),
    ("wn", "WN(n >= 1)", "(|phi_n>|0> + |00>|1>)/sqrt2"),
    ("qutrit-ghz", "QUTRIT_GHZ", "(|000> + |111> + |222>)/sqrt3"),
]


def spec_from_name(name: str, l: float = 1.0, delta: float = 0.0, n: int = 1) -> StateSpec:
    if name not in CLI_NAMES:
        raise ValueError(f"unknown state {name!r}; expected one of {sorted(CLI_NAMES)}")
    if name == "ghz-type":
        return ghz_type(l)
    if name == "ms":
        return maximal_slice(delta)
    if name == "wn":
        return wn(n)
    return CLI_NAMES[name]

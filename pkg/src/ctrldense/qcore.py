"""Dense state-vector algebra over small mixed-dimension registers.

Amplitudes are indexed mixed-radix with the first listed party as the most
significant digit. Registers never exceed 81 amplitudes, so everything is a
plain dense numpy array.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

UNITARY_TOL = 1e-10
NORM_TOL = 1e-12
PROTOCOL_TOL = 1e-9

# imaginary parts below this are treated as round-off
_IMAG_TOL = 1e-12


class DomainError(ValueError):
    """A parameterized matrix was requested outside the region where it is real and unitary."""


Register = tuple[tuple[str, int], ...]


def _check_register(register: Register) -> Register:
    register = tuple((str(label), int(dim)) for label, dim in register)
    if not register:
        raise ValueError("register must contain at least one party")
    labels = [label for label, _ in register]
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate party label in {labels}")
    for label, dim in register:
        if dim not in (2, 3):
            raise ValueError(f"party {label!r} has dimension {dim}; only 2 and 3 are supported")
    return register


@dataclass(frozen=True)
class PureState:
    """Amplitude vector over a labelled register.

    ``normalized`` is False for raw measurement branches, whose squared norm
    is the weight of that branch rather than 1.
    """

    register: Register
    amps: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        register = _check_register(self.register)
        amps = np.array(self.amps, dtype=complex).reshape(-1)
        if amps.size != int(np.prod([d for _, d in register])):
            raise ValueError(f"{amps.size} amplitudes do not fit register {register}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        if self.normalized and abs(np.vdot(amps, amps).real - 1.0) > NORM_TOL:
            raise ValueError(f"state flagged normalized has squared norm {np.vdot(amps, amps).real!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "register", register)
        object.__setattr__(self, "amps", amps)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.register)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(dim for _, dim in self.register)

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def tensor_view(self) -> np.ndarray:
        return self.amps.reshape(self.dims)

    def normalize(self) -> PureState:
        n = self.norm_sq
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return PureState(self.register, self.amps / np.sqrt(n), normalized=True)

    def scaled(self, factor: complex) -> PureState:
        return PureState(self.register, self.amps * factor, normalized=False)

    def amp(self, digits: str) -> complex:
        """Amplitude of a basis ket written as a digit string, e.g. ``amp("011")``."""
        if len(digits) != len(self.register):
            raise ValueError(f"expected {len(self.register)} digits, got {digits!r}")
        return complex(self.tensor_view()[tuple(int(c) for c in digits)])

    def nonzero(self, tol: float = 1e-12) -> dict[str, complex]:
        """Map of basis-ket digit strings to amplitudes above ``tol``."""
        out = {}
        for idx in np.ndindex(*self.dims):
            a = self.tensor_view()[idx]
            if abs(a) > tol:
                out["".join(str(i) for i in idx)] = complex(a)
        return out

    def __str__(self):
        terms = []
        for ket, a in self.nonzero().items():
            if abs(a.imag) < _IMAG_TOL:
                coeff = f"{a.real:.10g}"
            else:
                coeff = f"({a.real:.10g}{a.imag:+.10g}j)"
            terms.append(f"{coeff}|{ket}>")
        return " + ".join(terms) if terms else "0"


def ket(register: Sequence[tuple[str, int]], digits: str) -> PureState:
    """Computational basis state ``|digits>`` on ``register``."""
    register = _check_register(tuple(register))
    dims = [d for _, d in register]
    amps = np.zeros(dims, dtype=complex)
    amps[tuple(int(c) for c in digits)] = 1.0
    return PureState(register, amps.reshape(-1))


def from_terms(register: Sequence[tuple[str, int]], terms: dict[str, complex],
               normalize: bool = True) -> PureState:
    """Build a state from ``{"001": amp, ...}``; optionally rescale to unit norm."""
    register = _check_register(tuple(register))
    dims = [d for _, d in register]
    amps = np.zeros(dims, dtype=complex)
    for digits, a in terms.items():
        amps[tuple(int(c) for c in digits)] += a
    state = PureState(register, amps.reshape(-1), normalized=False)
    return state.normalize() if normalize else state


def tensor(a: PureState, b: PureState) -> PureState:
    if set(a.labels) & set(b.labels):
        raise ValueError(f"duplicate party label: {sorted(set(a.labels) & set(b.labels))}")
    return PureState(a.register + b.register, np.kron(a.amps, b.amps),
                     normalized=a.normalized and b.normalized)


def inner(a: PureState, b: PureState) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    if a.register != b.register:
        raise ValueError(f"register mismatch: {a.register} vs {b.register}")
    return complex(np.vdot(a.amps, b.amps))


def fidelity(a: PureState, b: PureState) -> float:
    """|<a|b>|^2 after normalizing both; global phase drops out."""
    return abs(inner(a.normalize(), b.normalize())) ** 2


def density_and_partial_trace(s: PureState, keep: Sequence[str]) -> np.ndarray:
    """Reduced density matrix on ``keep`` (kept parties stay in register order)."""
    keep = list(keep)
    unknown = set(keep) - set(s.labels)
    if unknown:
        raise ValueError(f"unknown party label(s): {sorted(unknown)}")
    psi = s.normalize().tensor_view()
    kept = [i for i, label in enumerate(s.labels) if label in keep]
    traced = [i for i in range(len(s.labels)) if i not in kept]
    rho = np.tensordot(psi, psi.conj(), axes=(traced, traced))
    d = int(np.prod([s.dims[i] for i in kept]))
    return rho.reshape(d, d)


@dataclass(frozen=True)
class GateMatrix:
    """A square matrix acting on an ordered tuple of subsystems.

    ``ordering[k]`` names the basis ket of row/column ``k`` as a digit string
    over the target subsystems, so matrices can be entered exactly as printed
    (for example with ``|00>, |10>, |01>, |11>`` ordering) and permuted into
    the register convention on use. ``violations`` lists entries that stopped
    being real because the parameters left the matrix's validity domain.
    """

    name: str
    entries: np.ndarray
    dims: tuple[int, ...]
    ordering: tuple[str, ...] | None = None
    params: dict = field(default_factory=dict)
    violations: tuple[str, ...] = ()

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        dim = int(np.prod(self.dims))
        if m.shape != (dim, dim):
            raise ValueError(f"{self.name}: shape {m.shape} does not match dims {self.dims}")
        if not np.all(np.isfinite(m)):
            raise ValueError(f"{self.name}: non-finite entries")
        ordering = self.ordering
        if ordering is None:
            ordering = tuple("".join(map(str, idx)) for idx in np.ndindex(*self.dims))
        ordering = tuple(ordering)
        if sorted(ordering) != sorted("".join(map(str, idx)) for idx in np.ndindex(*self.dims)):
            raise ValueError(f"{self.name}: ordering {ordering} is not a permutation of the basis")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "ordering", ordering)
        object.__setattr__(self, "violations", tuple(self.violations))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def domain_ok(self) -> bool:
        return not self.violations

    def canonical(self) -> np.ndarray:
        """Entries re-expressed in mixed-radix order (first target most significant)."""
        pos = {label: k for k, label in enumerate(self.ordering)}
        perm = [pos["".join(map(str, idx))] for idx in np.ndindex(*self.dims)]
        return self.entries[np.ix_(perm, perm)]


def apply(m: GateMatrix, s: PureState, targets: Sequence[str], unchecked: bool = False) -> PureState:
    """Apply ``m`` to the parties ``targets`` of ``s`` (identity elsewhere).

    Raises :class:`DomainError` when ``m`` carries domain violations unless
    ``unchecked`` is set; the unchecked result is generally not normalized.
    """
    targets = list(targets)
    if len(set(targets)) != len(targets):
        raise ValueError(f"repeated target in {targets}")
    missing = set(targets) - set(s.labels)
    if missing:
        raise ValueError(f"unknown target label(s): {sorted(missing)}")
    axes = [s.labels.index(t) for t in targets]
    tdims = tuple(s.dims[i] for i in axes)
    if tdims != tuple(m.dims):
        raise ValueError(f"{m.name} acts on dims {m.dims}, targets {targets} have dims {tdims}")
    if m.violations and not unchecked:
        raise DomainError(f"{m.name} at {m.params}: " + "; ".join(m.violations))
    psi = np.moveaxis(s.tensor_view(), axes, list(range(len(axes))))
    rest = psi.shape[len(axes):]
    out = m.canonical() @ psi.reshape(m.dim, -1)
    out = np.moveaxis(out.reshape(tdims + rest), list(range(len(axes))), axes)
    new = out.reshape(-1)
    keep_flag = s.normalized and abs(np.vdot(new, new).real - 1.0) <= NORM_TOL
    return PureState(s.register, new, normalized=keep_flag)


@dataclass(frozen=True)
class UnitarityReport:
    name: str
    params: dict
    max_deviation: float
    complex_entries: tuple[str, ...]
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        p = ", ".join(f"{k}={v:.6g}" for k, v in self.params.items())
        extra = f"  complex: {', '.join(self.complex_entries)}" if self.complex_entries else ""
        return f"{status}  {self.name}({p})  max|MM^+ - I| = {self.max_deviation:.3e}{extra}"


def check_unitary(m: GateMatrix) -> UnitarityReport:
    """Max entry of |M M^+ - I| plus the positions of entries with non-zero imaginary part.

    Complex entries are listed for diagnosis only; a matrix fails when it is
    not unitary to tolerance or carries domain violations.
    """
    e = m.entries
    dev = float(np.max(np.abs(e @ e.conj().T - np.eye(m.dim))))
    cplx = tuple(f"({i},{j})={e[i, j]:.6g}" for i, j in zip(*np.nonzero(np.abs(e.imag) > _IMAG_TOL)))
    return UnitarityReport(m.name, dict(m.params), dev, cplx, dev <= UNITARY_TOL and m.domain_ok)


def root_entry(x: float, label: str, violations: list[str]) -> complex:
    """sqrt(x) for a matrix entry; records a violation instead of failing when x < 0."""
    if x < 0 and x > -NORM_TOL:
        x = 0.0
    if x < 0:
        violations.append(f"entry {label} = sqrt({x:.6g}) is not real")
        return complex(0.0, np.sqrt(-x))
    return complex(np.sqrt(x))


# single-qubit operators; Alice's four encodings are I, X, iY, Z
I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def gate(name: str, matrix: np.ndarray, dims: Sequence[int] = (2,), **params) -> GateMatrix:
    return GateMatrix(name, np.asarray(matrix, dtype=complex), tuple(dims), params=params)

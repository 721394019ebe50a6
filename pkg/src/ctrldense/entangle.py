"""Two-qubit concurrence under three conventions.

``concurrence`` is Wootters' eigenvalue formula on a normalized density
matrix. ``branch_concurrence`` is 2|a00 a11 - a01 a10| taken on raw branch
amplitudes without normalizing, which is the convention behind several of the
closed forms in ``paper_closed_forms``. For normalized pure states the two
agree.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qcore import PureState, Y, density_and_partial_trace

_SYSY = np.kron(Y, Y)


def concurrence(rho: np.ndarray) -> float:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 two-qubit density matrix, got shape {rho.shape}")
    if abs(np.trace(rho).real - 1) > 1e-9 or not np.allclose(rho, rho.conj().T, atol=1e-9):
        raise ValueError("non-physical density matrix (trace or hermiticity)")
    if np.linalg.eigvalsh((rho + rho.conj().T) / 2).min() < -1e-9:
        raise ValueError("non-physical density matrix (negative eigenvalue)")
    # the square roots of eig(rho rho~) are the singular values of sqrt(rho) YY sqrt(rho)*;
    # taking them directly avoids sqrt amplifying round-off in the zero eigenvalues
    w, v = np.linalg.eigh((rho + rho.conj().T) / 2)
    w = np.where(w < 1e-13, 0.0, w)
    root = (v * np.sqrt(w)) @ v.conj().T
    lam = np.linalg.svd(root @ _SYSY @ root.conj(), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def state_concurrence(s: PureState) -> float:
    """Wootters concurrence of a (possibly raw) two-qubit pure state, normalized first."""
    if s.dims != (2, 2):
        raise ValueError(f"expected two qubits, got dims {s.dims}")
    return concurrence(density_and_partial_trace(s, s.labels))


def branch_concurrence(s: PureState) -> float:
    if s.dims != (2, 2):
        raise ValueError(f"expected two qubits, got dims {s.dims}")
    a = s.tensor_view()
    return float(2 * abs(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]))


def paper_closed_forms(which: str, theta: float, epsilon: float | None = None) -> float:
    """C = |sin 2t|, C1 = 2 sin^2 t sin^2 e, C2 = sqrt2 |cos t sin t|, C4 = |sin 2t|."""
    if which in ("C", "C4"):
        return abs(np.sin(2 * theta))
    if which == "C1":
        if epsilon is None:
            raise ValueError("C1 needs epsilon")
        return 2 * np.sin(theta) ** 2 * np.sin(epsilon) ** 2
    if which == "C2":
        return np.sqrt(2) * abs(np.cos(theta) * np.sin(theta))
    raise ValueError(f"unknown closed form {which!r}; expected C, C1, C2 or C4")


@dataclass(frozen=True)
class ConcurrenceReport:
    wootters: float
    branch: float
    paper_closed_form: float | None = None


def report(s: PureState, closed_form: float | None = None) -> ConcurrenceReport:
    return ConcurrenceReport(state_concurrence(s), branch_concurrence(s), closed_form)

"""Single-party von Neumann measurements in angle-parameterized bases."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .qcore import PureState

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class QubitBasis:
    """|+> = cos t|0> + sin t|1>,  |-> = sin t|0> - cos t|1>."""

    theta: float
    dim = 2

    @property
    def outcomes(self) -> tuple[str, ...]:
        return ("+", "-")

    def vectors(self) -> np.ndarray:
        c, s = np.cos(self.theta), np.sin(self.theta)
        return np.array([[c, s], [s, -c]], dtype=complex)


@dataclass(frozen=True)
class QutritBasis:
    """up = sin t|0> + cos t|2>,  slant = |1>,  down = cos t|0> - sin t|2>."""

    theta: float
    dim = 3

    @property
    def outcomes(self) -> tuple[str, ...]:
        return ("up", "slant", "down")

    def vectors(self) -> np.ndarray:
        c, s = np.cos(self.theta), np.sin(self.theta)
        return np.array([[s, 0, c], [0, 1, 0], [c, 0, -s]], dtype=complex)


@dataclass(frozen=True)
class ComputationalBasis:
    dim: int

    @property
    def outcomes(self) -> tuple[str, ...]:
        return tuple(str(k) for k in range(self.dim))

    def vectors(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)


Basis = QubitBasis | QutritBasis | ComputationalBasis


@dataclass(frozen=True)
class Branch:
    outcome: str
    state: PureState
    probability: float


@dataclass(frozen=True)
class BranchDecomposition:
    """Outcome-labelled raw residual states of one measured party.

    ``probability`` is the squared norm of the raw branch. The branches of a
    normalized input therefore sum to one; for a raw (unnormalized) input
    they sum to the input's squared norm.
    """

    party: str
    dim: int
    basis_vectors: np.ndarray
    branches: tuple[Branch, ...]

    def __getitem__(self, outcome: str) -> Branch:
        for b in self.branches:
            if b.outcome == outcome:
                return b
        raise KeyError(f"no outcome {outcome!r}; have {[b.outcome for b in self.branches]}")

    @property
    def outcomes(self) -> tuple[str, ...]:
        return tuple(b.outcome for b in self.branches)

    @property
    def total(self) -> float:
        return float(sum(b.probability for b in self.branches))

    def conditional(self, outcome: str) -> float:
        """Probability of ``outcome`` renormalized over the branches."""
        return self[outcome].probability / self.total

    def reconstruct(self, position: int) -> np.ndarray:
        """sum_k |b_k> (x) branch_k with the measured party reinserted at ``position``."""
        total = None
        for vec, b in zip(self.basis_vectors, self.branches):
            t = np.multiply.outer(vec, b.state.tensor_view())
            t = np.moveaxis(t, 0, position)
            total = t if total is None else total + t
        return total.reshape(-1)


def measure_party(s: PureState, party: str, basis: Basis) -> BranchDecomposition:
    """Project ``party`` onto each basis vector; no sampling, every outcome is kept."""
    if party not in s.labels:
        raise ValueError(f"unknown party {party!r}")
    axis = s.labels.index(party)
    if s.dims[axis] != basis.dim:
        raise ValueError(f"party {party!r} has dimension {s.dims[axis]}, basis has {basis.dim}")
    if len(s.register) == 1:
        raise ValueError("cannot measure the only party of a register")
    rest = tuple(p for p in s.register if p[0] != party)
    psi = s.tensor_view()
    vecs = basis.vectors()
    branches = []
    for outcome, vec in zip(basis.outcomes, vecs):
        amps = np.tensordot(vec.conj(), psi, axes=(0, axis))
        st = PureState(rest, amps.reshape(-1), normalized=False)
        branches.append(Branch(outcome, st, st.norm_sq))
    return BranchDecomposition(party, basis.dim, vecs, tuple(branches))


def normalized_branch(d: BranchDecomposition, outcome: str) -> PureState:
    b = d[outcome]
    log.debug("normalizing branch %s of party %s (weight %.12g)", outcome, d.party, b.probability)
    return b.state.normalize()


def sample_outcome(d: BranchDecomposition, rng: np.random.Generator) -> tuple[str, PureState]:
    """Draw one outcome with its (renormalized) probability and return the normalized branch."""
    p = np.array([b.probability for b in d.branches])
    p = p / p.sum()
    k = int(rng.choice(len(p), p=p))
    return d.branches[k].outcome, d.branches[k].state.normalize()


def gram_deviation(basis: Basis) -> float:
    v = basis.vectors()
    return float(np.max(np.abs(v.conj() @ v.T - np.eye(basis.dim))))


def completeness_error(s: PureState, party: str, basis: Basis) -> float:
    """|sum of branch probabilities - |s|^2|; zero for any orthonormal basis."""
    return abs(measure_party(s, party, basis).total - s.norm_sq)


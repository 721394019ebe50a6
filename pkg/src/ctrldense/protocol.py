"""End-to-end controlled dense coding runs.

Every run follows the same outline: the controller(s) measure and announce,
Alice concentrates the local half of the announced branch with an ancilla, aligns
the shared pair to a fixed reference by a local phase/permutation, encodes
one of four messages and sends the particle to Bob, who decodes.

Probabilities are analytic by default. Passing an ``rng`` samples the
ancilla, controller and decoder outcomes instead, so a run may then end
without a decoded message.

``success_probability`` is the probability that two bits reach Bob, given
Charlie's announced outcome. For four-party states it therefore includes
the probability of Paul's outcome.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import concentrate as conc
from . import states as st
from .entangle import state_concurrence
from .measure import QubitBasis, QutritBasis, measure_party
from .qcore import (CNOT, H, I2, PROTOCOL_TOL, X, Z, GateMatrix, PureState, apply,
                    from_terms, gate, inner)

AB = (("A", 2), ("B", 2))
AB3 = (("A", 3), ("B", 3))

QUBIT_ENCODINGS = {0: ("I", I2), 1: ("X", X), 2: ("iY", np.array([[0, 1], [-1, 0]], dtype=complex)),
                   3: ("Z", Z)}

# |0><0|+|2><2|, |0><2|+|2><0|, |0><2|-|2><0|, |0><0|-|2><2|, each completed with |1><1|
QUTRIT_ENCODINGS = {
    0: ("P0", np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1]], dtype=complex)),
    1: ("P1", np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=complex)),
    2: ("P2", np.array([[0, 0, 1], [0, 1, 0], [-1, 0, 0]], dtype=complex)),
    3: ("P3", np.array([[1, 0, 0], [0, 1, 0], [0, 0, -1]], dtype=complex)),
}

# table of designated Charlie outcomes and the bit formula for each GHZ variant;
# variant 0 accepts either outcome
GHZ_TABLE = {
    1: ("+", "sin"), 2: ("-", "cos"), 3: ("-", "sin"), 4: ("+", "cos"),
    5: ("-", "sin"), 6: ("+", "cos"), 7: ("-", "cos"),
}
_GHZ0 = {"+": "cos", "-": "sin"}

BELL_REFERENCE = from_terms(AB, {"00": 1, "11": 1})
QUTRIT_REFERENCE = from_terms(AB3, {"00": 1, "22": -1})


def _f(x: float) -> str:
    return f"{x:.12g}"


@dataclass(frozen=True)
class DiscriminationResult:
    conclusive: bool
    identified: int | None
    success_probability: float


@dataclass(frozen=True)
class ProtocolOutcome:
    """Transcript and probabilities of one run.

    ``stages`` holds the probability of each step along the two-bit path,
    conditional on the previous steps; ``success_probability`` is their
    product. ``distribution`` maps each possible decoded message (None for
    failure or an inconclusive result) to its probability.
    """

    protocol: str
    msg: int
    transcript: tuple[str, ...]
    stages: dict[str, float]
    success_probability: float
    average_bits: float
    decoded: int | None
    conclusive: bool
    distribution: dict
    shared: PureState | None = None
    flags: dict = field(default_factory=dict)

    def summary_line(self) -> str:
        d = "none" if self.decoded is None else str(self.decoded)
        return f"decoded={d} p_success={_f(self.success_probability)} avg_bits={_f(self.average_bits)}"

    def to_dict(self) -> dict:
        return {
            "protocol": self.protocol,
            "msg": self.msg,
            "transcript": list(self.transcript),
            "stages": {k: float(v) for k, v in self.stages.items()},
            "success_probability": float(self.success_probability),
            "average_bits": float(self.average_bits),
            "decoded": self.decoded,
            "conclusive": self.conclusive,
            "distribution": {("none" if k is None else str(k)): float(v)
                             for k, v in self.distribution.items()},
            "shared_state": None if self.shared is None else str(self.shared),
            "flags": {k: (float(v) if isinstance(v, (float, np.floating)) else v)
                      for k, v in self.flags.items()},
        }


# --- unambiguous discrimination -------------------------------------------------

def usd_povm(psi: PureState, phi: PureState) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Optimal equal-prior unambiguous POVM (E_psi, E_phi, E_inconclusive)."""
    if psi.register != phi.register:
        raise ValueError("states live on different registers")
    psi, phi = psi.normalize(), phi.normalize()
    s = inner(psi, phi)
    if abs(s) > 1 - 1e-12:
        raise ValueError("identical states cannot be discriminated")
    u = psi.amps - inner(phi, psi) * phi.amps
    u = u / np.linalg.norm(u)
    v = phi.amps - s * psi.amps
    v = v / np.linalg.norm(v)
    e_psi = np.outer(u, u.conj()) / (1 + abs(s))
    e_phi = np.outer(v, v.conj()) / (1 + abs(s))
    e_inc = np.eye(psi.amps.size) - e_psi - e_phi
    return e_psi, e_phi, e_inc


def _povm_probs(povm, state: PureState) -> np.ndarray:
    a = state.normalize().amps
    return np.array([max(0.0, float(np.vdot(a, e @ a).real)) for e in povm])


def discriminate_unambiguous(psi: PureState, phi: PureState, rng: np.random.Generator | None = None,
                             sent: int = 0) -> DiscriminationResult:
    """Tell ``psi`` (index 0) from ``phi`` (index 1) without error.

    Analytic mode reports the conclusive path; with ``rng`` the POVM outcome
    for the ``sent`` state is drawn.
    """
    povm = usd_povm(psi, phi)
    p_success = 1 - abs(inner(psi.normalize(), phi.normalize()))
    if rng is None:
        return DiscriminationResult(True, sent, p_success)
    probs = _povm_probs(povm, psi if sent == 0 else phi)
    k = int(rng.choice(3, p=probs / probs.sum()))
    return DiscriminationResult(k < 2, k if k < 2 else None, p_success)


def sample_discrimination(psi: PureState, phi: PureState, sent: int, rng: np.random.Generator,
                          size: int) -> np.ndarray:
    """Vector of ``size`` POVM outcomes: 0, 1 or -1 for inconclusive."""
    probs = _povm_probs(usd_povm(psi, phi), psi if sent == 0 else phi)
    k = rng.choice(3, p=probs / probs.sum(), size=size)
    return np.where(k == 2, -1, k)


# --- alignment, encoding, decoding ---------------------------------------------

def alignment(shared: PureState, target_phases: dict[int, complex]) -> GateMatrix:
    """Local operation on A turning sum_b c_b |a(b) b> into sum_b |c_b| w_b |b b>.

    ``target_phases`` gives the reference phase w_b for each of Bob's levels.
    The shared pair must be of Schmidt form in the computational basis.
    """
    d = shared.dims[0]
    t = shared.tensor_view()
    m = np.zeros((d, d), dtype=complex)
    used_src, used_dst = set(), set()
    for a, b in zip(*np.nonzero(np.abs(t) > 1e-12)):
        if a in used_src or b in used_dst or b not in target_phases:
            raise ValueError(f"shared state {shared} is not of aligned Schmidt form")
        c = t[a, b]
        m[b, a] = target_phases[b] * np.conj(c) / abs(c)
        used_src.add(a)
        used_dst.add(b)
    free_src = [a for a in range(d) if a not in used_src]
    free_dst = [b for b in range(d) if b not in used_dst]
    for a, b in zip(free_src, free_dst):
        m[b, a] = 1
    return gate("align", m, (d,))


def _encode(shared: PureState, msg: int, qutrit: bool) -> tuple[str, PureState]:
    name, op = (QUTRIT_ENCODINGS if qutrit else QUBIT_ENCODINGS)[msg]
    return name, apply(gate(name, op, (op.shape[0],)), shared, ["A"])


def _bell_circuit_bits(s: PureState) -> dict[str, float]:
    out = apply(gate("CNOT", CNOT, (2, 2)), s, ["A", "B"])
    out = apply(gate("H", H, (2,)), out, ["A"])
    return {k: abs(a) ** 2 for k, a in out.nonzero().items()}


def _bell_decode_table() -> dict[str, int]:
    table = {}
    for m in range(4):
        bits = _bell_circuit_bits(_encode(BELL_REFERENCE, m, False)[1])
        (key,) = [k for k, p in bits.items() if p > 0.5]
        table[key] = m
    return table


BELL_TABLE = _bell_decode_table()


def bell_decode(received: PureState) -> dict[int, float]:
    """CNOT(A->B), H on A, computational readout; returns message probabilities."""
    dist: dict[int, float] = {}
    for bits, p in _bell_circuit_bits(received).items():
        m = BELL_TABLE[bits]
        dist[m] = dist.get(m, 0.0) + p
    return dist


_EVEN = ("00", "11")
_ODD = ("01", "10")


def _project(s: PureState, kets) -> PureState:
    keep = {k: a for k, a in s.nonzero().items() if k in kets}
    return from_terms(s.register, keep, normalize=False) if keep else s.scaled(0.0)


def parity_usd_decode(received: PureState, resource: PureState) -> dict:
    """Parity measurement (span{00,11} vs span{01,10}) then optimal unambiguous phase readout.

    ``resource`` is the aligned shared state a|00> + b|11> the four messages
    were encoded on. Returns {message or None: probability}.
    """
    cands = {m: _encode(resource, m, False)[1] for m in range(4)}
    dist: dict = {}
    for kets in (_EVEN, _ODD):
        part = _project(received, kets)
        w = part.norm_sq
        if w < 1e-15:
            continue
        pair = [m for m in range(4) if _project(cands[m], kets).norm_sq > 0.5]
        psi, phi = cands[pair[0]], cands[pair[1]]
        if abs(inner(psi, phi)) > 1 - 1e-12:
            dist[None] = dist.get(None, 0.0) + w
            continue
        probs = _povm_probs(usd_povm(psi, phi), part)
        for m, p in zip(pair + [None], probs):
            dist[m] = dist.get(m, 0.0) + w * p
    return dist


def qutrit_decode(received: PureState) -> dict:
    """Projective measurement onto the four encoded reference states."""
    dist: dict = {}
    rest = received.normalize().norm_sq
    for m in range(4):
        ref = _encode(QUTRIT_REFERENCE, m, True)[1]
        p = abs(inner(ref, received.normalize())) ** 2
        dist[m] = p
        rest -= p
    if rest > 1e-15:
        dist[None] = rest
    return dist


def u_p() -> GateMatrix:
    """|00><00| + |22><20| + |02><02| + |20><22| on (A, B); a partial isometry, not a gate."""
    m = np.zeros((9, 9))
    for dst, src in (("00", "00"), ("22", "20"), ("02", "02"), ("20", "22")):
        m[int(dst, 3), int(src, 3)] = 1
    return GateMatrix("U_P", m, (3, 3))


def decode_via_u_p(received: PureState) -> dict:
    """Apply U_P, then read A in {(|0>+|2>), (|0>-|2>)}/sqrt2 and B in {|0>, |2>}."""
    out = apply(u_p(), received, ["A", "B"], unchecked=True).tensor_view()
    plus = np.array([1, 0, 1]) / np.sqrt(2)
    minus = np.array([1, 0, -1]) / np.sqrt(2)
    # (A outcome, B level) -> message, from U_P applied to the four references
    table = {("-", 0): 0, ("-", 2): 1, ("+", 2): 2, ("+", 0): 3}
    dist: dict = {}
    for (a_lab, b), m in table.items():
        vec = minus if a_lab == "-" else plus
        dist[m] = float(abs(vec @ out[:, b]) ** 2)
    return dist


def _maximal(shared: PureState) -> bool:
    s = np.sort(np.abs(shared.normalize().amps) ** 2)[::-1]
    return abs(s[0] - 0.5) <= PROTOCOL_TOL and abs(s[1] - 0.5) <= PROTOCOL_TOL


def bell_fidelity(shared: PureState) -> float:
    bells = [from_terms(AB, t) for t in ({"00": 1, "11": 1}, {"00": 1, "11": -1},
                                         {"01": 1, "10": 1}, {"01": 1, "10": -1})]
    return max(abs(inner(b, shared.normalize())) ** 2 for b in bells)


def _sample(dist: dict, rng: np.random.Generator):
    keys = list(dist)
    p = np.array([dist[k] for k in keys], dtype=float)
    return keys[int(rng.choice(len(keys), p=p / p.sum()))]


# --- common tail ----------------------------------------------------------------

@dataclass
class _Run:
    protocol: str
    msg: int
    rng: np.random.Generator | None
    lines: list = field(default_factory=list)
    stages: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    # probability mass that leaves the two-bit path before decoding
    failed: float = 0.0
    alive: bool = True

    def log(self, text: str):
        self.lines.append(text)

    def stage(self, name: str, p_ok: float, ok_label: str, fail_text: str):
        """Record a step that stays on the two-bit path with probability ``p_ok``."""
        p_ok = float(min(1.0, max(0.0, p_ok)))
        self.failed += self._mass() * (1 - p_ok)
        self.stages[name] = p_ok
        if self.rng is None or not self.alive:
            self.log(f"{name}: {ok_label} (p={_f(p_ok)})")
            return
        if self.rng.random() < p_ok:
            self.log(f"{name}: {ok_label} (p={_f(p_ok)})")
        else:
            self.log(f"{name}: {fail_text} (p={_f(1 - p_ok)})")
            self.alive = False

    def _mass(self) -> float:
        return float(np.prod(list(self.stages.values()))) if self.stages else 1.0

    def finish(self, shared: PureState | None, qutrit: bool = False) -> ProtocolOutcome:
        mass = self._mass()
        if shared is None or mass == 0.0:
            dist = {None: 1.0}
            p_dec = 0.0
        else:
            if qutrit:
                ref_phases = {0: 1, 2: -1}
            else:
                ref_phases = {0: 1, 1: 1}
            al = alignment(shared.normalize(), ref_phases)
            aligned = apply(al, shared.normalize(), ["A"])
            self.log(f"A aligns the shared pair to {aligned}")
            name, encoded = _encode(aligned, self.msg, qutrit)
            self.log(f"A encodes message {self.msg} with {name} and sends the particle to B")
            if qutrit:
                dec = qutrit_decode(encoded)
                how = "projective measurement onto the four encoded states"
            elif _maximal(aligned):
                dec = bell_decode(encoded)
                how = "Bell measurement (CNOT, H, computational readout)"
            else:
                dec = parity_usd_decode(encoded, aligned)
                how = "parity projection and unambiguous phase discrimination"
            p_dec = float(sum(p for m, p in dec.items() if m is not None))
            self.stages["decode"] = p_dec
            self.log(f"B decodes by {how}")
            dist = {m: mass * p for m, p in dec.items()}
            dist[None] = dist.get(None, 0.0) + (1 - mass)
        success = mass * p_dec
        if self.rng is None:
            conclusive = {m: p for m, p in dist.items() if m is not None and p > 0}
            decoded = max(conclusive, key=conclusive.get) if conclusive else None
        elif self.alive and shared is not None:
            cond = {m: p for m, p in dec.items()}
            decoded = _sample(cond, self.rng)
        else:
            decoded = None
        if decoded is None:
            self.log("B: no two-bit decode on this run (one bit at most)")
        else:
            self.log(f"B: decoded message {decoded}")
        return ProtocolOutcome(
            protocol=self.protocol, msg=self.msg, transcript=tuple(self.lines),
            stages=dict(self.stages), success_probability=success, average_bits=1 + success,
            decoded=decoded, conclusive=decoded is not None, distribution=dist,
            shared=shared.normalize() if shared is not None and shared.norm_sq > 0 else None,
            flags=dict(self.flags))


def _check_msg(msg: int):
    if msg not in (0, 1, 2, 3):
        raise ValueError(f"message must be 0..3, got {msg}")


def _controller(run: _Run, raw: PureState, party: str, basis, outcome: str, who: str) -> PureState:
    d = measure_party(raw, party, basis)
    run.log(f"{who} measures {party} at angle {_f(basis.theta)} and announces {outcome} "
            f"(p={_f(d.conditional(outcome))})")
    return d[outcome].state


def _concentrate_step(run: _Run, branch: PureState, m: GateMatrix, aux_dim: int = 2,
                      aux_init: int = 0, success: str = "0", unchecked: bool = False) -> PureState:
    run.log(f"A attaches ancilla |{aux_init}> and applies {m.name} on (A, aux)")
    d = conc.concentrate(branch, m, aux_dim, aux_init=aux_init, unchecked=unchecked)
    run.flags["aux_weight"] = d[success].probability
    run.stage("ancilla", d[success].probability / branch.norm_sq, f"outcome {success}",
              "ancilla failure outcome, pair left weakly entangled")
    return d[success].state


# --- protocols ------------------------------------------------------------------

def ghz_formula(variant: int, outcome: str) -> str:
    if variant == 0:
        if outcome not in _GHZ0:
            raise ValueError(f"outcome must be + or -, got {outcome!r}")
        return _GHZ0[outcome]
    if variant not in GHZ_TABLE:
        raise ValueError(f"variant must be 0..7, got {variant}")
    designated, formula = GHZ_TABLE[variant]
    if outcome != designated:
        raise ValueError(f"G{variant} is tabulated for outcome {designated!r}, not {outcome!r}")
    return formula


def run_ghz(variant: int, theta: float, outcome: str | None = None, msg: int = 0,
            rng: np.random.Generator | None = None, ancilla_init: int = 0) -> ProtocolOutcome:
    """GHZ variant 0..7 controlled by Charlie.

    The cos-formula branches use U1 (or U2 with ``ancilla_init=1``, where
    ancilla |1> marks success) and need theta in [pi/4, pi/2]; the
    sin-formula branches use U1' and need theta in [0, pi/4].
    """
    _check_msg(msg)
    if outcome is None:
        outcome = GHZ_TABLE[variant][0] if variant in GHZ_TABLE else "+"
    formula = ghz_formula(variant, outcome)
    run = _Run(f"ghz[{variant}]", msg, rng)
    run.log(f"state {'GHZ' if variant == 0 else f'G{variant}'}, theta={_f(theta)}")
    branch = _controller(run, st.make(st.ghz_variant(variant), normalized=False), "C",
                         QubitBasis(theta), outcome, "Charlie")
    if formula == "cos":
        if ancilla_init == 1:
            m, success = conc.u2_ghz(theta), "1"
        else:
            m, success = conc.u1_ghz(theta), "0"
    else:
        if ancilla_init != 0:
            raise ValueError("the |1> ancilla variant exists only for the U1-type branches")
        m, success = conc.u1_prime(theta), "0"
    shared = _concentrate_step(run, branch, m, aux_init=ancilla_init, success=success)
    run.flags["formula"] = f"1+2{formula}^2"
    return run.finish(shared)


def run_ghz_type(l: float, theta: float, msg: int = 0, rng: np.random.Generator | None = None,
                 allow_l_above_one: bool = False) -> ProtocolOutcome:
    """GHZ-type L(|000> + l|111>) with U1' concentration and probabilistic decoding."""
    _check_msg(msg)
    if not l > 0:
        raise ValueError(f"l must be > 0, got {l}")
    if l > 1 and not allow_l_above_one:
        raise ValueError("l > 1 is outside the tabulated regime; pass allow_l_above_one=True")
    if not 0 < theta <= np.pi / 4 + 1e-12:
        raise ValueError(f"theta must lie in (0, pi/4], got {theta}")
    run = _Run("ghz-type", msg, rng)
    run.log(f"state GHZ-type l={_f(l)}, theta={_f(theta)}")
    if l > 1:
        run.flags["regime"] = "l>1: conclusive probability 2/(1+l^2)"
    branch = _controller(run, st.make(st.ghz_type(l), normalized=False), "C", QubitBasis(theta), "+", "Charlie")
    shared = _concentrate_step(run, branch, conc.u1_prime(theta))
    return run.finish(shared)


def ms_shared_raw(theta: float, delta: float, unchecked: bool = False) -> PureState:
    """Raw ancilla-0 branch for the maximal slice state: sin t|00> + cos(t - d)|11>."""
    branch = measure_party(st.make(st.maximal_slice(delta), normalized=False), "C",
                           QubitBasis(theta))["+"].state
    return conc.concentrate(branch, conc.u1_prime(theta, unchecked), 2, unchecked=unchecked)["0"].state


def run_ms(theta: float, delta: float, msg: int = 0, rng: np.random.Generator | None = None) -> ProtocolOutcome:
    """Maximal slice state: Charlie's + branch cos t|00> + cos(t-d)|11>, then U1'.

    ``flags['branch_normalized']`` reports whether the raw ancilla-0 branch
    (normalization constant of the state left off) has unit norm, which at
    theta = pi/4 happens exactly for delta a multiple of pi/2.
    """
    _check_msg(msg)
    run = _Run("ms", msg, rng)
    run.log(f"state MS delta={_f(delta)}, theta={_f(theta)}")
    branch = _controller(run, st.make(st.maximal_slice(delta), normalized=False), "C",
                         QubitBasis(theta), "+", "Charlie")
    shared = _concentrate_step(run, branch, conc.u1_prime(theta))
    norm = shared.norm_sq
    run.flags["raw_branch_norm_sq"] = norm
    run.flags["branch_normalized"] = abs(norm - 1) <= PROTOCOL_TOL
    if not run.flags["branch_normalized"]:
        run.log(f"flag: raw ancilla-0 branch has squared norm {_f(norm)} != 1")
    if norm <= 1e-15:
        return run.finish(None)
    run.flags["bell_fidelity"] = bell_fidelity(shared)
    return run.finish(shared)


def ghz4_aux0_branch(theta: float, epsilon: float, unchecked: bool = False) -> PureState:
    """Raw ancilla-0 branch sin t sin e (|00> + |11>) of the four-party GHZ run."""
    raw = st.make(st.GHZ4, normalized=False)
    s = measure_party(raw, "C", QubitBasis(theta))["+"].state
    mu = measure_party(s, "P", QubitBasis(epsilon))["+"].state
    m = conc.u3_4ghz(theta, epsilon, unchecked=unchecked)
    return conc.concentrate(mu, m, 2, unchecked=unchecked)["0"].state


def run_ghz4(theta: float, epsilon: float, msg: int = 0,
             rng: np.random.Generator | None = None) -> ProtocolOutcome:
    """Four-party GHZ controlled by Charlie (theta) and Paul (epsilon); Paul's + path."""
    _check_msg(msg)
    run = _Run("ghz4", msg, rng)
    run.log(f"state GHZ4, theta={_f(theta)}, epsilon={_f(epsilon)}")
    m = conc.u3_4ghz(theta, epsilon)
    s = _controller(run, st.make(st.GHZ4, normalized=False), "C", QubitBasis(theta), "+", "Charlie")
    d = measure_party(s, "P", QubitBasis(epsilon))
    run.stage("paul", d.conditional("+"), "P announces +", "P announces -, not on the concentrated path")
    mu = d["+"].state
    shared = _concentrate_step(run, mu, m)
    run.flags["branch_concurrence"] = 2 * abs(shared.amp("00") * shared.amp("11")
                                              - shared.amp("01") * shared.amp("10"))
    return run.finish(shared if shared.norm_sq > 1e-15 else None)


def wn_parity_branch(n: int, theta: float, unchecked: bool = False) -> tuple[PureState, PureState]:
    """(raw ancilla-0 branch, its projection onto span{|01>, |10>}) for the W_n run."""
    raw = st.make(st.wn(n), normalized=False)
    upsilon = measure_party(raw, "C", QubitBasis(theta))["+"].state
    aux0 = conc.concentrate(upsilon, conc.u3_wn(theta, unchecked), 2, unchecked=unchecked)["0"].state
    return aux0, _project(aux0, _ODD)


def run_wn(n: int, theta: float, msg: int = 0, rng: np.random.Generator | None = None) -> ProtocolOutcome:
    _check_msg(msg)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 < theta <= np.pi / 4 + 1e-12:
        raise ValueError(f"theta must lie in (0, pi/4], got {theta}")
    run = _Run("wn", msg, rng)
    run.log(f"state W_n n={n}, theta={_f(theta)}")
    branch = _controller(run, st.make(st.wn(n), normalized=False), "C", QubitBasis(theta), "+", "Charlie")
    aux0 = _concentrate_step(run, branch, conc.u3_wn(theta))
    proj = _project(aux0, _ODD)
    run.stage("parity", proj.norm_sq / aux0.norm_sq, "pair projected onto span{|01>,|10>}",
              "pair projected onto |00>")
    run.flags["concurrence"] = state_concurrence(proj)
    return run.finish(proj)


def run_qutrit(theta: float, msg: int = 0, outcome: str = "up",
               rng: np.random.Generator | None = None) -> ProtocolOutcome:
    """Qutrit GHZ. The braid matrices are used verbatim at theta = pi/4, the generic
    concentrator elsewhere; the slant outcome leaves |11> and only one bit."""
    _check_msg(msg)
    if outcome not in ("up", "slant", "down"):
        raise ValueError(f"outcome must be up, slant or down, got {outcome!r}")
    run = _Run("qutrit", msg, rng)
    run.log(f"state qutrit GHZ, theta={_f(theta)}")
    branch = _controller(run, st.make(st.QUTRIT_GHZ, normalized=False), "C", QutritBasis(theta),
                         outcome, "Charlie")
    if outcome == "slant":
        run.log("A and B share |11>: one bit only")
        return run.finish(None, qutrit=True)
    if abs(theta - np.pi / 4) <= 1e-12:
        m = conc.braid_b1(theta, unchecked=False) if outcome == "up" else conc.braid_b2(theta, unchecked=False)
    else:
        a, b = abs(branch.amp("00")), abs(branch.amp("22"))
        nrm = np.hypot(a, b)
        m = conc.generic_concentrator(a / nrm, b / nrm, dim=3, levels=(0, 2))
    shared = _concentrate_step(run, branch, m, aux_dim=3)
    return run.finish(shared, qutrit=True)


# --- harness helpers --------------------------------------------------------------

def run_by_name(state: str, msg: int, theta: float | None = None, epsilon: float | None = None,
                l: float = 1.0, n: int = 1, delta: float = 0.0, outcome: str | None = None,
                rng: np.random.Generator | None = None) -> ProtocolOutcome:
    """Dispatch used by the command line; angles default to each protocol's operating point."""
    q = np.pi / 4
    if state == "ghz" or (state.startswith("g") and state[1:].isdigit()):
        variant = 0 if state == "ghz" else int(state[1:])
        return run_ghz(variant, q if theta is None else theta, outcome, msg, rng)
    if state == "ghz-type":
        return run_ghz_type(l, q if theta is None else theta, msg, rng, allow_l_above_one=True)
    if state == "ms":
        return run_ms(q if theta is None else theta, np.pi / 2 if delta is None else delta, msg, rng)
    if state == "ghz4":
        return run_ghz4(q if theta is None else theta, q if epsilon is None else epsilon, msg, rng)
    if state == "wn":
        return run_wn(n, q if theta is None else theta, msg, rng)
    if state == "qutrit-ghz":
        return run_qutrit(q if theta is None else theta, msg, outcome or "up", rng)
    if state in ("w3", "w4"):
        raise ValueError(f"{state} admits no maximally entangled shared pair; see the fig5/fig6 sweeps")
    raise ValueError(f"unknown state {state!r}")


def roundtrip(state: str, trials: int, seed: int, **params) -> dict:
    """Monte Carlo decode statistics: uniform random messages, outcomes drawn from each run's distribution."""
    rng = np.random.default_rng(seed)
    dists = {m: run_by_name(state, m, **params).distribution for m in range(4)}
    msgs = rng.integers(0, 4, size=trials)
    correct = wrong = inconclusive = 0
    for m in range(4):
        count = int(np.sum(msgs == m))
        keys = list(dists[m])
        p = np.array([dists[m][k] for k in keys])
        draws = rng.choice(len(keys), p=p / p.sum(), size=count)
        for idx, c in zip(*np.unique(draws, return_counts=True)):
            k = keys[idx]
            if k is None:
                inconclusive += int(c)
            elif k == m:
                correct += int(c)
            else:
                wrong += int(c)
    return {"state": state, "trials": trials, "seed": seed, "correct": correct, "wrong": wrong,
            "inconclusive": inconclusive, "conclusive_fraction": (correct + wrong) / trials}


def withheld_marginals(spec: st.StateSpec, msg: int) -> tuple[np.ndarray, np.ndarray]:
    """(rho_A, rho_AB) after Alice encodes ``msg`` directly, with no controller announcement."""
    from .qcore import density_and_partial_trace
    s = st.make(spec)
    qutrit = s.dims[s.labels.index("A")] == 3
    _, enc = _encode(s, msg, qutrit)
    return density_and_partial_trace(enc, ["A"]), density_and_partial_trace(enc, ["A", "B"])

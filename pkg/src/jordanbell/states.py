"""Named qubit states, measurement sets and their checks.

Basis order: party 0 (a) is the most significant qubit, so index 0 is
|00...0> and, for three qubits, index 4 is |100>.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bell_core import bell_operator, projector_tilted, projector_z
from .lhv import inequality_terms
from .optimize import canonical_phase, top_eigenpair

SQRT2 = math.sqrt(2.0)
SQRT5 = math.sqrt(5.0)
# overlap cosine of the three-party optimum, x^2 = (sqrt(5) - 1) / 2
X3_STAR = math.sqrt((SQRT5 - 1.0) / 2.0)

PLUS_X = np.array([1.0, 1.0]) / SQRT2
MINUS_X = np.array([1.0, -1.0]) / SQRT2
KET0 = np.array([1.0, 0.0])
KET1 = np.array([0.0, 1.0])


@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex)
        d = a.size
        if d < 2 or d & (d - 1):
            raise ValueError(f"dimension {d} is not a power of two")
        norm = np.linalg.norm(a)
        if norm == 0:
            raise ValueError("zero vector")
        object.__setattr__(self, "amplitudes", a / norm)

    @property
    def n(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    def canonical(self) -> "PureState":
        return PureState(canonical_phase(self.amplitudes))

    def to_triples(self, tol: float = 0.0) -> list:
        """[(basis index, re, im)] for amplitudes with magnitude above ``tol``."""
        return [
            (i, float(a.real), float(a.imag))
            for i, a in enumerate(self.amplitudes)
            if abs(a) > tol
        ]

    @classmethod
    def from_triples(cls, triples, n: int) -> "PureState":
        a = np.zeros(2**n, dtype=complex)
        for i, re, im in triples:
            a[int(i)] = complex(re, im)
        return cls(a)

    def overlap(self, other: "PureState") -> float:
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)))


@dataclass(frozen=True)
class MeasurementSet:
    """``projectors[l] = (P1, P2)``: projectors onto outcome +1 for party l's two settings."""

    projectors: tuple

    def __post_init__(self):
        for pair in self.projectors:
            for p in pair:
                p = np.asarray(p)
                if p.shape != (2, 2) or np.max(np.abs(p @ p - p)) > 1e-12 or np.max(np.abs(p - p.conj().T)) > 1e-12:
                    raise ValueError("measurement projectors must be 2x2 Hermitian idempotents")

    @property
    def n(self) -> int:
        return len(self.projectors)

    @classmethod
    def tilted(cls, xs) -> "MeasurementSet":
        """Setting 1 = sigma_z, setting 2 = |u+><u+| - |u-><u-| with <0|u+> = x_l."""
        return cls(tuple((projector_z(), projector_tilted(x)) for x in xs))

    @classmethod
    def zx(cls, n: int) -> "MeasurementSet":
        """Setting 1 = sigma_z, setting 2 = sigma_x for every party."""
        return cls.tilted([1 / SQRT2] * n)


def basis_state(bits: str) -> PureState:
    a = np.zeros(2 ** len(bits))
    a[int(bits, 2)] = 1.0
    return PureState(a)


def product(*kets) -> np.ndarray:
    out = np.ones(1)
    for k in kets:
        out = np.kron(out, k)
    return out


def psi2() -> PureState:
    """Maximally violating two-qubit state for sigma_z / sigma_x settings."""
    c = 0.5 / math.sqrt(2 + SQRT2)
    a = c * np.array([1 + SQRT2, 1.0, 1.0, -(1 + SQRT2)])
    return PureState(a)


def psi3_prime_signs() -> tuple:
    """Integer amplitude pattern of :func:`psi3_prime` (each entry +-1, squared norm 8)."""
    return tuple(1 if bin(i).count("1") <= 1 else -1 for i in range(8))


def psi3_prime() -> PureState:
    """Three-qubit state with only the LHS probability nonzero under sigma_z / sigma_x."""
    return PureState(np.array(psi3_prime_signs(), dtype=float) / (2 * SQRT2))


def _psi3_amplitudes(weight1_sign: float) -> np.ndarray:
    c0 = math.sqrt(4 - 8 / SQRT5)
    c1 = math.sqrt(-1.5 + 3.5 / SQRT5)
    c2 = math.sqrt(1 - 2 / SQRT5)
    a = np.zeros(8)
    a[0b000] = c0
    for bits in ("001", "010", "100"):
        a[int(bits, 2)] = weight1_sign * c1
    a[0b111] = -weight1_sign * c1
    for bits in ("011", "101", "110"):
        a[int(bits, 2)] = -c2
    return a


def psi3() -> PureState:
    """Maximally violating three-qubit state at the symmetric optimum.

    Amplitudes: sqrt(4 - 8/sqrt5) on |000>, sqrt(-3/2 + 7/(2 sqrt5)) times
    (|001> + |010> + |100> - |111>), and -sqrt(1 - 2/sqrt5) on each weight-2
    string. This is the top eigenvector of B_3 with setting 2 projecting onto
    x|0> + sqrt(1 - x^2)|1>.
    """
    return PureState(_psi3_amplitudes(+1.0))


def psi3_mirrored() -> PureState:
    """psi3 with the weight-1/weight-3 sign pattern (-, -, -, +).

    Equals sigma_z^(x3) applied to :func:`psi3`. It is optimal for the
    mirrored tilt x|0> - sqrt(1 - x^2)|1>, not for |u+>.
    """
    return PureState(_psi3_amplitudes(-1.0))


def ghz() -> PureState:
    a = np.zeros(8)
    a[0] = a[7] = 1.0
    return PureState(a)


def reduced_density_matrix(state: PureState, party: int) -> np.ndarray:
    n = state.n
    psi = np.moveaxis(state.amplitudes.reshape((2,) * n), party, 0).reshape(2, -1)
    return psi @ psi.conj().T


@dataclass(frozen=True)
class GhzReport:
    marginals: tuple
    distances: tuple

    @property
    def max_distance(self) -> float:
        return max(self.distances)

    def all_maximally_mixed(self, tol: float = 1e-12) -> bool:
        return self.max_distance <= tol


def ghz_check(state: PureState) -> GhzReport:
    """Single-party marginals and their max-entry distance from I/2."""
    if state.n != 3:
        raise ValueError("GHZ check is defined for three qubits")
    rhos = tuple(reduced_density_matrix(state, l) for l in range(3))
    dists = tuple(float(np.max(np.abs(r - np.eye(2) / 2))) for r in rhos)
    return GhzReport(marginals=rhos, distances=dists)


def outcome_probability(state: PureState, meas: MeasurementSet, events) -> float:
    """Joint probability of ``events[l] = (setting, outcome)`` for every party.

    Applies each party's outcome projector to its tensor factor in turn.
    """
    if state.n != meas.n or len(events) != state.n:
        raise ValueError(
            f"dimension mismatch: state has {state.n} qubits, measurements {meas.n}, events {len(events)}"
        )
    psi = state.amplitudes.reshape((2,) * state.n)
    for l, (setting, outcome) in enumerate(events):
        p = np.asarray(meas.projectors[l][setting - 1], dtype=complex)
        if outcome == -1:
            p = np.eye(2) - p
        psi = np.moveaxis(np.tensordot(p, psi, axes=([1], [l])), 0, l)
    return float(np.vdot(psi, psi).real)


def violation_of(state: PureState, meas: MeasurementSet) -> float:
    """LHS - RHS of the inequality from joint outcome probabilities."""
    return sum(t.coef * outcome_probability(state, meas, t.events) for t in inequality_terms(state.n))


def zx_projectors_exact(n: int) -> tuple:
    """sigma_z / sigma_x settings as rational 2x2 projectors, one pair per party."""
    half = Fraction(1, 2)
    z = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(0)))
    x = ((half, half), (half, half))
    return tuple((z, x) for _ in range(n))


def exact_violation(amplitudes, projectors) -> Fraction:
    """LHS - RHS in rational arithmetic for a real state with rational amplitudes.

    ``amplitudes`` may be unnormalized (integers are fine); the squared norm
    is divided out exactly. ``projectors[l] = (P1, P2)`` are 2x2 nested
    sequences of rationals projecting onto outcome +1.
    """
    a = [Fraction(v) for v in amplitudes]
    n = len(projectors)
    if len(a) != 2**n:
        raise ValueError(f"dimension mismatch: {len(a)} amplitudes for {n} parties")
    norm_sq = sum(v * v for v in a)
    one = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    bits = [tuple((i >> (n - 1 - l)) & 1 for l in range(n)) for i in range(2**n)]
    total = Fraction(0)
    for term in inequality_terms(n):
        factors = []
        for l, (setting, outcome) in enumerate(term.events):
            p = projectors[l][setting - 1]
            if outcome == -1:
                p = tuple(tuple(one[r][c] - p[r][c] for c in range(2)) for r in range(2))
            factors.append(p)
        value = Fraction(0)
        for i, bi in enumerate(bits):
            if a[i] == 0:
                continue
            for j, bj in enumerate(bits):
                if a[j] == 0:
                    continue
                w = a[i] * a[j]
                for l in range(n):
                    w *= factors[l][bi[l]][bj[l]]
                    if w == 0:
                        break
                value += w
        total += term.coef * value
    return total / norm_sq


def expectation(state: PureState, operator) -> float:
    a = state.amplitudes
    return float(np.vdot(a, np.asarray(operator) @ a).real)


def correlation_table_psi2() -> dict:
    """Conditional probabilities for the eight correspondences of psi2.

    Keys are basis pairs ('zz', 'zx', 'xz', 'xx'). Each value holds two
    P(Bob gets the corresponding state | Alice's listed result).
    """
    rows = {
        "zz": ((KET0, KET0), (KET1, KET1)),
        "zx": ((KET0, PLUS_X), (KET1, MINUS_X)),
        "xz": ((PLUS_X, KET0), (MINUS_X, KET1)),
        "xx": ((PLUS_X, MINUS_X), (MINUS_X, PLUS_X)),
    }
    psi = psi2().amplitudes.reshape(2, 2)
    table = {}
    for key, pairs in rows.items():
        vals = []
        for alice, bob in pairs:
            bob_cond = alice.conj() @ psi  # Bob's unnormalized conditional state
            p_alice = float(np.vdot(bob_cond, bob_cond).real)
            p_joint = abs(np.vdot(bob, bob_cond)) ** 2
            vals.append(float(p_joint / p_alice))
        table[key] = tuple(vals)
    return table


def subspace_s_vectors() -> list:
    """Spanning vectors |+x,+x,+x>, |-x,0,0>, |0,-x,0>, |0,0,-x>."""
    return [
        product(PLUS_X, PLUS_X, PLUS_X),
        product(MINUS_X, KET0, KET0),
        product(KET0, MINUS_X, KET0),
        product(KET0, KET0, MINUS_X),
    ]


def b3_prime() -> np.ndarray:
    """|000><000| minus the four rank-1 projectors onto the S spanning vectors."""
    e0 = product(KET0, KET0, KET0)
    b = np.outer(e0, e0)
    for v in subspace_s_vectors():
        b = b - np.outer(v, v)
    return b


def b3_prime_spectrum() -> np.ndarray:
    return np.linalg.eigvalsh(b3_prime())


def is_permutation_symmetric(state: PureState, tol: float = 1e-12) -> bool:
    n = state.n
    t = state.amplitudes.reshape((2,) * n)
    return all(np.max(np.abs(t - np.transpose(t, perm))) <= tol for perm in itertools.permutations(range(n)))


def psi3_fidelity_with_top_eigenvector() -> float:
    _, v = top_eigenpair((X3_STAR,) * 3)
    return abs(np.vdot(psi3().amplitudes, v)) ** 2


def psi3_expectation() -> float:
    return expectation(psi3(), bell_operator((X3_STAR,) * 3).matrix)

"""Bell operators for the n-party CH-type family and their Jordan-block reductions.

Each party l has two binary observables. Their +1 spectral projectors are
``Q[l][0]`` and ``Q[l][1]``. The Bell operator is

    B_n = (x) Q[l][0]  -  (x) Q[l][1]  -  sum_l (I - Q[l][1])_l (x)_{m != l} Q[m][0]

and its expectation value is LHS - RHS of the inequality, so positive
eigenvalues are quantum violations.

Qubit realization: ``Q[l][0] = |0><0|`` and ``Q[l][1] = |u+><u+|`` with
``<0|u+> = x_l``. Within one Jordan block every party's pair of projectors
reduces to this form, so the 2**n qubit operator carries the full nonzero
spectrum for a given set of overlap cosines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.linalg import eigh

from .linalg import RealPolynomial, hermitian_eigen, is_hermitian, kron_all

_I2 = np.eye(2)


@dataclass(frozen=True)
class JordanParams:
    """Per-party overlap cosines ``x_l = cos(theta_l)`` with ``theta_l`` in [0, pi/2]."""

    xs: tuple

    def __post_init__(self):
        xs = tuple(float(x) for x in self.xs)
        if len(xs) < 2:
            raise ValueError(f"need at least two parties, got {len(xs)}")
        for x in xs:
            if not (0.0 <= x <= 1.0) or math.isnan(x):
                raise ValueError(f"overlap cosine {x!r} outside [0, 1]")
        object.__setattr__(self, "xs", xs)

    @classmethod
    def equal(cls, n: int, x: float) -> "JordanParams":
        return cls((x,) * n)

    @property
    def n(self) -> int:
        return len(self.xs)


@dataclass(frozen=True)
class BellOperator:
    matrix: np.ndarray
    params: JordanParams

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigen(self):
        return hermitian_eigen(self.matrix)

    def lambda_max(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix)[-1])


class SymmetricInvariants(NamedTuple):
    alpha: float
    beta: float
    gamma: float


def projector_z() -> np.ndarray:
    """Projector onto |0>, the +1 eigenspace of sigma_z."""
    return np.array([[1.0, 0.0], [0.0, 0.0]])


def tilted_vector(x: float) -> np.ndarray:
    """|u+> = x|0> + sqrt(1 - x^2)|1>."""
    if not (0.0 <= x <= 1.0):
        raise ValueError(f"overlap cosine {x!r} outside [0, 1]")
    return np.array([x, math.sqrt(max(0.0, 1.0 - x * x))])


def projector_tilted(x: float) -> np.ndarray:
    """Rank-1 projector |u+><u+| whose overlap with |0> is ``x``."""
    u = tilted_vector(x)
    return np.outer(u, u)


def _as_params(params) -> JordanParams:
    return params if isinstance(params, JordanParams) else JordanParams(tuple(params))


def bell_operator_from_projectors(pairs) -> np.ndarray:
    """B_n for arbitrary single-party projectors, ``pairs[l] = (Q[l][0], Q[l][1])``."""
    q1 = [np.asarray(p[0]) for p in pairs]
    q2 = [np.asarray(p[1]) for p in pairs]
    n = len(pairs)
    if n < 2:
        raise ValueError("need at least two parties")
    b = kron_all(q1) - kron_all(q2)
    for l in range(n):
        factors = list(q1)
        factors[l] = np.eye(q2[l].shape[0]) - q2[l]
        b = b - kron_all(factors)
    return b


def bell_operator(params) -> BellOperator:
    """The 2**n qubit Bell operator for the given overlap cosines.

    Party 0 is the most significant qubit.
    """
    params = _as_params(params)
    pairs = [(projector_z(), projector_tilted(x)) for x in params.xs]
    return BellOperator(matrix=bell_operator_from_projectors(pairs), params=params)


def bell_matrix_structured(xs: Sequence[float]) -> np.ndarray:
    """Same matrix as :func:`bell_operator`, assembled without Kronecker chains.

    (x) Q[l][0] is the single entry (0, 0), (x) Q[l][1] is the rank-1
    outer product of (x) |u+>, and each single-flip term is a 2x2 patch on
    indices {0, 2**(n-1-l)}. Used in the optimizer's inner loop.
    """
    xs = [float(x) for x in xs]
    n = len(xs)
    u = np.ones(1)
    for x in xs:
        u = np.kron(u, tilted_vector(x))
    b = -np.outer(u, u)
    b[0, 0] += 1.0
    for l, x in enumerate(xs):
        idx = np.array([0, 1 << (n - 1 - l)])
        b[np.ix_(idx, idx)] -= _I2 - projector_tilted(x)
    return b


def lambda_max(params) -> float:
    """Largest eigenvalue of the qubit Bell operator (the violation at these angles)."""
    xs = params.xs if isinstance(params, JordanParams) else params
    b = bell_matrix_structured(xs)
    d = b.shape[0]
    return float(eigh(b, eigvals_only=True, subset_by_index=[d - 1, d - 1], check_finite=False)[0])


def reduced_matrix(xs: Sequence[float]) -> np.ndarray:
    """Matrix of B_n on its (n+2)-dimensional invariant block.

    The block is spanned, in a non-orthogonal basis, by the all-setting-1
    product vector, the n vectors with exactly one party in setting 2, and the
    all-setting-2 vector. Single-flip vectors are ordered last party first, so
    for n=2 the order is (c11, c12, c21, c22) and for n=3 it is
    (111, 112, 121, 211, 222). Column j holds the expansion of B acting on
    basis vector j.
    """
    xs = [float(x) for x in xs]
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two parties")
    d = n + 2
    # flip_index[l] = basis index of the vector with party l in setting 2
    flip_index = {l: 1 + (n - 1 - l) for l in range(n)}
    m = np.zeros((d, d))
    prod_all = math.prod(xs)

    m[0, 0] = 1.0 - n
    for l in range(n):
        m[flip_index[l], 0] = xs[l]
    m[d - 1, 0] = -prod_all

    for k in range(n):
        col = flip_index[k]
        m[0, col] = -(n - 2) * xs[k]
        for l in range(n):
            if l != k:
                m[flip_index[l], col] = xs[k] * xs[l]
        m[d - 1, col] = -math.prod(xs[l] for l in range(n) if l != k)

    m[0, d - 1] = prod_all
    m[d - 1, d - 1] = -1.0
    return m


def reduced_matrix_n2(x_a: float, x_b: float) -> np.ndarray:
    """4x4 two-party block in the basis (c11, c12, c21, c22)."""
    return reduced_matrix([x_a, x_b])


def reduced_matrix_n3(x_a: float, x_b: float, x_c: float) -> np.ndarray:
    """5x5 three-party block in the basis (111, 112, 121, 211, 222).

    Entry (4, 2) is ``-x_a*x_c``; with the opposite sign the block would no
    longer share its spectrum with the three-qubit operator.
    """
    return reduced_matrix([x_a, x_b, x_c])


def char_poly_n2(x_a: float, x_b: float) -> RealPolynomial:
    """lambda^2 (lambda + 1)^2 - x_a^2 (1 - x_a^2) x_b^2 (1 - x_b^2)."""
    a, b = x_a * x_a, x_b * x_b
    k = a * (1 - a) * b * (1 - b)
    # (lambda^2 + lambda)^2 = lambda^4 + 2 lambda^3 + lambda^2
    return RealPolynomial((-k, 0.0, 1.0, 2.0, 1.0))


def lambda_max_n2(x_a: float, x_b: float) -> float:
    """Closed form of the largest root of ``char_poly_n2``."""
    s = x_a * math.sqrt(max(0.0, 1 - x_a * x_a)) * x_b * math.sqrt(max(0.0, 1 - x_b * x_b))
    return 0.5 * (math.sqrt(1.0 + 4.0 * s) - 1.0)


def symmetric_invariants(x_a: float, x_b: float, x_c: float) -> SymmetricInvariants:
    a, b, c = x_a * x_a, x_b * x_b, x_c * x_c
    return SymmetricInvariants(alpha=a * b + a * c + b * c, beta=a * b * c, gamma=a + b + c)


def char_poly_n3(x_a: float, x_b: float, x_c: float) -> RealPolynomial:
    """Characteristic polynomial of :func:`reduced_matrix_n3` (degree 5).

    lambda^5 + 3 lambda^4 + (2 + g - a + b) lambda^3 + (g - a + b) lambda^2
    + b (2g - a - 3) lambda + b (a - 2b - 1), with (a, b, g) the symmetric
    invariants alpha, beta, gamma.
    """
    alpha, beta, gamma = symmetric_invariants(x_a, x_b, x_c)
    f2 = gamma - alpha + beta
    f1 = beta * (2 * gamma - alpha - 3)
    f0 = beta * (alpha - 2 * beta - 1)
    return RealPolynomial((f0, f1, f2, 2 + f2, 3.0, 1.0))


def cubic_equal_angle(n: int, x: float) -> RealPolynomial:
    """Cubic whose largest root is lambda_max when all n overlap cosines equal ``x``.

    lambda^3 + [n - (n-1)x^2] lambda^2 + (n - 1 - n x^2 + x^{2n}) lambda
    + n x^{2n} - (n-1) x^{2n+2} - x^2
    """
    if n < 2:
        raise ValueError("need at least two parties")
    t = x * x
    tn = t**n
    return RealPolynomial(
        (n * tn - (n - 1) * tn * t - t, n - 1 - n * t + tn, n - (n - 1) * t, 1.0)
    )


def cubic_equal_angle_dx(n: int, x: float) -> RealPolynomial:
    """Coefficient-wise derivative of :func:`cubic_equal_angle` with respect to ``x``."""
    x2n1 = x ** (2 * n - 1)
    return RealPolynomial(
        (
            2 * n * n * x2n1 - (n - 1) * (2 * n + 2) * x2n1 * x * x - 2 * x,
            -2 * n * x + 2 * n * x2n1,
            -2 * (n - 1) * x,
            0.0,
        )
    )


def nonzero_spectrum(m, tol: float = 1e-9) -> np.ndarray:
    """Eigenvalues with magnitude above ``tol``, sorted, as real numbers.

    Hermitian input uses the Hermitian solver; otherwise general eigenvalues
    are taken and their (negligible) imaginary parts dropped.
    """
    m = np.asarray(m)
    if is_hermitian(m):
        w = np.linalg.eigvalsh(m)
    else:
        w = np.linalg.eigvals(m).real
    return np.sort(w[np.abs(w) > tol])

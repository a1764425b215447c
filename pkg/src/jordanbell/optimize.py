"""Maximizing the violation over the overlap cosines.

Two routes are provided. They are meant to be compared against each other:

* :func:`maximize_equal_angle` restricts to equal cosines and maximizes the
  largest root of the equal-angle cubic (1-D, cheap, any n).
* :func:`maximize_full` runs a multistart Nelder-Mead search over all n
  cosines on the 2**n qubit operator (n <= 7).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import brentq, minimize

from .bell_core import (
    JordanParams,
    bell_operator,
    char_poly_n3,
    cubic_equal_angle,
    cubic_equal_angle_dx,
    lambda_max,
    symmetric_invariants,
)
from .linalg import RealPolynomial, max_real_root, poly_roots

# Largest n for which the 2**n operator (and its eigenvector) is built.
FULL_OPERATOR_MAX_N = 10

EQUAL_ANGLE = "equal-angle-cubic"
FULL_OPERATOR = "full-operator"

GRID_POINTS = 1000
GOLDEN_TOL = 1e-12
SIMPLEX_TOL = 1e-9
SIMPLEX_MAX_ITER = 2000
DEFAULT_RESTARTS = 32
FD_STEP = 1e-5


@dataclass
class ViolationResult:
    n: int
    xs: tuple
    lambda_max: float
    eigvec: Optional[np.ndarray]
    method: str
    converged: bool

    def residual(self) -> float:
        """||B v - lambda v|| for the stored eigenvector."""
        if self.eigvec is None:
            raise ValueError("no eigenvector stored")
        b = bell_operator(self.xs).matrix
        return float(np.linalg.norm(b @ self.eigvec - self.lambda_max * self.eigvec))

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "xs": list(self.xs),
            "lambda_max": self.lambda_max,
            "method": self.method,
            "converged": self.converged,
            "eigvec": None,
        }
        if self.eigvec is not None:
            d["eigvec"] = [
                [i, float(a.real), float(a.imag)] for i, a in enumerate(self.eigvec) if a != 0
            ]
            d["dim"] = len(self.eigvec)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ViolationResult":
        vec = None
        if d.get("eigvec") is not None:
            vec = np.zeros(d["dim"], dtype=complex)
            for i, re, im in d["eigvec"]:
                vec[i] = complex(re, im)
        return cls(
            n=d["n"],
            xs=tuple(d["xs"]),
            lambda_max=d["lambda_max"],
            eigvec=vec,
            method=d["method"],
            converged=d["converged"],
        )

    def __eq__(self, other):
        if not isinstance(other, ViolationResult):
            return NotImplemented
        same_vec = (self.eigvec is None and other.eigvec is None) or (
            self.eigvec is not None
            and other.eigvec is not None
            and np.array_equal(self.eigvec, other.eigvec)
        )
        return (
            self.n == other.n
            and tuple(self.xs) == tuple(other.xs)
            and self.lambda_max == other.lambda_max
            and self.method == other.method
            and self.converged == other.converged
            and same_vec
        )


def canonical_phase(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate the global phase so the first non-negligible amplitude is real and positive."""
    v = np.asarray(v, dtype=complex)
    idx = np.flatnonzero(np.abs(v) > tol)
    if idx.size == 0:
        return v
    a = v[idx[0]]
    return v * (abs(a) / a)


def top_eigenpair(xs):
    """Largest eigenvalue of B_n(xs) and its eigenvector in canonical phase."""
    w, v = bell_operator(xs).eigen()
    return float(w[-1]), canonical_phase(v[:, -1])


def _equal_angle_root(n: int, x: float) -> float:
    return max_real_root(cubic_equal_angle(n, x))


def _golden_max(f, a: float, b: float, tol: float = GOLDEN_TOL, max_iter: int = 200):
    invphi = (math.sqrt(5) - 1) / 2
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while abs(b - a) > tol and it < max_iter:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
        it += 1
    return 0.5 * (a + b), abs(b - a) <= tol


def _root_slope_numerator(n: int, x: float) -> float:
    """(dF/dx) at fixed lambda, evaluated on the largest cubic root.

    d(lambda)/dx = -(dF/dx) / (dF/dlambda) and dF/dlambda > 0 at the largest
    simple root, so this changes sign from - to + across a maximum.
    """
    lam = _equal_angle_root(n, x)
    return float(cubic_equal_angle_dx(n, x)(lam))


def maximize_equal_angle(n: int) -> ViolationResult:
    """Maximize the largest root of the equal-angle cubic over x in [0, 1].

    A 1000-point grid seeds a golden-section search. The result is then
    polished by a bracketed root solve of d(lambda)/dx = 0, because the
    objective is flat at the top and golden section alone pins x only to
    about sqrt(machine epsilon).
    """
    if not 2 <= n <= 16:
        raise ValueError(f"n must be in [2, 16], got {n}")
    grid = np.linspace(0.0, 1.0, GRID_POINTS)
    vals = np.array([_equal_angle_root(n, x) for x in grid])
    i = int(np.argmax(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, GRID_POINTS - 1)]
    x_star, converged = _golden_max(lambda x: _equal_angle_root(n, x), lo, hi)

    g_lo, g_hi = _root_slope_numerator(n, lo), _root_slope_numerator(n, hi)
    if g_lo < 0 < g_hi:
        x_star = brentq(lambda x: _root_slope_numerator(n, x), lo, hi, xtol=1e-15, rtol=1e-15)
        converged = True
    lam = _equal_angle_root(n, x_star)

    eigvec = None
    if n <= FULL_OPERATOR_MAX_N:
        _, eigvec = top_eigenpair((x_star,) * n)
    return ViolationResult(
        n=n,
        xs=(float(x_star),) * n,
        lambda_max=float(lam),
        eigvec=eigvec,
        method=EQUAL_ANGLE,
        converged=bool(converged),
    )


def _negative_lambda(xs):
    return -lambda_max(np.clip(xs, 0.0, 1.0))


def _one_restart(n: int, x0: np.ndarray):
    res = minimize(
        _negative_lambda,
        x0,
        method="Nelder-Mead",
        bounds=[(0.0, 1.0)] * n,
        options={"xatol": SIMPLEX_TOL, "fatol": np.inf, "maxiter": SIMPLEX_MAX_ITER},
    )
    xs = np.clip(res.x, 0.0, 1.0)
    return xs, -float(res.fun), res.nit < SIMPLEX_MAX_ITER


def maximize_full(n: int, restarts: int = DEFAULT_RESTARTS, seed: int = 0) -> ViolationResult:
    """Multistart Nelder-Mead maximization of lambda_max(B_n(xs)) over [0, 1]^n.

    Starting points are drawn uniformly from [0.05, 0.95]^n with
    ``numpy.random.default_rng(seed)`` (PCG64). The best restart wins. Ties go
    to the lowest restart index.
    """
    if not 2 <= n <= 7:
        raise ValueError(f"n must be in [2, 7] for the full-operator search, got {n}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    rng = np.random.default_rng(seed)
    starts = rng.uniform(0.05, 0.95, size=(restarts, n))
    best = None
    for x0 in starts:
        xs, lam, conv = _one_restart(n, x0)
        if best is None or lam > best[1]:
            best = (xs, lam, conv)
    xs, _, conv = best
    lam, vec = top_eigenpair(xs)
    return ViolationResult(
        n=n,
        xs=tuple(float(x) for x in xs),
        lambda_max=lam,
        eigvec=vec,
        method=FULL_OPERATOR,
        converged=bool(conv),
    )


def violation_curve(n_min: int, n_max: int):
    """[(n, x*, lambda*)] from the equal-angle route for n_min..n_max."""
    if not 2 <= n_min <= n_max:
        raise ValueError("need 2 <= n_min <= n_max")
    rows = []
    for n in range(n_min, n_max + 1):
        r = maximize_equal_angle(n)
        rows.append((n, r.xs[0], r.lambda_max))
    return rows


# -- stationarity of the three-party optimum ---------------------------------


def _f_functions(x_a, x_b, x_c):
    alpha, beta, gamma = symmetric_invariants(x_a, x_b, x_c)
    f0 = beta * (alpha - 2 * beta - 1)
    f1 = beta * (2 * gamma - alpha - 3)
    f2 = gamma - alpha + beta
    return f0, f1, f2


def _f_partials(xs, k):
    """Partial derivatives of (f0, f1, f2) with respect to x_k."""
    xs = list(xs)
    alpha, beta, gamma = symmetric_invariants(*xs)
    others = [xs[j] for j in range(3) if j != k]
    xk = xs[k]
    d_gamma = 2 * xk
    d_alpha = 2 * xk * (others[0] ** 2 + others[1] ** 2)
    d_beta = 2 * xk * (others[0] * others[1]) ** 2
    df0 = d_beta * (alpha - 2 * beta - 1) + beta * (d_alpha - 2 * d_beta)
    df1 = d_beta * (2 * gamma - alpha - 3) + beta * (2 * d_gamma - d_alpha)
    df2 = d_gamma - d_alpha + d_beta
    return df0, df1, df2


def char_poly_n3_dx(xs, k: int, lam: float) -> float:
    """(dF/dx_k) at fixed lambda for the three-party characteristic polynomial."""
    df0, df1, df2 = _f_partials(xs, k)
    return df2 * (lam**3 + lam**2) + df1 * lam + df0


def pairwise_condition(x_a, x_b, x_c, lam):
    """The rearranged pairwise stationarity condition linear in lambda.

    (x_a^2 - x_b^2)[f1 - x_a^2 x_b^2 beta (x_c^2 - 1)] lambda
    + (x_a^2 - x_b^2)[f0 - x_a^2 x_b^2 beta (x_c^2 - 1)]
    """
    f0, f1, _ = _f_functions(x_a, x_b, x_c)
    beta = (x_a * x_b * x_c) ** 2
    k = x_a**2 * x_b**2 * beta * (x_c**2 - 1)
    diff = x_a**2 - x_b**2
    return diff * (f1 - k) * lam + diff * (f0 - k)


@dataclass
class StationarityReport:
    gradient: np.ndarray
    identity_residuals: np.ndarray = field(default_factory=lambda: np.zeros(0))
    pairwise_residuals: np.ndarray = field(default_factory=lambda: np.zeros(0))
    pairwise_form_flagged: bool = False

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.gradient)))


def finite_difference_gradient(xs, step: float = FD_STEP) -> np.ndarray:
    xs = np.asarray(xs, dtype=float)
    g = np.zeros_like(xs)
    for k in range(xs.size):
        hi, lo = xs.copy(), xs.copy()
        hi[k] = min(1.0, xs[k] + step)
        lo[k] = max(0.0, xs[k] - step)
        g[k] = (lambda_max(hi) - lambda_max(lo)) / (hi[k] - lo[k])
    return g


def stationarity_report(xs, lam: float, step: float = FD_STEP, tol: float = 1e-8):
    """Check that ``xs`` is a stationary point of the largest eigenvalue.

    For any n this gives the central finite-difference gradient. For n = 3
    it also evaluates the implicit-function identity
    ``F_lambda * dlambda/dx_k + (dF/dx_k)_lambda`` on the degree-5
    characteristic polynomial, and the three pairwise conditions linear in
    lambda. ``pairwise_form_flagged`` is set when the pairwise conditions fail
    at a point where the identity holds.

    Raises
    ------
    ValueError
        If ``lam`` is not within 1e-6 of an eigenvalue of B_n(xs).
    """
    xs = np.asarray(xs, dtype=float)
    w = np.linalg.eigvalsh(bell_operator(xs).matrix)
    if np.min(np.abs(w - lam)) > 1e-6:
        raise ValueError(f"{lam!r} is not an eigenvalue of B_n at {xs.tolist()}")
    grad = finite_difference_gradient(xs, step)
    report = StationarityReport(gradient=grad)
    if xs.size == 3:
        poly = char_poly_n3(*xs)
        f_lam = poly.derivative()(lam)
        report.identity_residuals = np.array(
            [f_lam * grad[k] + char_poly_n3_dx(xs, k, lam) for k in range(3)]
        )
        a, b, c = xs
        report.pairwise_residuals = np.array(
            [
                pairwise_condition(a, b, c, lam),
                pairwise_condition(a, c, b, lam),
                pairwise_condition(c, b, a, lam),
            ]
        )
        identity_ok = np.max(np.abs(report.identity_residuals)) <= max(tol, 10 * step**2)
        pairwise_ok = np.max(np.abs(report.pairwise_residuals)) <= tol
        report.pairwise_form_flagged = bool(identity_ok and not pairwise_ok)
    return report


def lambda_when_f0_equals_f1(x_a: float, x_b: float) -> tuple:
    """Pick x_c so that f0 = f1, then solve the pairwise condition for lambda.

    f0 - f1 is a quadratic in t = x_c^2 with roots t = 0 (beta = 0, where
    the condition is vacuous) and a nontrivial root. Returns (x_c, lambda).
    """
    a, b = x_a * x_a, x_b * x_b

    def diff(t):
        f0, f1, _ = _f_functions(x_a, x_b, math.sqrt(t))
        return f0 - f1

    # Recover the quadratic in t from three samples; no closed form assumed.
    ts = np.array([0.25, 0.5, 0.75])
    coeffs = np.polyfit(ts, [diff(t) for t in ts], 2)
    roots = poly_roots(RealPolynomial.from_descending(coeffs))
    roots = [r.real for r in roots if abs(r.imag) < 1e-9 and abs(r.real) > 1e-9 and r.real >= 0]
    if not roots:
        raise ValueError("f0 = f1 has no nontrivial solution for these x_a, x_b")
    # the root is x_c = 1 up to fit rounding; keep it a valid cosine
    x_c = min(1.0, math.sqrt(min(roots, key=lambda r: abs(r - 1.0))))
    f0, f1, _ = _f_functions(x_a, x_b, x_c)
    beta = a * b * x_c**2
    k = a * b * beta * (x_c**2 - 1)
    return x_c, -(f0 - k) / (f1 - k)

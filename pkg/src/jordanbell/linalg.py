"""Dense complex linear algebra used by the rest of the package.

Matrices are plain ``numpy.ndarray`` objects. Dimensions here never exceed
2**10, so everything is dense.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

HERMITIAN_TOL = 1e-12
RECONSTRUCTION_TOL = 1e-10
ROOT_RESIDUAL_TOL = 1e-8
REAL_ROOT_IMAG_TOL = 1e-9
TRIM_TOL = 1e-14


class NotHermitianError(ValueError):
    """Raised when a matrix handed to the Hermitian eigensolver is not Hermitian."""

    def __init__(self, asymmetry: float, scale: float):
        self.asymmetry = asymmetry
        self.scale = scale
        super().__init__(
            f"matrix is not Hermitian: max|M - M^H| = {asymmetry:.3e} (max|M| = {scale:.3e})"
        )


def kron(a, b) -> np.ndarray:
    """Kronecker product; the result has shape (ra*rb, ca*cb)."""
    a = np.asarray(a)
    b = np.asarray(b)
    return np.kron(a, b)


def kron_all(factors) -> np.ndarray:
    """Kronecker product of a sequence of matrices, leftmost factor most significant."""
    return reduce(kron, factors)


def hermitian_asymmetry(h) -> float:
    h = np.asarray(h)
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def is_hermitian(h, tol: float = HERMITIAN_TOL) -> bool:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        return False
    return hermitian_asymmetry(h) <= tol * max(float(np.max(np.abs(h), initial=0.0)), 1e-300)


def _check_hermitian(h, tol):
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    scale = float(np.max(np.abs(h), initial=0.0))
    asym = hermitian_asymmetry(h)
    if asym > tol * max(scale, 1e-300) and asym > 0.0:
        raise NotHermitianError(asym, scale)
    return h


def jacobi_eigh(h, tol: float = 1e-14, max_sweeps: int = 100):
    """Cyclic Jacobi eigensolver for a complex Hermitian matrix.

    Each 2x2 pivot is first phase-rotated so the off-diagonal entry is real,
    then annihilated by a real Givens rotation.

    Returns
    -------
    w : ndarray
        Eigenvalues in ascending order.
    v : ndarray
        Orthonormal eigenvectors as columns, ``h @ v[:, k] = w[k] * v[:, k]``.
    """
    a = np.array(h, dtype=complex)
    d = a.shape[0]
    v = np.eye(d, dtype=complex)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(d), np.eye(d, dtype=complex)
    for _ in range(max_sweeps):
        off = np.sqrt(max(np.linalg.norm(a) ** 2 - np.sum(np.abs(np.diag(a)) ** 2), 0.0))
        if off <= tol * scale:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                phase = apq / r
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # g = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ g
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigen(h, tol: float = HERMITIAN_TOL, method: str = "lapack"):
    """Eigen-decomposition of a Hermitian matrix.

    Parameters
    ----------
    h : array_like
        Square matrix, Hermitian to within ``tol * max|h|``.
    tol : float
        Relative Hermiticity tolerance.
    method : {"lapack", "jacobi"}
        ``"lapack"`` calls ``numpy.linalg.eigh``; ``"jacobi"`` uses the
        in-package cyclic Jacobi solver.

    Returns
    -------
    (eigenvalues, eigenvectors)
        Ascending real eigenvalues and orthonormal eigenvector columns.

    Raises
    ------
    NotHermitianError
        If the input's asymmetry exceeds the tolerance.
    """
    h = _check_hermitian(h, tol)
    if method == "lapack":
        herm = 0.5 * (h + h.conj().T)
        w, v = np.linalg.eigh(herm)
        return w, v
    if method == "jacobi":
        return jacobi_eigh(0.5 * (h + h.conj().T))
    raise ValueError(f"unknown method {method!r}")


def reconstruction_error(h, w, v) -> float:
    h = np.asarray(h)
    return float(np.max(np.abs(h - (v * w) @ v.conj().T)))


@dataclass(frozen=True)
class RealPolynomial:
    """Real polynomial with coefficients in ascending degree order.

    Trailing (high-degree) coefficients with magnitude below 1e-14 are
    trimmed on construction.
    """

    coefficients: tuple

    def __post_init__(self):
        c = [float(x) for x in self.coefficients]
        while len(c) > 1 and abs(c[-1]) < TRIM_TOL:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @classmethod
    def from_descending(cls, coeffs) -> "RealPolynomial":
        return cls(tuple(reversed(list(coeffs))))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        # Horner; works for scalars, complex values and arrays.
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RealPolynomial":
        if self.degree == 0:
            return RealPolynomial((0.0,))
        return RealPolynomial(tuple(k * c for k, c in enumerate(self.coefficients) if k > 0))

    def __mul__(self, other: "RealPolynomial") -> "RealPolynomial":
        return RealPolynomial(tuple(np.convolve(self.coefficients, other.coefficients)))

    def __sub__(self, other: "RealPolynomial") -> "RealPolynomial":
        m = max(len(self.coefficients), len(other.coefficients))
        a = np.zeros(m)
        a[: len(self.coefficients)] += self.coefficients
        a[: len(other.coefficients)] -= other.coefficients
        return RealPolynomial(tuple(a))

    def allclose(self, other: "RealPolynomial", atol: float = 1e-12) -> bool:
        diff = self - other
        return all(abs(c) <= atol for c in diff.coefficients)

    def residual_scale(self) -> float:
        return float(sum(abs(c) for c in self.coefficients))


def companion_matrix(p: RealPolynomial) -> np.ndarray:
    """Frobenius companion matrix of ``p`` (normalized to monic)."""
    if p.degree < 1:
        raise ValueError("companion matrix needs degree >= 1")
    c = np.asarray(p.coefficients, dtype=float)
    monic = c[:-1] / c[-1]
    d = p.degree
    m = np.zeros((d, d))
    if d > 1:
        m[1:, :-1] = np.eye(d - 1)
    m[:, -1] = -monic
    return m


def _polish(p: RealPolynomial, dp: RealPolynomial, r: complex, steps: int = 3) -> complex:
    best, best_res = r, abs(p(r))
    z = r
    for _ in range(steps):
        slope = dp(z)
        if slope == 0:
            break
        z = z - p(z) / slope
        res = abs(p(z))
        if res < best_res:
            best, best_res = z, res
    return best


def poly_roots(p: RealPolynomial, polish: bool = True) -> np.ndarray:
    """All complex roots of ``p`` from the eigenvalues of its companion matrix.

    A few Newton steps are applied per root when they reduce ``|p(r)|``.

    Raises
    ------
    ValueError
        If ``p`` is constant.
    """
    if p.degree < 1:
        raise ValueError(f"polynomial of degree {p.degree} has no roots to find")
    roots = np.linalg.eigvals(companion_matrix(p)).astype(complex)
    if polish:
        dp = p.derivative()
        roots = np.array([_polish(p, dp, r) for r in roots])
    return roots[np.lexsort((roots.imag, roots.real))]


def real_roots(p: RealPolynomial, imag_tol: float = REAL_ROOT_IMAG_TOL) -> np.ndarray:
    roots = poly_roots(p)
    return np.sort(roots[np.abs(roots.imag) <= imag_tol].real)


def max_real_root(p: RealPolynomial, imag_tol: float = REAL_ROOT_IMAG_TOL) -> float:
    """Largest root of ``p`` whose imaginary part is at most ``imag_tol``."""
    r = real_roots(p, imag_tol)
    if r.size == 0:
        raise ValueError("polynomial has no real roots within tolerance")
    return float(r[-1])


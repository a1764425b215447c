import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_hermitian
from jordanbell.bell_core import bell_operator
from jordanbell.linalg import (
    NotHermitianError,
    RealPolynomial,
    hermitian_eigen,
    jacobi_eigh,
    kron,
    max_real_root,
    poly_roots,
    reconstruction_error,
)


def kron_loop(a, b):
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = a[i, j] * b[k, l]
    return out


def faddeev_leverrier(m):
    """Characteristic polynomial coefficients (ascending), no eigensolver involved."""
    d = m.shape[0]
    coeffs = [0.0] * (d + 1)
    coeffs[d] = 1.0
    mk = np.zeros_like(m)
    c = 1.0
    for k in range(1, d + 1):
        mk = m @ mk + c * np.eye(d)
        c = -np.trace(m @ mk) / k
        coeffs[d - k] = c
    return coeffs


def test_kron_identity_and_projector():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    p = np.diag([1.0, 0.0])
    assert np.array_equal(kron(p, p), np.diag([1.0, 0.0, 0.0, 0.0]))


def test_kron_matches_index_loop(rng):
    for _ in range(10):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        assert np.allclose(kron(a, b), kron_loop(a, b), atol=0, rtol=1e-15)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_kron_associative(seed):
    r = np.random.default_rng(seed)
    a, b, c = (r.normal(size=(2, 2)) + 1j * r.normal(size=(2, 2)) for _ in range(3))
    assert np.max(np.abs(kron(kron(a, b), c) - kron(a, kron(b, c)))) <= 1e-12


def test_eigen_diag():
    w, v = hermitian_eigen(np.diag([2.0, -1.0, 0.0]))
    assert np.allclose(w, [-1, 0, 2])


def test_eigen_two_party_operator():
    w, _ = hermitian_eigen(bell_operator((1 / math.sqrt(2),) * 2).matrix)
    assert w[-1] == pytest.approx((math.sqrt(2) - 1) / 2, abs=1e-12)


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_eigen_reconstruction_and_orthonormality(rng, method):
    for d in (1, 2, 5, 8, 16):
        h = random_hermitian(rng, d)
        w, v = hermitian_eigen(h, method=method)
        assert np.all(np.diff(w) >= 0)
        assert reconstruction_error(h, w, v) <= 1e-10 * max(1.0, np.max(np.abs(h)))
        assert np.max(np.abs(v.conj().T @ v - np.eye(d))) <= 1e-10


def test_jacobi_agrees_with_lapack(rng):
    h = random_hermitian(rng, 12)
    assert np.allclose(jacobi_eigh(h)[0], np.linalg.eigvalsh(h), atol=1e-12)


def test_eigen_matches_characteristic_roots(rng):
    h = random_hermitian(rng, 8)
    w, _ = hermitian_eigen(h)
    coeffs = faddeev_leverrier(h)
    assert max(abs(c.imag) for c in coeffs) < 1e-9
    roots = poly_roots(RealPolynomial(tuple(c.real for c in coeffs)))
    assert np.allclose(np.sort(roots.real), w, atol=1e-8)
    assert np.max(np.abs(roots.imag)) < 1e-6


def test_eigen_rejects_non_hermitian():
    m = np.array([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(NotHermitianError) as exc:
        hermitian_eigen(m)
    assert exc.value.asymmetry == pytest.approx(2.0)


def test_roots_simple():
    r = poly_roots(RealPolynomial((-1.0, 0.0, 1.0)))
    assert np.allclose(np.sort(r.real), [-1, 1]) and np.allclose(r.imag, 0)


def test_roots_three_party_zx_cubic():
    p = RealPolynomial((-2.0, 5.0, 16.0, 8.0))
    roots = poly_roots(p)
    for r in roots:
        assert abs(p(r)) <= 1e-8 * p.residual_scale()
    positive = [r.real for r in roots if abs(r.imag) < 1e-9 and r.real > 0]
    assert len(positive) == 1
    assert positive[0] == pytest.approx(0.223, abs=5e-4)


def test_roots_two_party_quartic_contains_optimum():
    # lambda^2 (lambda + 1)^2 - 1/16 at x_a = x_b = 1/sqrt(2)
    p = RealPolynomial((-1 / 16, 0.0, 1.0, 2.0, 1.0))
    assert max_real_root(p) == pytest.approx((math.sqrt(2) - 1) / 2, abs=1e-12)


def test_roots_degree_zero_rejected():
    with pytest.raises(ValueError):
        poly_roots(RealPolynomial((3.0,)))


def test_trailing_zero_trim():
    assert RealPolynomial((1.0, 2.0, 1e-16)).degree == 1


@given(
    st.lists(st.integers(-15, 15), min_size=1, max_size=6, unique=True),
    st.floats(0.5, 3.0),
)
@settings(max_examples=100, deadline=None)
def test_planted_roots_recovered(ints, lead):
    planted = np.sort(np.array(ints) * 0.2)
    desc = lead * np.poly(planted)
    p = RealPolynomial.from_descending(desc)
    found = np.sort(poly_roots(p).real)
    assert np.max(np.abs(found - planted)) <= 1e-7


def test_max_real_root_skips_complex():
    # (lambda^2 + 1)(lambda - 0.5)
    p = RealPolynomial.from_descending(np.polymul([1, 0, 1], [1, -0.5]))
    assert max_real_root(p) == pytest.approx(0.5, abs=1e-12)

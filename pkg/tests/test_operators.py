"""Shifts, parity, rank-one operators, Schatten norms, eigendecomposition."""

import numpy as np
import pytest

from qha import (MixedState, PhasePoint, QhaContext, adjoint, basis_vector,
                 conjugate_shift, hermitian_eig, identity, inner, is_hermitian,
                 is_positive, operator, operator_norm, parity_check, parity_matrix,
                 parity_signal, rank_one, schatten_norm, signal, signal_norm,
                 symplectic_form, tf_shift, trace)
from qha.errors import ContextMismatch, InvalidExponents, NotHermitian, NotMixedState

from helpers import naive_shift_matrix


def rand_signal(ctx, rng):
    return signal(ctx, rng.normal(size=ctx.n) + 1j * rng.normal(size=ctx.n))


def rand_matrix(ctx, rng):
    return operator(ctx, rng.normal(size=(ctx.n, ctx.n))
                    + 1j * rng.normal(size=(ctx.n, ctx.n)))


def test_tf_shift_frozen_small_cases():
    ctx = QhaContext(2)
    np.testing.assert_array_equal(tf_shift(ctx, PhasePoint(ctx, 0, 0)).entries, np.eye(2))
    np.testing.assert_allclose(tf_shift(ctx, PhasePoint(ctx, 1, 0)).entries,
                               np.array([[0, 1], [1, 0]]), atol=1e-15)
    np.testing.assert_allclose(tf_shift(ctx, PhasePoint(ctx, 0, 1)).entries,
                               np.diag([1.0, -1.0]), atol=1e-15)


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_tf_shift_matches_naive_and_unitary(n):
    ctx = QhaContext(n)
    for k in range(n):
        for l in range(n):
            m = tf_shift(ctx, PhasePoint(ctx, k, l)).entries
            np.testing.assert_allclose(m, naive_shift_matrix(n, k, l), atol=1e-14)
            np.testing.assert_allclose(m @ m.conj().T, np.eye(n), atol=1e-14)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 8])
def test_shift_composition_phase_law(n):
    # pi(z) pi(z') = e^{-2 pi i l' k / N} pi(z + z') on all pairs
    ctx = QhaContext(n)
    for k in range(n):
        for l in range(n):
            for kp in range(n):
                for lp in range(n):
                    lhs = (tf_shift(ctx, PhasePoint(ctx, k, l)).entries
                           @ tf_shift(ctx, PhasePoint(ctx, kp, lp)).entries)
                    rhs = (np.exp(-2j * np.pi * lp * k / n)
                           * tf_shift(ctx, PhasePoint(ctx, k + kp, l + lp)).entries)
                    assert np.abs(lhs - rhs).max() < 1e-12


@pytest.mark.parametrize("n", [4, 5, 8])
def test_shift_trace_and_orthonormal_basis(n):
    ctx = QhaContext(n)
    flat = []
    for k in range(n):
        for l in range(n):
            m = tf_shift(ctx, PhasePoint(ctx, k, l)).entries
            expected = n if (k, l) == (0, 0) else 0.0
            assert abs(np.trace(m) - expected) < 1e-12
            flat.append(m.ravel() / np.sqrt(n))
    gram = np.array(flat) @ np.array(flat).conj().T
    np.testing.assert_allclose(gram, np.eye(n * n), atol=1e-10)


@pytest.mark.parametrize("n", [3, 4, 7])
def test_parity_conjugation_of_shifts(n):
    ctx = QhaContext(n)
    p = parity_matrix(ctx).entries
    for k in range(n):
        for l in range(n):
            lhs = p @ tf_shift(ctx, PhasePoint(ctx, k, l)).entries @ p
            rhs = tf_shift(ctx, PhasePoint(ctx, -k, -l)).entries
            assert np.abs(lhs - rhs).max() < 1e-12


def test_conjugate_shift_examples():
    n = 6
    ctx = QhaContext(n)
    rng = np.random.default_rng(0)
    a = rand_matrix(ctx, rng)
    z = PhasePoint(ctx, 2, 5)
    zp = PhasePoint(ctx, 3, 1)
    # matches the explicit sandwich
    pi = tf_shift(ctx, z).entries
    np.testing.assert_allclose(conjugate_shift(a, z).entries,
                               pi @ a.entries @ pi.conj().T, atol=1e-12)
    # group law, exactly
    lhs = conjugate_shift(conjugate_shift(a, zp), z).entries
    rhs = conjugate_shift(a, z + zp).entries
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)
    # identity, trace, singular values
    np.testing.assert_allclose(conjugate_shift(identity(ctx), z).entries, np.eye(n),
                               atol=1e-14)
    assert abs(trace(conjugate_shift(a, z)) - trace(a)) < 1e-12
    np.testing.assert_allclose(np.linalg.svd(conjugate_shift(a, z).entries, compute_uv=False),
                               np.linalg.svd(a.entries, compute_uv=False), atol=1e-10)
    # commutation with another shift picks up e^{2 pi i sigma(z, z')/N}
    phase = np.exp(2j * np.pi * symplectic_form(z, zp) / n)
    np.testing.assert_allclose(conjugate_shift(tf_shift(ctx, zp), z).entries,
                               phase * tf_shift(ctx, zp).entries, atol=1e-12)


def test_parity_check_examples():
    ctx = QhaContext(5)
    rng = np.random.default_rng(1)
    np.testing.assert_array_equal(parity_check(identity(ctx)).entries, np.eye(5))
    a = rand_matrix(ctx, rng)
    np.testing.assert_array_equal(parity_check(parity_check(a)).entries, a.entries)
    psi, phi = rand_signal(ctx, rng), rand_signal(ctx, rng)
    lhs = parity_check(rank_one(psi, phi)).entries
    rhs = rank_one(parity_signal(psi), parity_signal(phi)).entries
    np.testing.assert_allclose(lhs, rhs, atol=1e-14)
    p = parity_matrix(ctx).entries
    np.testing.assert_allclose(lhs, p @ rank_one(psi, phi).entries @ p, atol=1e-14)


def test_rank_one_examples():
    ctx = QhaContext(4)
    rng = np.random.default_rng(2)
    e0 = basis_vector(ctx, 0)
    m = rank_one(e0, e0).entries
    want = np.zeros((4, 4))
    want[0, 0] = 1
    np.testing.assert_array_equal(m, want)
    psi, phi = rand_signal(ctx, rng), rand_signal(ctx, rng)
    assert abs(trace(rank_one(psi, phi)) - inner(psi, phi)) < 1e-12
    assert abs(schatten_norm(rank_one(psi, phi), 1)
               - signal_norm(psi) * signal_norm(phi)) < 1e-12


def test_schatten_norms():
    ctx = QhaContext(5)
    rng = np.random.default_rng(3)
    assert schatten_norm(identity(ctx), 1) == pytest.approx(5.0)
    psi = rand_signal(ctx, rng)
    for p in (1, 2, 3.5, np.inf):
        assert schatten_norm(rank_one(psi, psi), p) == pytest.approx(signal_norm(psi) ** 2)
    a = rand_matrix(ctx, rng)
    assert schatten_norm(a, 2) == pytest.approx(np.linalg.norm(a.entries))
    # monotonicity ||A||_op <= ||A||_p <= ||A||_1
    norms = [schatten_norm(a, p) for p in (np.inf, 4, 2, 1)]
    assert norms == sorted(norms)
    with pytest.raises(InvalidExponents):
        schatten_norm(a, 0.9)
    # tr(AB) = tr(BA)
    b = rand_matrix(ctx, rng)
    assert abs(np.trace(a.entries @ b.entries) - np.trace(b.entries @ a.entries)) < 1e-12


def test_hermitian_eig_examples():
    ctx = QhaContext(3)
    spec = hermitian_eig(operator(ctx, np.diag([3.0, 1.0, 2.0])))
    np.testing.assert_allclose(spec.eigenvalues, [3.0, 2.0, 1.0])
    rng = np.random.default_rng(4)
    psi = rand_signal(ctx, rng)
    spec = hermitian_eig(rank_one(psi, psi))
    assert spec.eigenvalues[0] == pytest.approx(signal_norm(psi) ** 2)
    np.testing.assert_allclose(spec.eigenvalues[1:], 0.0, atol=1e-12)


@pytest.mark.parametrize("n", [4, 8, 16])
def test_hermitian_eig_reconstruction_and_orthonormality(n):
    ctx = QhaContext(n)
    rng = np.random.default_rng(n)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = operator(ctx, (a + a.conj().T) / 2)
    spec = hermitian_eig(h)
    v = np.column_stack([s.values for s in spec.eigenvectors])
    np.testing.assert_allclose(v.conj().T @ v, np.eye(n), atol=1e-8)
    np.testing.assert_allclose(spec.reconstruct().entries, h.entries, atol=1e-8)
    assert all(np.diff(spec.eigenvalues) <= 1e-10)


def test_hermitian_eig_rejects_non_hermitian():
    ctx = QhaContext(3)
    with pytest.raises(NotHermitian):
        hermitian_eig(operator(ctx, np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0.0]])))


def test_hermitian_eig_deterministic_phase_and_ties():
    # degenerate eigenvalue: identity block; phases fixed, order reproducible
    ctx = QhaContext(4)
    h = operator(ctx, np.diag([2.0, 2.0, 1.0, 0.5]))
    s1 = hermitian_eig(h)
    s2 = hermitian_eig(h)
    for a, b in zip(s1.eigenvectors, s2.eigenvectors):
        np.testing.assert_array_equal(a.values, b.values)
    for v in s1.eigenvectors:
        i = int(np.argmax(np.abs(v.values)))
        assert v.values[i].real > 0 and abs(v.values[i].imag) < 1e-14


def test_is_positive_examples():
    ctx = QhaContext(4)
    rng = np.random.default_rng(5)
    assert is_positive(identity(ctx))
    assert not is_positive(parity_matrix(ctx))  # eigenvalue -1 for N >= 3
    psi = rand_signal(ctx, rng)
    assert is_positive(rank_one(psi, psi))
    assert not is_positive(rand_matrix(ctx, rng))


def test_mixed_state_validation():
    ctx = QhaContext(3)
    rng = np.random.default_rng(6)
    psi = rand_signal(ctx, rng)
    v = psi.values / np.linalg.norm(psi.values)
    good = operator(ctx, np.outer(v, v.conj()))
    MixedState(good)  # pure state passes
    with pytest.raises(NotMixedState):
        MixedState(operator(ctx, 2 * np.outer(v, v.conj())))  # trace 2
    with pytest.raises(NotMixedState):
        MixedState(operator(ctx, np.diag([1.5, -0.5, 0.0])))  # negative part
    with pytest.raises(NotMixedState):
        m = np.diag([0.5, 0.5, 0.0]).astype(complex)
        m[0, 1] = 0.3  # not Hermitian
        MixedState(operator(ctx, m))


def test_adjoint_and_hermitian_flags():
    ctx = QhaContext(4)
    rng = np.random.default_rng(7)
    a = rand_matrix(ctx, rng)
    assert not is_hermitian(a)
    h = operator(ctx, a.entries + a.entries.conj().T)
    assert is_hermitian(h)
    np.testing.assert_array_equal(adjoint(a).entries, a.entries.conj().T)
    assert operator_norm(identity(ctx)) == pytest.approx(1.0)


def test_context_mismatch_raises():
    c1, c2 = QhaContext(4), QhaContext(5)
    rng = np.random.default_rng(8)
    with pytest.raises(ContextMismatch):
        rank_one(rand_signal(c1, rng), rand_signal(c2, rng))
    with pytest.raises(ContextMismatch):
        inner(rand_signal(c1, rng), rand_signal(c2, rng))

"""Localization operators, POVM checks, reconstruction, uncertainty report."""

from fractions import Fraction

import numpy as np
import pytest

from qha import (Domain, MixedState, PhasePoint, QhaContext, basis_vector,
                 cell_partition, concentration, conv_fn_op, empty_domain,
                 filter_from_operator, full_domain, gaussian_window, identity,
                 localization_eigenproblem, measure, mixed_state_loc,
                 multiwindow_filter, operator, operator_norm, parity_matrix,
                 phase_fn, povm_verify, prob_measure, quadrant_partition, rank_one,
                 reconstruct_domain, signal_norm, spreading_uncertainty,
                 fourier_wigner, zero_set)
from qha.errors import (NonBinaryMask, NotAPartition, NotNormalized, ZeroSpreading)
from qha.sampling import (make_rng, random_domain, random_mixed_state,
                          random_operator, random_phase_fn, random_signal,
                          random_unit_signal)


def gaussian_state(ctx):
    g = gaussian_window(ctx)
    return MixedState(rank_one(g, g))


@pytest.mark.parametrize("n", [4, 5, 8, 9])
def test_mixed_state_loc_edges(n):
    ctx = QhaContext(n)
    rng = make_rng(n)
    state = random_mixed_state(ctx, rng)
    np.testing.assert_allclose(mixed_state_loc(full_domain(ctx), state).entries,
                               np.eye(n), atol=1e-10)
    np.testing.assert_allclose(mixed_state_loc(empty_domain(ctx), state).entries,
                               0.0, atol=1e-14)
    om = random_domain(ctx, rng)
    h = mixed_state_loc(om, state)
    assert operator_norm(h) <= 1 + 1e-10
    assert abs(np.trace(h.entries).real - float(measure(om))) <= 1e-10 * n
    w = np.linalg.eigvalsh((h.entries + h.entries.conj().T) / 2)
    assert w.min() >= -1e-10 and w.max() <= 1 + 1e-10  # 0 <= F(Omega) <= I


def test_multiwindow_filter_single_term_and_identity():
    ctx = QhaContext(8)
    rng = make_rng(1)
    f = random_phase_fn(ctx, rng)
    phi1, phi2 = random_signal(ctx, rng), random_signal(ctx, rng)
    got = multiwindow_filter(f, [(1.0, phi1, phi2)])
    np.testing.assert_allclose(got.entries, conv_fn_op(f, rank_one(phi2, phi1)).entries,
                               atol=1e-12)
    # flat mask with a trace-one positive combination gives the identity
    from qha import constant_fn

    u1 = random_unit_signal(ctx, rng)
    u2val = rng.normal(size=8) + 1j * rng.normal(size=8)
    u2val -= np.vdot(u1.values, u2val) * u1.values  # orthogonalize
    u2val /= np.linalg.norm(u2val)
    from qha import Signal

    u2 = Signal(ctx, u2val)
    terms = [(0.25, u1, u1), (0.75, u2, u2)]
    got = multiwindow_filter(constant_fn(ctx), terms)
    np.testing.assert_allclose(got.entries, np.eye(8), atol=1e-10)


def test_multiwindow_filter_linearity_and_errors():
    ctx = QhaContext(6)
    rng = make_rng(2)
    f = random_phase_fn(ctx, rng)
    terms = [(complex(rng.normal(), rng.normal()), random_signal(ctx, rng),
              random_signal(ctx, rng)) for _ in range(3)]
    whole = multiwindow_filter(f, terms)
    per_term = sum(multiwindow_filter(f, [t]).entries for t in terms)
    np.testing.assert_allclose(whole.entries, per_term, atol=1e-10)
    with pytest.raises(ValueError):
        multiwindow_filter(f, [])


def test_filter_from_operator():
    ctx = QhaContext(8)
    rng = make_rng(3)
    f = random_phase_fn(ctx, rng)
    psi, phi = random_signal(ctx, rng), random_signal(ctx, rng)
    s1 = rank_one(psi, phi)
    terms = filter_from_operator(f, s1)
    assert len(terms) == 1
    lams = [t[0] for t in terms]
    assert lams == sorted(lams, reverse=True) and all(l > 0 for l in lams)

    # rank 4: four terms reassembling to f * S
    b = rng.normal(size=(8, 4)) + 1j * rng.normal(size=(8, 4))
    c = rng.normal(size=(4, 8)) + 1j * rng.normal(size=(4, 8))
    s4 = operator(ctx, b @ c)
    terms4 = filter_from_operator(f, s4)
    assert len(terms4) == 4
    np.testing.assert_allclose(multiwindow_filter(f, terms4).entries,
                               conv_fn_op(f, s4).entries, atol=1e-9)


@pytest.mark.parametrize("n", [4, 5, 8])
@pytest.mark.parametrize("kind", ["quadrant", "cells"])
def test_povm_verify_partitions(n, kind):
    ctx = QhaContext(n)
    rng = make_rng(20 + n)
    state = random_mixed_state(ctx, rng)
    partition = quadrant_partition(ctx) if kind == "quadrant" else cell_partition(ctx)
    shifts = [PhasePoint(ctx, 1, 0), PhasePoint(ctx, 0, 1), PhasePoint(ctx, 2, 3)]
    rep = povm_verify(state, partition, shifts)
    assert rep.partition_sum_error <= 1e-9
    assert rep.identity_error <= 1e-9
    assert rep.covariance_error <= 1e-9
    assert rep.min_eigenvalue >= -1e-9


def test_povm_verify_non_positive_state_reported():
    ctx = QhaContext(4)
    p = parity_matrix(ctx)
    scaled = operator(ctx, p.entries / np.trace(p.entries))  # trace 1, not positive
    # per-cell values are alpha_z(S)/N, so the negative eigenvalue survives
    rep = povm_verify(scaled, cell_partition(ctx), [PhasePoint(ctx, 1, 1)])
    assert rep.min_eigenvalue < -1e-3  # positivity axiom fails, reported not raised
    assert rep.partition_sum_error <= 1e-9  # additivity still exact


def test_povm_verify_rejects_non_partition():
    ctx = QhaContext(4)
    rng = make_rng(4)
    state = random_mixed_state(ctx, rng)
    with pytest.raises(NotAPartition):
        povm_verify(state, [full_domain(ctx), full_domain(ctx)], [])
    with pytest.raises(NotAPartition):
        povm_verify(state, [empty_domain(ctx)], [])
    with pytest.raises(NotAPartition):
        povm_verify(state, [], [])


@pytest.mark.parametrize("n", [4, 5, 8, 9])
def test_prob_measure(n):
    ctx = QhaContext(n)
    rng = make_rng(30 + n)
    state = random_mixed_state(ctx, rng)
    psi = random_unit_signal(ctx, rng)
    assert prob_measure(state, psi, full_domain(ctx)) == pytest.approx(1.0, abs=1e-10)
    assert prob_measure(state, psi, empty_domain(ctx)) == 0.0
    om = random_domain(ctx, rng)
    two_path = concentration(state, psi, om)
    assert prob_measure(state, psi, om) == pytest.approx(two_path, abs=1e-10)
    assert -1e-12 <= prob_measure(state, psi, om) <= 1 + 1e-12
    with pytest.raises(NotNormalized):
        prob_measure(state, random_signal(ctx, rng), om)


def test_localization_eigenproblem_full_grid():
    ctx = QhaContext(6)
    rng = make_rng(5)
    state = random_mixed_state(ctx, rng)
    rep = localization_eigenproblem(full_domain(ctx), state)
    np.testing.assert_allclose(rep.eigen.eigenvalues, 1.0, atol=1e-10)
    assert rep.domain_measure == Fraction(6)


@pytest.mark.parametrize("n", [4, 5, 8, 9])
def test_localization_eigenproblem_sum_and_minmax(n):
    ctx = QhaContext(n)
    rng = make_rng(40 + n)
    state = random_mixed_state(ctx, rng)
    om = random_domain(ctx, rng)
    rep = localization_eigenproblem(om, state)
    mu = float(rep.domain_measure)
    assert abs(rep.eigen_sum - mu) <= 1e-10 * n
    assert abs(rep.trace - mu) <= 1e-10 * n
    top = rep.eigen.eigenvectors[0]
    best = concentration(state, top, om)
    assert abs(best - rep.eigen.eigenvalues[0]) <= 1e-9
    for _ in range(100):
        probe = random_unit_signal(ctx, rng)
        assert concentration(state, probe, om) <= best + 1e-9


@pytest.mark.parametrize("n", [8, 16])
def test_reconstruct_domain_round_trip(n):
    ctx = QhaContext(n)
    rng = make_rng(50 + n)
    state = gaussian_state(ctx)
    assert not zero_set(fourier_wigner(state.op), ctx.deconv_tol).mask.any()
    for _ in range(10):
        om = random_domain(ctx, rng)
        got = reconstruct_domain(mixed_state_loc(om, state), state.op)
        assert (got.mask == om.mask).all()
    got = reconstruct_domain(mixed_state_loc(empty_domain(ctx), state), state.op)
    assert not got.mask.any()


def test_reconstruct_domain_errors():
    ctx = QhaContext(8)
    rng = make_rng(6)
    e0 = basis_vector(ctx, 0)
    s0 = rank_one(e0, e0)
    with pytest.raises(ZeroSpreading):
        reconstruct_domain(s0, s0)
    state = gaussian_state(ctx)
    smooth = phase_fn(ctx, 0.37 * np.ones((8, 8)))  # not an indicator
    h = conv_fn_op(smooth, state.op)
    with pytest.raises(NonBinaryMask):
        reconstruct_domain(h, state.op)


@pytest.mark.parametrize("n", [4, 5, 8, 9])
def test_spreading_uncertainty(n):
    ctx = QhaContext(n)
    rng = make_rng(60 + n)
    s = random_operator(ctx, rng)
    rep = spreading_uncertainty(s, full_domain(ctx), 4.0)
    assert rep.epsilon == pytest.approx(0.0, abs=1e-10)
    assert rep.finite_bound_holds
    assert float(rep.domain_measure) == n

    # 90 per cent mass set of |F_W S|^2
    fsq = np.abs(fourier_wigner(s).values) ** 2
    order = np.argsort(-fsq.ravel())
    mask = np.zeros(n * n, dtype=bool)
    acc, target = 0.0, 0.9 * fsq.sum()
    for i in order:
        mask[i] = True
        acc += fsq.ravel()[i]
        if acc >= target:
            break
    rep = spreading_uncertainty(s, Domain(ctx, mask.reshape(n, n)), 4.0)
    assert rep.finite_bound_holds
    assert rep.epsilon <= 0.1 + 1e-9
    with pytest.raises(ValueError):
        spreading_uncertainty(s, full_domain(ctx), 2.0)


def test_spreading_uncertainty_tight_for_maximally_mixed():
    # S = I/N concentrates all spreading mass at the origin; bound is tight
    n = 8
    ctx = QhaContext(n)
    s = operator(ctx, np.eye(n) / n)
    om = empty_domain(ctx).complement()  # full grid
    origin = np.zeros((n, n), dtype=bool)
    origin[0, 0] = True
    rep = spreading_uncertainty(s, Domain(ctx, origin), 4.0)
    assert rep.finite_bound_holds
    assert float(rep.domain_measure) == pytest.approx(rep.finite_bound, rel=1e-9)

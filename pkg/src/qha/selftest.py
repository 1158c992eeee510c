"""Seeded end-to-end identity suite behind ``qha selftest``.

Each check evaluates one of the package's exact identities on random fixtures
drawn from a single PCG64 stream, so two runs with the same grid side and
seed produce identical numbers.  Returns an ordered mapping
name -> (passed, worst_error, tolerance).
"""

from __future__ import annotations

import numpy as np

from . import (PhasePoint, ambiguity, cohen_distribution, concentration,
               constant_fn, conv_fn_op, conv_op_op, fourier_wigner, gaussian_window,
               identity, inverse_fourier_wigner, klm_check, kernel_function,
               localization_eigenproblem, mixed_state_loc, parity_signal,
               phase_retrieval, povm_verify, prob_measure, quadrant_partition,
               rank_one, schatten_norm, signal_norm, spectrogram,
               spectrogram_decomposition, spreading_uncertainty, stft,
               symplectic_fourier, total_energy_check, trace, translate, weyl_symbol,
               weyl_symbol_of_filter, weyl_transform, wigner, zero_set, CohenKernel,
               QhaContext)
from .operators import conjugate_shift
from .sampling import (make_rng, random_domain, random_hermitian, random_mixed_state,
                       random_operator, random_phase_fn, random_real_mask,
                       random_signal, random_unit_signal)

__all__ = ["run_selftest"]


def run_selftest(ctx: QhaContext, seed: int) -> dict[str, tuple[bool, float, float]]:
    rng = make_rng(seed)
    n = ctx.n
    out: dict[str, tuple[bool, float, float]] = {}

    def record(name: str, err: float, tol: float) -> None:
        out[name] = (bool(err <= tol), float(err), float(tol))

    S = random_operator(ctx, rng)
    T = random_operator(ctx, rng)
    f = random_phase_fn(ctx, rng)
    state = random_mixed_state(ctx, rng)
    psi = random_unit_signal(ctx, rng)
    phi = random_unit_signal(ctx, rng)
    omega = random_domain(ctx, rng)
    z0 = PhasePoint(ctx, int(rng.integers(n)), int(rng.integers(n)))

    # Moyal: average of tr(S alpha_z T) equals tr(S) tr(T)
    vals = np.array([[np.trace(S.entries @ conjugate_shift(T, PhasePoint(ctx, k, l)).entries)
                      for l in range(n)] for k in range(n)])
    record("moyal-identity", abs(vals.sum() / n - trace(S) * trace(T)), 1e-9)

    # product formulas
    record("product-formula-op-op",
           float(np.abs(symplectic_fourier(conv_op_op(S, T)).values
                        - fourier_wigner(S).values * fourier_wigner(T).values).max()), 1e-9)
    record("product-formula-fn-op",
           float(np.abs(fourier_wigner(conv_fn_op(f, S)).values
                        - symplectic_fourier(f).values * fourier_wigner(S).values).max()), 1e-9)

    # unit identities
    record("one-star-state-is-identity",
           float(np.abs(conv_fn_op(constant_fn(ctx), state.op).entries - np.eye(n)).max()),
           1e-10)
    record("identity-star-state-is-trace",
           float(np.abs(conv_op_op(identity(ctx), state.op).values - trace(state.op)).max()),
           1e-10)

    # symplectic Fourier involution and isometry
    record("symplectic-fourier-involution",
           float(np.abs(symplectic_fourier(symplectic_fourier(f)).values - f.values).max()),
           1e-10)

    # Fourier-Wigner unitarity and round trip
    record("fourier-wigner-unitary",
           abs(np.sqrt((np.abs(fourier_wigner(S).values) ** 2).sum() / n)
               - schatten_norm(S, 2.0)), 1e-10)
    record("fourier-wigner-round-trip",
           float(np.abs(inverse_fourier_wigner(fourier_wigner(S)).entries - S.entries).max()),
           1e-10)

    # Weyl calculus
    record("weyl-round-trip",
           float(np.abs(weyl_symbol(weyl_transform(f)).values - f.values).max()), 1e-10)
    H = random_hermitian(ctx, rng)
    record("hermitian-symbol-real", float(np.abs(weyl_symbol(H).values.imag).max()), 1e-10)
    record("filter-symbol-convolution",
           float(np.abs(weyl_symbol_of_filter(f, S).values
                        - weyl_symbol(conv_fn_op(f, S)).values).max()), 1e-9)

    # spectrogram lemma and signal-side cross checks
    spec_fn = spectrogram(psi, phi)
    lhs = conv_op_op(rank_one(psi, psi), rank_one(parity_signal(phi), parity_signal(phi)))
    record("spectrogram-lemma", float(np.abs(lhs.values - spec_fn.values).max()), 1e-10)
    record("stft-moyal",
           abs((np.abs(stft(psi, phi).values) ** 2).sum() / n
               - signal_norm(psi) ** 2 * signal_norm(phi) ** 2), 1e-10)
    record("ambiguity-matches-rank-one",
           float(np.abs(ambiguity(psi, phi).values
                        - fourier_wigner(rank_one(psi, phi)).values).max()), 1e-12)
    record("wigner-matches-weyl-symbol",
           float(np.abs(wigner(psi, psi).values
                        - weyl_symbol(rank_one(psi, psi)).values).max()), 1e-10)

    # covariance of the correspondence f -> f * S
    record("shift-covariance",
           float(np.abs(conjugate_shift(conv_fn_op(f, S), z0).entries
                        - conv_fn_op(translate(f, z0), S).entries).max()), 1e-10)

    # quadratic form identity <(f*S) psi, psi> = (1/N) sum f Q_S(psi)
    q = cohen_distribution(state, psi)
    lhs_q = np.vdot(psi.values, conv_fn_op(f, state.op).entries @ psi.values)
    rhs_q = (f.values * q.values).sum() / n
    record("quadratic-form-identity", abs(lhs_q - rhs_q), 1e-10)

    # localization: trace, eigenvalue sum, min-max
    rep = localization_eigenproblem(omega, state)
    record("trace-equals-measure", abs(rep.trace - float(rep.domain_measure)), 1e-10 * n)
    record("eigen-sum-equals-trace", abs(rep.eigen_sum - rep.trace), 1e-10 * n)
    top = rep.eigen.eigenvectors[0]
    best = concentration(state, top, omega)
    worst_margin = 0.0
    for _ in range(50):
        probe = random_unit_signal(ctx, rng)
        worst_margin = max(worst_margin, concentration(state, probe, omega) - best)
    record("min-max-top-eigenvector", max(worst_margin, abs(best - rep.eigen.eigenvalues[0])),
           1e-9)

    # POVM axioms on the quadrant partition
    shifts = [PhasePoint(ctx, 1, 0), PhasePoint(ctx, 0, 1), z0]
    pov = povm_verify(state, quadrant_partition(ctx), shifts)
    record("povm-axioms", max(pov.partition_sum_error, pov.covariance_error,
                              pov.identity_error, max(-pov.min_eigenvalue, 0.0)), 1e-9)
    record("prob-measure-two-path",
           abs(prob_measure(state, psi, omega) - concentration(state, psi, omega)), 1e-10)

    # Hausdorff-Young with constant one
    hy = 0.0
    fs = np.abs(fourier_wigner(S).values)
    for r in (2.0, 4.0, 8.0, np.inf):
        lr = fs.max() if np.isinf(r) else ((fs**r).sum() / n) ** (1 / r)
        hy = max(hy, lr / schatten_norm(S, 1.0 if np.isinf(r) else r / (r - 1.0)) - 1.0)
    record("hausdorff-young", max(hy, 0.0), 1e-10)

    # Cohen decomposition of a low-rank state
    st4 = random_mixed_state(ctx, rng, rank=min(4, n))
    pairs = spectrogram_decomposition(st4)
    recon = sum(lam * spectrogram(psi, w).values for lam, w in pairs)
    record("cohen-decomposition",
           float(np.abs(recon - cohen_distribution(st4, psi).values).max()), 1e-9)
    record("cohen-energy-sum", abs(sum(lam for lam, _ in pairs) - 1.0), 1e-10)
    lhs_e, rhs_e = total_energy_check(st4, psi)
    record("total-energy", abs(lhs_e - rhs_e), 1e-10)

    # KLM soundness on a positive kernel
    kern = CohenKernel(st4.op, label="state")
    kfn = kernel_function(kern)
    worst_klm = 0.0
    for _ in range(20):
        m = int(rng.integers(2, 7))
        pts = [PhasePoint(ctx, int(rng.integers(n)), int(rng.integers(n))) for _ in range(m)]
        _, mineig = klm_check(kfn, pts)
        worst_klm = max(worst_klm, max(-mineig, 0.0))
    record("klm-soundness", worst_klm, 1e-9)

    # spreading uncertainty, finite bound
    unc = spreading_uncertainty(S, omega, 4.0)
    record("uncertainty-finite-bound",
           0.0 if unc.finite_bound_holds else float(unc.finite_bound - float(unc.domain_measure)),
           1e-12)

    # deconvolution and retrieval with the certified window
    g = gaussian_window(ctx)
    gs = rank_one(g, g)
    certified = not zero_set(fourier_wigner(gs), ctx.deconv_tol).mask.any()
    if certified:
        from .fourier_wigner import deconvolve_mask
        from .localization import reconstruct_domain
        from .operators import MixedState

        mask = random_real_mask(ctx, rng)
        rec = deconvolve_mask(conv_fn_op(mask, gs), gs)
        record("mask-deconvolution",
               float(np.abs(rec.values - mask.values).max())
               / max(float(np.abs(mask.values).max()), 1e-30), 1e-8)
        om2 = random_domain(ctx, rng)
        om_rec = reconstruct_domain(mixed_state_loc(om2, MixedState(gs)), gs)
        record("domain-reconstruction", float((om_rec.mask != om2.mask).sum()), 0.0)
        spec2 = spectrogram(psi, g)
        psi_rec = phase_retrieval(spec2, g)
        fid = abs(np.vdot(psi_rec.values, psi.values)) / (
            np.linalg.norm(psi_rec.values) * np.linalg.norm(psi.values))
        record("phase-retrieval-fidelity", 1.0 - fid, 1e-8)
    return out

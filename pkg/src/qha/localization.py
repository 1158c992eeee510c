"""Mixed-state localization operators, multiwindow filters, POVM checks,
the concentration eigenproblem, domain reconstruction and the spreading
uncertainty report.

For a mixed state S (positive, unit trace) the assignment

    F(Omega) = chi_Omega * S

is a covariant positive-operator-valued measure on the grid: each value is
positive and dominated by the identity, disjoint domains add, the full grid
gives I, and alpha_z(F(Omega)) = F(Omega + z).  Its induced probability
measure <F(Omega) psi, psi> integrates the Cohen distribution Q_S(psi) over
Omega, which turns time-frequency concentration questions into eigenvalue
problems for F(Omega).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cohen import cohen_distribution
from .context import PhasePoint, same_context
from .convolutions import conv_fn_op
from .errors import NonBinaryMask, NotAPartition, NotNormalized
from .fourier_wigner import deconvolve_mask, fourier_wigner
from .operators import (MixedState, OperatorMatrix, Signal, Spectrum, conjugate_shift,
                        hermitian_eig, rank_one, schatten_norm, signal_norm, trace)
from .phase_space import (Domain, PhaseFn, full_domain, indicator, measure,
                          translate_domain)

__all__ = [
    "LocalizationReport",
    "PovmReport",
    "UncertaintyReport",
    "mixed_state_loc",
    "multiwindow_filter",
    "filter_from_operator",
    "povm_verify",
    "prob_measure",
    "localization_eigenproblem",
    "concentration",
    "reconstruct_domain",
    "spreading_uncertainty",
    "quadrant_partition",
    "cell_partition",
]


@dataclass(frozen=True)
class LocalizationReport:
    """Spectral summary of chi_Omega * S: trace = eigenvalue sum = mu(Omega) tr(S)."""

    eigen: Spectrum
    eigen_sum: float
    domain_measure: Fraction
    trace: float


@dataclass(frozen=True)
class PovmReport:
    """Deviations of a partition's localization operators from the POVM axioms."""

    partition_sum_error: float
    covariance_error: float
    min_eigenvalue: float
    identity_error: float


def _op_of(state: MixedState | OperatorMatrix) -> OperatorMatrix:
    return state.op if isinstance(state, MixedState) else state


def mixed_state_loc(omega: Domain, state: MixedState | OperatorMatrix) -> OperatorMatrix:
    """H_Omega = chi_Omega * S; positive, ||.||_op <= 1, full grid gives I."""
    op = _op_of(state)
    same_context(omega, op)
    return conv_fn_op(indicator(omega), op)


def multiwindow_filter(f: PhaseFn,
                       terms: Sequence[tuple[complex, Signal, Signal]]) -> OperatorMatrix:
    """f * sum_n lambda_n (phi_{n,2} (x) phi_{n,1}) for terms (lambda, phi1, phi2).

    Linearity makes this equal to the term-by-term sum of localization
    operators with common mask f.
    """
    if not terms:
        raise ValueError("need at least one term")
    ctx = f.ctx
    acc = np.zeros((ctx.n, ctx.n), dtype=complex)
    for lam, phi1, phi2 in terms:
        same_context(f, phi1, phi2)
        acc += lam * rank_one(phi2, phi1).entries
    return conv_fn_op(f, OperatorMatrix(ctx, acc))


def filter_from_operator(f: PhaseFn, s: OperatorMatrix) -> list[tuple[float, Signal, Signal]]:
    """Singular value decomposition of S as multiwindow terms for the mask f.

    Returns (lambda_n, phi_{n,1}, phi_{n,2}) with lambda_n the singular values
    in descending order (values below zero_tol relative to the largest are
    dropped); reassembling through multiwindow_filter reproduces f * S.
    """
    same_context(f, s)
    u, sv, vh = np.linalg.svd(s.entries)
    floor = s.ctx.zero_tol * (sv[0] if sv.size else 0.0)
    out = []
    for i in range(len(sv)):
        if sv[i] <= floor:
            break
        out.append((float(sv[i]), Signal(s.ctx, vh[i].conj()), Signal(s.ctx, u[:, i])))
    return out


def _check_partition(partition: Sequence[Domain]) -> None:
    if not partition:
        raise NotAPartition("empty partition")
    ctx = partition[0].ctx
    cover = np.zeros((ctx.n, ctx.n), dtype=int)
    for omega in partition:
        same_context(partition[0], omega)
        cover += omega.mask.astype(int)
    if not (cover == 1).all():
        raise NotAPartition("domains must tile the grid exactly once")


def povm_verify(state: MixedState | OperatorMatrix, partition: Sequence[Domain],
                shifts: Sequence[PhasePoint]) -> PovmReport:
    """Check the POVM axioms for F(Omega) = chi_Omega * S over a partition.

    Reports the operator-norm defects of additivity (sum of the partition
    versus I), the full-grid identity, the smallest eigenvalue over all
    F(Omega_i), and the worst covariance defect
    ||alpha_z(F(Omega_1)) - F(Omega_1 + z)||_op over the given shifts.
    Accepts a raw operator as well, so that the report can demonstrate how a
    non-positive "state" breaks the positivity axiom.
    """
    _check_partition(partition)
    ctx = same_context(_op_of(state), partition[0])
    total = np.zeros((ctx.n, ctx.n), dtype=complex)
    min_eig = np.inf
    for omega in partition:
        h = mixed_state_loc(omega, state)
        total += h.entries
        w = np.linalg.eigvalsh((h.entries + h.entries.conj().T) / 2.0)
        min_eig = min(min_eig, float(w.min()))
    eye = np.eye(ctx.n)
    partition_sum_error = float(np.linalg.svd(total - eye, compute_uv=False).max())
    identity_error = float(
        np.linalg.svd(mixed_state_loc(full_domain(ctx), state).entries - eye,
                      compute_uv=False).max())
    cov = 0.0
    first = partition[0]
    h1 = mixed_state_loc(first, state)
    for z in shifts:
        lhs = conjugate_shift(h1, z).entries
        rhs = mixed_state_loc(translate_domain(first, z), state).entries
        cov = max(cov, float(np.linalg.svd(lhs - rhs, compute_uv=False).max()))
    return PovmReport(partition_sum_error, cov, min_eig, identity_error)


def prob_measure(state: MixedState, psi: Signal, omega: Domain) -> float:
    """mu_psi(Omega) = <F(Omega) psi, psi> for a unit vector psi; lies in [0, 1].

    Equals the integral (1/N) sum_{z in Omega} Q_S(psi)(z) of the Cohen
    distribution, its Radon-Nikodym density.
    """
    same_context(state.op, psi, omega)
    if abs(signal_norm(psi) - 1.0) > psi.ctx.zero_tol:
        raise NotNormalized(f"||psi|| = {signal_norm(psi)}, expected 1")
    h = mixed_state_loc(omega, state)
    val = np.vdot(psi.values, h.entries @ psi.values)
    return float(val.real)


def localization_eigenproblem(omega: Domain, state: MixedState) -> LocalizationReport:
    """Eigenpairs of H_Omega = chi_Omega * S.

    The top eigenvector maximizes the Omega-concentration of Q_S over unit
    vectors, the eigenvalue sum equals the trace (all eigenvalues), and both
    equal mu(Omega) for a unit-trace state.
    """
    h = mixed_state_loc(omega, state)
    spec = hermitian_eig(h)
    tr = trace(h)
    return LocalizationReport(
        eigen=spec,
        eigen_sum=float(spec.eigenvalues.sum()),
        domain_measure=measure(omega),
        trace=float(tr.real),
    )


def concentration(state: MixedState, psi: Signal, omega: Domain) -> float:
    """(1/N) sum_{z in Omega} Q_S(psi)(z), the mass of Q_S(psi) on Omega."""
    q = cohen_distribution(state, psi)
    return float(q.values[omega.mask].real.sum() / q.ctx.n)


def reconstruct_domain(h: OperatorMatrix, s: OperatorMatrix) -> Domain:
    """Recover Omega from H = chi_Omega * S when S has zero-free spreading.

    Deconvolves the mask and binarizes its real part at 1/2.  If the recovered
    function is not within 0.1 of a 0/1 indicator (or carries imaginary mass
    above 0.1), the input was not a domain localization of S and
    NonBinaryMask is raised rather than silently rounding.
    """
    f = deconvolve_mask(h, s)
    re = f.values.real
    if np.abs(f.values.imag).max() > 0.1:
        raise NonBinaryMask("deconvolved mask has imaginary mass above 0.1")
    if np.minimum(np.abs(re), np.abs(re - 1.0)).max() > 0.1:
        raise NonBinaryMask("deconvolved mask is not within 0.1 of {0, 1}")
    return Domain(h.ctx, re > 0.5)


@dataclass(frozen=True)
class UncertaintyReport:
    """Spreading concentration versus domain measure, for one (S, Omega, p)."""

    p: float
    epsilon: float               # 1 - (1/N) sum_Omega |F_W(S)|^2 / ||S||_2^2
    concentration: float         # (1/N) sum_Omega |F_W(S)|^2
    domain_measure: Fraction
    finite_bound: float          # (concentration / ||S||_{p'}^2)^{p/(p-2)}
    finite_bound_holds: bool     # provable: mu(Omega) >= finite_bound
    lieb_bound: float            # continuous-constant variant, reported only
    lieb_bound_holds: bool


def spreading_uncertainty(s: OperatorMatrix, omega: Domain, p: float) -> UncertaintyReport:
    """How much phase space a concentrated spreading function must occupy.

    With kappa = (1/N) sum_Omega |F_W(S)|^2, Hoelder plus the finite
    Hausdorff-Young inequality (constant exactly 1) give

        mu(Omega) >= (kappa / ||S||_{p'}^2)^{p/(p-2)},    p' = p/(p-1),

    which is asserted to hold.  The report also evaluates the continuous
    Lieb-constant variant

        mu(Omega) >= (kappa)^{p/(p-2)} (p/2)^{2/(p-2)} / ||S||_1^{2p/(p-2)}

    whose validity on the finite grid is unknown; it is emitted as a
    pass/fail statistic only.
    """
    if p <= 2:
        raise ValueError(f"p must be > 2, got {p}")
    same_context(s, omega)
    fsq = np.abs(fourier_wigner(s).values) ** 2
    kappa = float(fsq[omega.mask].sum() / s.ctx.n)
    hs2 = schatten_norm(s, 2.0) ** 2
    eps = 1.0 - kappa / hs2 if hs2 > 0 else 1.0
    mu = measure(omega)
    pprime = p / (p - 1.0)
    power = p / (p - 2.0)
    finite = float((kappa / schatten_norm(s, pprime) ** 2) ** power) if kappa > 0 else 0.0
    lieb = float(
        kappa**power * (p / 2.0) ** (2.0 / (p - 2.0)) / schatten_norm(s, 1.0) ** (2.0 * power)
    ) if kappa > 0 else 0.0
    muf = float(mu)
    return UncertaintyReport(
        p=p,
        epsilon=eps,
        concentration=kappa,
        domain_measure=mu,
        finite_bound=finite,
        finite_bound_holds=bool(muf >= finite * (1 - 1e-10) - 1e-12),
        lieb_bound=lieb,
        lieb_bound_holds=bool(muf >= lieb * (1 - 1e-10) - 1e-12),
    )


def quadrant_partition(ctx) -> list[Domain]:
    """Four blocks splitting each axis at ceil(N/2)."""
    n = ctx.n
    half = (n + 1) // 2
    k = np.arange(n)[:, None] < half
    l = np.arange(n)[None, :] < half
    masks = [k & l, k & ~l, ~k & l, ~k & ~l]
    return [Domain(ctx, m | np.zeros((n, n), dtype=bool)) for m in masks]


def cell_partition(ctx) -> list[Domain]:
    """All N^2 singletons."""
    n = ctx.n
    out = []
    for k in range(n):
        for l in range(n):
            m = np.zeros((n, n), dtype=bool)
            m[k, l] = True
            out.append(Domain(ctx, m))
    return out

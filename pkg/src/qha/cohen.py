"""Cohen's class: quadratic shift-covariant distributions as operator convolutions.

Every kernel is stored as an operator A acting through

    Q_A(psi) = (psi (x) psi) * A-check = z -> <alpha_z(A) psi, psi>,

the convolution form of Cohen's class.  The function-side kernel (the one that
convolves against the Wigner distribution) is recovered on demand as the Weyl
symbol of A-check.  Positivity of the distribution, the total-energy constant,
the decomposition of positive unit-trace kernels into spectrograms, the
twisted-Gram positivity test, the concentration bound, and phase retrieval all
reduce to operator-side statements.

Kernel presets: ``spectrogram:<window>``, ``wigner``, ``born-jordan``, and
``custom:<file>`` (resolved by the CLI).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .context import PhasePoint, QhaContext, halfphase, same_context, symmetric_rep
from .convolutions import conv_op_op
from .errors import AllZero, ComplexKernel, NonHermitianKernel, NotRankOne, ZeroAmbiguity
from .fourier_wigner import fourier_wigner, inverse_fourier_wigner, weyl_symbol, zero_set
from .operators import (MixedState, OperatorMatrix, Signal, fix_phase, hermitian_eig,
                        is_positive, operator_norm, parity_check, parity_signal,
                        rank_one, signal_norm, trace)
from .phase_space import Domain, PhaseFn, constant_fn, measure, symplectic_fourier
from .tf_transforms import ambiguity

__all__ = [
    "CohenKernel",
    "CohenClassification",
    "cohen_distribution",
    "classify",
    "total_energy_check",
    "spectrogram_decomposition",
    "klm_check",
    "cohen_uncertainty",
    "CohenConcentration",
    "phase_retrieval",
    "kernel_function",
    "spectrogram_kernel",
    "wigner_kernel",
    "born_jordan_kernel",
]


@dataclass(frozen=True)
class CohenKernel:
    """Operator A defining the distribution Q_A(psi) = (psi (x) psi) * A-check."""

    op: OperatorMatrix
    label: str = "custom"

    @property
    def ctx(self) -> QhaContext:
        return self.op.ctx


@dataclass(frozen=True)
class CohenClassification:
    is_positive: bool
    energy_constant: float
    is_correct_energy: bool


def cohen_distribution(kernel: CohenKernel | MixedState, psi: Signal) -> PhaseFn:
    """Q(psi)(z) = <alpha_z(A) psi, psi>, evaluated as (psi (x) psi) * A-check."""
    op = kernel.op
    same_context(op, psi)
    return conv_op_op(rank_one(psi, psi), parity_check(op))


def classify(kernel: CohenKernel) -> CohenClassification:
    """Positivity and total-energy classification of the kernel operator.

    The distribution is pointwise non-negative iff the operator is positive,
    and integrates to ||psi||^2 tr(A); both properties together require a
    positive unit-trace operator (a mixed state).
    """
    op = kernel.op
    tr = trace(op)
    if abs(tr.imag) > op.ctx.zero_tol:
        raise NonHermitianKernel(f"kernel trace has imaginary part {tr.imag}")
    pos = is_positive(op)
    energy = float(tr.real)
    return CohenClassification(pos, energy, pos and abs(energy - 1.0) <= op.ctx.zero_tol)


def total_energy_check(kernel: CohenKernel | MixedState, psi: Signal) -> tuple[float, float]:
    """((1/N) sum_z Q(psi)(z), ||psi||^2 tr(A)); equal in the finite model."""
    q = cohen_distribution(kernel, psi)
    lhs = complex(q.values.sum() / q.ctx.n)
    rhs = signal_norm(psi) ** 2 * trace(kernel.op)
    return float(lhs.real), float(rhs.real)


def spectrogram_decomposition(state: MixedState) -> list[tuple[float, Signal]]:
    """Write Q_S as a convex combination of spectrograms.

    Eigendecomposing the operator side of the distribution, S-check =
    sum lambda_n v_n (x) v_n, the windows are phi_n = P v_n and

        Q_S(psi) = sum_n lambda_n |V_{phi_n} psi|^2

    pointwise, with sum lambda_n = tr(S) = 1.  Pairs with lambda_n below
    zero_tol are dropped.
    """
    spec = hermitian_eig(parity_check(state.op))
    out: list[tuple[float, Signal]] = []
    for lam, v in zip(spec.eigenvalues, spec.eigenvectors):
        if lam > state.ctx.zero_tol:
            out.append((float(lam), parity_signal(v)))
    return out


def klm_check(phi: PhaseFn, points: Sequence[PhasePoint]) -> tuple[bool, float]:
    """Positive-semidefiniteness of the twisted Gram matrix of F_sigma(phi).

    Builds M_jk = t(z_j, z_k) (F_sigma phi)(z_j - z_k) with the twist

        t(z_j, z_k) = e^{-2 pi i k_j l_j / N} e^{2 pi i l_k k_j / N} c(z_j - z_k),

    which makes M equal to the Gram matrix [tr(pi(z_j)^* pi(z_k) L_phi)]
    identically; for odd N the twist is diagonally congruent to
    e^{-2 pi i 2^{-1} sigma(z_j, z_k)/N}.  M is positive semidefinite for
    every tuple iff the Weyl transform of phi is a positive operator (taking
    the full grid as the tuple gives the converse direction).

    Requires a real-valued kernel function; returns (psd, min eigenvalue).
    """
    if not points:
        raise ValueError("need at least one point")
    ctx = phi.ctx
    for z in points:
        same_context(phi, z)
    top = np.abs(phi.values).max()
    if np.abs(phi.values.imag).max() > ctx.zero_tol * max(top, 1.0):
        raise ComplexKernel("kernel function is not real-valued")
    n = ctx.n
    c = halfphase(ctx)
    sf = symplectic_fourier(phi).values
    ks = np.array([z.k for z in points])
    ls = np.array([z.l for z in points])
    dk = (ks[:, None] - ks[None, :]) % n
    dl = (ls[:, None] - ls[None, :]) % n
    twist = (np.exp(-2j * np.pi * (ks * ls % n) / n)[:, None]
             * np.exp(2j * np.pi * ((ls[None, :] * ks[:, None]) % n) / n)
             * c[dk, dl])
    m = twist * sf[dk, dl]
    w = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
    scale = max(np.abs(m).max(), np.finfo(float).tiny)
    return bool(w.min() >= -ctx.zero_tol * scale), float(w.min())


@dataclass(frozen=True)
class CohenConcentration:
    """Concentration premise and measure bound for one (kernel, signal, domain)."""

    premise_value: float      # (1/N) sum_Omega |Q(psi)|
    kernel_norm: float        # ||A||_op
    epsilon: float
    premise_holds: bool       # premise_value >= (1 - eps) ||A||_op
    domain_measure: Fraction
    bound_holds: bool         # mu(Omega) >= 1 - eps, when the premise holds


def cohen_uncertainty(kernel: CohenKernel | MixedState, psi: Signal,
                      omega: Domain, eps: float) -> CohenConcentration:
    """Concentration forces measure: if (1/N) sum_Omega |Q(psi)| >= (1-eps) ||A||_op
    for a unit vector psi, then mu(Omega) >= 1 - eps.  Report only, no assertion."""
    same_context(kernel.op, psi, omega)
    q = cohen_distribution(kernel, psi)
    premise = float(np.abs(q.values[omega.mask]).sum() / q.ctx.n)
    norm = operator_norm(kernel.op)
    mu = measure(omega)
    holds = premise >= (1.0 - eps) * norm - 1e-12
    bound = (float(mu) >= 1.0 - eps - 1e-12) if holds else True
    return CohenConcentration(premise, norm, eps, bool(holds), mu, bool(bound))


def phase_retrieval(spec: PhaseFn, window: Signal) -> Signal:
    """Recover psi (up to a global phase) from its spectrogram |V_window psi|^2.

    Divides F_sigma(spec) by the spreading function of the window's reflected
    projection, synthesizes the rank-one operator psi (x) psi, symmetrizes
    against round-off, and returns the leading eigenvector scaled by the square
    root of the leading eigenvalue, phase-normalized.

    Raises ZeroAmbiguity when the window's ambiguity vanishes somewhere (the
    hypothesis of the uniqueness theorem fails) and NotRankOne when the
    recovered operator has a second eigenvalue above 1e-6 of the first (the
    input was not a spectrogram taken with this window).
    """
    ctx = same_context(spec, window)
    amb = ambiguity(window, window)
    try:
        bad = zero_set(amb, ctx.deconv_tol).mask.any()
    except AllZero:
        bad = True
    if bad:
        raise ZeroAmbiguity("window ambiguity has (near-)zeros; retrieval is not unique")
    wchk = parity_signal(window)
    denom = fourier_wigner(rank_one(wchk, wchk)).values
    g = symplectic_fourier(spec).values / denom
    t = inverse_fourier_wigner(PhaseFn(ctx, g)).entries
    t = (t + t.conj().T) / 2.0
    w, v = np.linalg.eigh(t)
    idx = np.argsort(-np.abs(w))
    lead, second = w[idx[0]], (w[idx[1]] if len(w) > 1 else 0.0)
    if lead <= 0 or abs(second) > 1e-6 * abs(lead):
        raise NotRankOne(
            f"recovered operator is not rank one (eigenvalues {lead:.3e}, {second:.3e})"
        )
    vec = fix_phase(v[:, idx[0]]) * np.sqrt(lead)
    return Signal(ctx, vec)


# ---------------------------------------------------------------------------
# kernel-side utilities and presets

def kernel_function(kernel: CohenKernel) -> PhaseFn:
    """Function-side kernel phi with L_phi = A-check: the Weyl symbol of A-check."""
    return weyl_symbol(parity_check(kernel.op))


def spectrogram_kernel(window: Signal) -> CohenKernel:
    """Kernel of the spectrogram with the given window: A = window (x) window."""
    return CohenKernel(rank_one(window, window), label="spectrogram")


def wigner_kernel(ctx: QhaContext) -> CohenKernel:
    """Kernel whose distribution is exactly the Wigner distribution.

    Constructed as the operator with constant spreading function (reflected),
    so that Q(psi) = F_sigma(A(psi, psi)) identically.  For odd N this
    operator is exactly the parity matrix P.
    """
    flat = inverse_fourier_wigner(constant_fn(ctx, 1.0))
    return CohenKernel(parity_check(flat), label="wigner")


def born_jordan_kernel(ctx: QhaContext) -> CohenKernel:
    """Finite stand-in for the Born-Jordan kernel.

    Theta(k, l) = sinc(x w) at x = k/sqrt(N), w = l/sqrt(N) on symmetric
    representatives; the kernel operator is the one whose reflected spreading
    function is Theta.  There is no canonical finite form; properties of this
    preset are reported, never asserted.
    """
    n = ctx.n
    ks = symmetric_rep(np.arange(n), n)[:, None]
    ls = symmetric_rep(np.arange(n), n)[None, :]
    theta = np.sinc(ks * ls / n).astype(complex)  # np.sinc(x) = sin(pi x)/(pi x)
    op = inverse_fourier_wigner(PhaseFn(ctx, theta))
    return CohenKernel(parity_check(op), label="born-jordan")

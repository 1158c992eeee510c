"""Fourier-Wigner transform, Weyl calculus, and constructive deconvolution.

The Fourier-Wigner transform expands an operator over the time-frequency
shifts:  F_W(S)(z) = c(z) tr(pi(z)^* S)  with the half-phase c from
:mod:`qha.context`, and the synthesis  S = (1/N) sum_z conj(c(z)) F(z) pi(z)
inverts it exactly.  It is a unitary onto the weighted L^2 of the grid and
interacts with both convolutions through exact product formulas:

    F_sigma(S * T) = F_W(S) F_W(T)
    F_W(f * S)     = F_sigma(f) F_W(S)

The Weyl symbol is a_S = F_sigma(F_W(S)); it is real exactly when S is
Hermitian.  Because the grid is finite, the uniqueness theorems for operator
convolutions become algorithms: when F_W(S) has an empty zero set, a mask f is
recovered from H = f * S by pointwise division in the spreading domain.
"""

from __future__ import annotations

import numpy as np

from .context import QhaContext, halfphase, same_context
from .errors import AllZero, ZeroSpreading
from .operators import OperatorMatrix
from .phase_space import Domain, PhaseFn, fn_convolve, symplectic_fourier

__all__ = [
    "fourier_wigner",
    "inverse_fourier_wigner",
    "weyl_transform",
    "weyl_symbol",
    "weyl_symbol_of_filter",
    "zero_set",
    "deconvolve_mask",
]


def fourier_wigner(s: OperatorMatrix) -> PhaseFn:
    """F_W(S)(k, l) = c(k, l) tr(pi(k, l)^* S).

    tr(pi(z)^* S) collects the k-th circular diagonal of S against a frequency
    character, so each row is one FFT.
    """
    n = s.ctx.n
    rows = np.arange(n)
    # diag[k, m] = S[m, (m-k)%N]
    diag = s.entries[rows[None, :], (rows[None, :] - rows[:, None]) % n]
    return PhaseFn(s.ctx, halfphase(s.ctx) * np.fft.fft(diag, axis=1))


def inverse_fourier_wigner(f: PhaseFn) -> OperatorMatrix:
    """Synthesis S = (1/N) sum_z conj(c(z)) F(z) pi(z); exact two-sided inverse."""
    n = f.ctx.n
    g = f.values * halfphase(f.ctx).conj()
    diag = np.fft.ifft(g, axis=1)  # diag[k, m] = S[m, (m-k)%N]
    rows = np.arange(n)
    s = np.empty((n, n), dtype=complex)
    s[rows[None, :], (rows[None, :] - rows[:, None]) % n] = diag
    return OperatorMatrix(f.ctx, s)


def weyl_transform(a: PhaseFn) -> OperatorMatrix:
    """Operator with Weyl symbol a: L_a = F_W^{-1}(F_sigma(a))."""
    return inverse_fourier_wigner(symplectic_fourier(a))


def weyl_symbol(s: OperatorMatrix) -> PhaseFn:
    """a_S = F_sigma(F_W(S)); real-valued exactly when S is Hermitian."""
    return symplectic_fourier(fourier_wigner(s))


def weyl_symbol_of_filter(f: PhaseFn, s: OperatorMatrix) -> PhaseFn:
    """Weyl symbol of f * S, computed on the function side as f * a_S."""
    same_context(f, s)
    return fn_convolve(f, weyl_symbol(s))


def zero_set(f: PhaseFn, tol: float) -> Domain:
    """Points where |F| <= tol * max |F|.

    An empty zero set is the finite form of the nowhere-vanishing hypothesis
    under which masks and domains are uniquely determined by their filters.
    """
    if tol < 0:
        raise ValueError(f"threshold must be >= 0, got {tol}")
    a = np.abs(f.values)
    top = a.max()
    if top == 0.0:
        raise AllZero("function is identically zero")
    return Domain(f.ctx, a <= tol * top)


def deconvolve_mask(h: OperatorMatrix, s: OperatorMatrix) -> PhaseFn:
    """Recover f from H = f * S by spectral division.

    Uses F_W(H) = F_sigma(f) F_W(S): divide pointwise, then apply F_sigma once
    more.  Refuses (ZeroSpreading) when |F_W(S)| dips below deconv_tol times
    its maximum anywhere, since uniqueness genuinely fails on zero sets and
    regularizing would fabricate a mask.
    """
    ctx = same_context(h, s)
    fs = fourier_wigner(s)
    if zero_set(fs, ctx.deconv_tol).mask.any():
        raise ZeroSpreading(
            "spreading function of the state has (near-)zeros; mask is not unique"
        )
    ratio = fourier_wigner(h).values / fs.values
    return symplectic_fourier(PhaseFn(ctx, ratio))

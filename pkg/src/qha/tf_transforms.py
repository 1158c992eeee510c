"""Signal-level time-frequency transforms: STFT, ambiguity, Wigner, spectrogram.

Each transform here has an operator-side twin (Fourier-Wigner transform, Weyl
symbol, operator convolution of rank-one projections); agreement of the two
routes is the main test surface of the package.

Window presets
--------------
``gaussian``
    Periodized Gaussian, normalized.  For odd N this is the classical
    g(n) ~ sum_j exp(-pi (n + jN)^2 / N), whose ambiguity function has no
    zeros on the grid.  For even N *every real window* has forced ambiguity
    zeros (A(g, g)(N/2, l) telescopes to (1 + (-1)^l)/2 times a half-period
    sum), so the preset uses the squeezed complex-width Gaussian
    g(n) ~ sum_j exp(-pi (1 + i/2)(n + jN)^2 / N) instead, which is zero-free
    at the grid sides where deconvolution and retrieval are exercised.
    Zero-freeness is always re-verified at runtime via ``zero_set``.
``impulse``
    The basis vector e_0; its ambiguity vanishes off the k = 0 row, the
    standard counterexample for uniqueness preconditions.
``flat``
    Constant amplitude 1/sqrt(N).
"""

from __future__ import annotations

import numpy as np

from .context import QhaContext, halfphase, same_context
from .operators import Signal
from .phase_space import PhaseFn, symplectic_fourier

__all__ = [
    "stft",
    "ambiguity",
    "wigner",
    "spectrogram",
    "gaussian_window",
    "impulse_window",
    "flat_window",
    "window_preset",
    "WINDOW_PRESETS",
]


def stft(psi: Signal, phi: Signal) -> PhaseFn:
    """V_phi psi(z) = <psi, pi(z) phi>, one FFT per time shift k."""
    ctx = same_context(psi, phi)
    n = ctx.n
    rows = np.arange(n)
    # prod[k, n] = psi(n) conj(phi(n-k)); V[k, l] = sum_n prod[k, n] e^{-2 pi i l n/N}
    prod = psi.values[None, :] * phi.values.conj()[(rows[None, :] - rows[:, None]) % n]
    return PhaseFn(ctx, np.fft.fft(prod, axis=1))


def ambiguity(psi: Signal, phi: Signal) -> PhaseFn:
    """A(psi, phi) = c(z) V_phi psi(z); equals the Fourier-Wigner transform of
    the rank-one operator psi (x) phi."""
    ctx = same_context(psi, phi)
    return PhaseFn(ctx, halfphase(ctx) * stft(psi, phi).values)


def wigner(psi: Signal, phi: Signal) -> PhaseFn:
    """Cross-Wigner distribution W(psi, phi) = F_sigma(A(psi, phi)).

    W(psi, psi) is real and coincides with the Weyl symbol of psi (x) psi.
    """
    return symplectic_fourier(ambiguity(psi, phi))


def spectrogram(psi: Signal, phi: Signal) -> PhaseFn:
    """|V_phi psi|^2 as a real non-negative phase-space function."""
    v = stft(psi, phi).values
    return PhaseFn(psi.ctx, (v * v.conj()).real.astype(complex))


def gaussian_window(ctx: QhaContext) -> Signal:
    """Normalized periodized Gaussian (complex-width for even N, see module docs)."""
    n = ctx.n
    alpha = 1.0 if n % 2 == 1 else 1.0 + 0.5j
    idx = np.arange(n)
    g = np.zeros(n, dtype=complex)
    for j in range(-6, 7):
        g += np.exp(-np.pi * alpha * (idx + j * n) ** 2 / n)
    return Signal(ctx, g / np.linalg.norm(g))


def impulse_window(ctx: QhaContext) -> Signal:
    v = np.zeros(ctx.n, dtype=complex)
    v[0] = 1.0
    return Signal(ctx, v)


def flat_window(ctx: QhaContext) -> Signal:
    return Signal(ctx, np.full(ctx.n, 1.0 / np.sqrt(ctx.n), dtype=complex))


WINDOW_PRESETS = {
    "gaussian": gaussian_window,
    "impulse": impulse_window,
    "flat": flat_window,
}


def window_preset(ctx: QhaContext, name: str) -> Signal:
    try:
        return WINDOW_PRESETS[name](ctx)
    except KeyError:
        raise ValueError(
            f"unknown window preset {name!r}; expected one of {sorted(WINDOW_PRESETS)}"
        ) from None

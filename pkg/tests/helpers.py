"""Naive reference implementations used as oracles.

Everything here is written as explicit loops straight from the defining
formulas, independent of the FFT- and index-trick paths in the package.
"""

import numpy as np

from qha.context import halfphase


def naive_shift_matrix(n: int, k: int, l: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            if (a - k) % n == b:
                m[a, b] = np.exp(2j * np.pi * l * a / n)
    return m


def naive_symplectic_fourier(values: np.ndarray) -> np.ndarray:
    n = values.shape[0]
    out = np.zeros((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            acc = 0.0 + 0.0j
            for kp in range(n):
                for lp in range(n):
                    sig = (l * kp - lp * k) % n
                    acc += values[kp, lp] * np.exp(-2j * np.pi * sig / n)
            out[k, l] = acc / n
    return out


def naive_fn_convolve(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    n = f.shape[0]
    out = np.zeros((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            acc = 0.0 + 0.0j
            for kp in range(n):
                for lp in range(n):
                    acc += f[kp, lp] * g[(k - kp) % n, (l - lp) % n]
            out[k, l] = acc / n
    return out


def naive_conv_fn_op(f: np.ndarray, s: np.ndarray) -> np.ndarray:
    n = f.shape[0]
    out = np.zeros((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            pi = naive_shift_matrix(n, k, l)
            out += f[k, l] * (pi @ s @ pi.conj().T)
    return out / n


def naive_conv_op_op(s: np.ndarray, t: np.ndarray) -> np.ndarray:
    n = s.shape[0]
    p = naive_shift_matrix(n, 0, 0) * 0
    for a in range(n):
        p[a, (-a) % n] = 1.0
    tc = p @ t @ p
    out = np.zeros((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            pi = naive_shift_matrix(n, k, l)
            out[k, l] = np.trace(s @ pi @ tc @ pi.conj().T)
    return out


def naive_fourier_wigner(ctx, s: np.ndarray) -> np.ndarray:
    n = s.shape[0]
    c = halfphase(ctx)
    out = np.zeros((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            pi = naive_shift_matrix(n, k, l)
            out[k, l] = c[k, l] * np.trace(pi.conj().T @ s)
    return out


def naive_stft(psi: np.ndarray, phi: np.ndarray) -> np.ndarray:
    n = psi.shape[0]
    out = np.zeros((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            pi = naive_shift_matrix(n, k, l)
            out[k, l] = np.vdot(pi @ phi, psi)
    return out

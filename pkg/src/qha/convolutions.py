"""The two convolutions mixing functions and operators.

A function f convolves with an operator S to give an operator, and two
operators convolve to give a function on phase space:

    f * S = (1/N) sum_z f(z) alpha_z(S)
    (S * T)(z) = tr(S alpha_z(T-check))

Both carry the 1/N weight internally, which makes the unit identities exact:
1 * S = tr(S) I and I * S = tr(S) 1, and the average of z -> tr(S alpha_z T)
equals tr(S) tr(T) (the finite Moyal identity).  Positivity is preserved in
both directions.

The operator-operator convolution is evaluated from its trace definition (a
shifted-diagonal reduction, O(N^3) total), deliberately independent of the
Fourier-Wigner product formula so the two routes can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .context import same_context
from .errors import InvalidExponents
from .operators import OperatorMatrix, parity_check, schatten_norm
from .phase_space import PhaseFn, fn_norm

__all__ = ["conv_fn_op", "conv_op_op", "young_norm_report", "YoungReport"]


def conv_fn_op(f: PhaseFn, s: OperatorMatrix) -> OperatorMatrix:
    """f * S = (1/N) sum_z f(z) pi(z) S pi(z)^*.

    Linear in both arguments; maps non-negative f and positive S to a positive
    operator; f = 1 with tr(S) = 1 gives the identity.
    """
    ctx = same_context(f, s)
    n = ctx.n
    # (f*S)[a, b] = sum_k fhat[k, (a-b)%N] * S[(a-k)%N, (b-k)%N]
    # with fhat[k, d] = (1/N) sum_l f(k, l) e^{2 pi i l d / N}.
    fhat = np.fft.ifft(f.values, axis=1)
    didx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    out = np.zeros((n, n), dtype=complex)
    for k in range(n):
        out += fhat[k][didx] * np.roll(s.entries, (k, k), axis=(0, 1))
    return OperatorMatrix(ctx, out)


def conv_op_op(s: OperatorMatrix, t: OperatorMatrix) -> PhaseFn:
    """(S * T)(z) = tr(S alpha_z(T-check)); commutative, positive for positive inputs.

    For rank-one arguments this is the (cross-)spectrogram.
    """
    ctx = same_context(s, t)
    n = ctx.n
    tc = parity_check(t).entries
    st = s.entries.T
    out = np.empty((n, n), dtype=complex)
    rows = np.arange(n)
    for k in range(n):
        c = np.roll(tc, (k, k), axis=(0, 1)) * st
        # g[d] = sum_n c[(n+d)%N, n]; then (S*T)(k, l) = sum_d g[d] e^{2 pi i l d/N}
        g = np.array([c[(rows + d) % n, rows].sum() for d in range(n)])
        out[k] = n * np.fft.ifft(g)
    return PhaseFn(ctx, out)


@dataclass(frozen=True)
class YoungReport:
    """Both sides of the two Young inequalities at one exponent triple."""

    p: float
    q: float
    r: float
    fn_op_lhs: float     # ||f * T||_{S^r}
    fn_op_rhs: float     # ||f||_p ||T||_{S^q}
    op_op_lhs: float     # ||S * T||_{L^r}
    op_op_rhs: float     # ||S||_{S^p} ||T||_{S^q}
    holds: bool


def _validate_young(p: float, q: float, r: float) -> None:
    for e in (p, q, r):
        if not (e >= 1):
            raise InvalidExponents(f"exponents must lie in [1, inf], got {e}")
    inv = lambda e: 0.0 if np.isinf(e) else 1.0 / e
    if abs(inv(p) + inv(q) - 1.0 - inv(r)) > 1e-12:
        raise InvalidExponents(f"1/{p} + 1/{q} != 1 + 1/{r}")


def young_norm_report(f: PhaseFn, s: OperatorMatrix, t: OperatorMatrix,
                      p: float, q: float, r: float) -> YoungReport:
    """Evaluate ||f*T||_{S^r} <= ||f||_p ||T||_{S^q} and the operator-operator
    counterpart ||S*T||_{L^r} <= ||S||_{S^p} ||T||_{S^q} on concrete inputs."""
    _validate_young(p, q, r)
    same_context(f, s, t)
    lhs1 = schatten_norm(conv_fn_op(f, t), r)
    rhs1 = fn_norm(f, p) * schatten_norm(t, q)
    lhs2 = fn_norm(conv_op_op(s, t), r)
    rhs2 = schatten_norm(s, p) * schatten_norm(t, q)
    slack = 1e-12
    ok = lhs1 <= rhs1 * (1 + 1e-10) + slack and lhs2 <= rhs2 * (1 + 1e-10) + slack
    return YoungReport(p, q, r, lhs1, rhs1, lhs2, rhs2, bool(ok))

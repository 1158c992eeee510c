"""Ambient grid context and phase-space points.

Phase space is the finite grid Z_N x Z_N carrying the counting measure with
weight 1/N per point, so the full grid has measure N.  Every object in the
package is bound to one :class:`QhaContext`; mixing contexts raises
:class:`~qha.errors.ContextMismatch`.

The context also owns the half-phase table ``halfphase(ctx)`` used by the
Fourier-Wigner module.  The half-phase c(k, l) is a square root of the
N-periodic character e^{2 pi i k l / N}, chosen on each grid so that

* c(z)^2 = e^{2 pi i k l / N}        (required by the product formulas), and
* c(-z) = c(z)                       (required so Hermitian operators have
                                      real Weyl symbols).

For odd N the unique N-periodic choice is c = e^{2 pi i 2^{-1} k l / N} with
2^{-1} the inverse of 2 mod N.  For even N no N-periodic square root exists;
we evaluate e^{pi i k l / N} on symmetric representatives in (-N/2, N/2] and
patch the self-paired boundary lines k = N/2, l = N/2 (where only the two
conditions above constrain the value, not a closed form).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ContextMismatch

__all__ = ["QhaContext", "PhasePoint", "halfphase", "same_context", "symmetric_rep"]


@dataclass(frozen=True)
class QhaContext:
    """Grid side N plus the numerical tolerances used by every downstream check.

    ``zero_tol`` is the generic "is it zero" tolerance (Hermiticity, positivity
    floors, trace checks).  ``deconv_tol`` is the relative threshold below which
    a spreading-function value counts as a zero for deconvolution purposes.
    """

    n: int
    zero_tol: float = 1e-10
    deconv_tol: float = 1e-8

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"grid side must be >= 2, got {self.n}")
        if self.zero_tol < 0 or self.deconv_tol < 0:
            raise ValueError("tolerances must be non-negative")


@dataclass(frozen=True)
class PhasePoint:
    """A point z = (k, l) of Z_N x Z_N, stored as canonical representatives."""

    ctx: QhaContext
    k: int
    l: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", int(self.k) % self.ctx.n)
        object.__setattr__(self, "l", int(self.l) % self.ctx.n)

    def __add__(self, other: "PhasePoint") -> "PhasePoint":
        same_context(self, other)
        return PhasePoint(self.ctx, self.k + other.k, self.l + other.l)

    def __sub__(self, other: "PhasePoint") -> "PhasePoint":
        same_context(self, other)
        return PhasePoint(self.ctx, self.k - other.k, self.l - other.l)

    def __neg__(self) -> "PhasePoint":
        return PhasePoint(self.ctx, -self.k, -self.l)


def same_context(*objs) -> QhaContext:
    """Return the shared context of the operands or raise ContextMismatch."""
    ctx = objs[0].ctx
    for o in objs[1:]:
        if o.ctx != ctx:
            raise ContextMismatch(f"contexts differ: {ctx} vs {o.ctx}")
    return ctx


def symmetric_rep(idx: np.ndarray, n: int) -> np.ndarray:
    """Map canonical indices to representatives in (-n/2, n/2]."""
    half = (n - 1) // 2 if n % 2 == 1 else n // 2 - 1
    return (np.asarray(idx) + half) % n - half


@lru_cache(maxsize=32)
def _halfphase_table(n: int) -> np.ndarray:
    k = np.arange(n)[:, None]
    l = np.arange(n)[None, :]
    if n % 2 == 1:
        tau = (n + 1) // 2  # 2^{-1} mod n
        c = np.exp(2j * np.pi * ((tau * k * l) % n) / n)
    else:
        ks = symmetric_rep(k, n)
        ls = symmetric_rep(l, n)
        c = np.exp(1j * np.pi * ks * ls / n)
        kb = ks == n // 2
        lb = ls == n // 2
        # boundary lines: value only needs c^2 = e^{2 pi i kl/N}, c(-z) = c(z)
        c = np.where(kb & ~lb, np.exp(1j * np.pi * np.abs(ls) / 2), c)
        c = np.where(lb & ~kb, np.exp(1j * np.pi * np.abs(ks) / 2), c)
        c = np.where(kb & lb, np.exp(1j * np.pi * n / 4), c)
    c.setflags(write=False)
    return c


def halfphase(ctx: QhaContext) -> np.ndarray:
    """N x N table of the half-phase c(k, l); read-only, cached per grid side."""
    return _halfphase_table(ctx.n)

"""Functions on the phase-space grid: symplectic structure, Fourier transform,
translation, convolution, and boolean domains with their measure.

Conventions.  A :class:`PhaseFn` stores complex values F(k, l) with k the time
index and l the frequency index.  All integrals are weighted sums with weight
1/N per grid point, so the p-norm is ((1/N) sum |F|^p)^{1/p} and the constant
function 1 has total mass N.  Under this normalization the symplectic Fourier
transform is an involutive isometry and every convolution identity below holds
exactly (up to round-off).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .context import PhasePoint, QhaContext, same_context
from .errors import ContextMismatch, InvalidExponents

__all__ = [
    "PhaseFn",
    "Domain",
    "phase_fn",
    "constant_fn",
    "delta_fn",
    "indicator",
    "full_domain",
    "empty_domain",
    "symplectic_form",
    "symplectic_fourier",
    "translate",
    "check_fn",
    "fn_convolve",
    "fn_norm",
    "total_mass",
    "measure",
    "translate_domain",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PhaseFn:
    """Complex function on Z_N x Z_N, indexed values[k, l]."""

    ctx: QhaContext
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.ctx.n, self.ctx.n):
            raise ValueError(f"expected shape {(self.ctx.n,) * 2}, got {v.shape}")
        object.__setattr__(self, "values", _freeze(v))

    def __call__(self, z: PhasePoint) -> complex:
        same_context(self, z)
        return complex(self.values[z.k, z.l])


@dataclass(frozen=True)
class Domain:
    """Boolean mask on the grid; measure is |{mask}| / N."""

    ctx: QhaContext
    mask: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.mask, dtype=bool)
        if m.shape != (self.ctx.n, self.ctx.n):
            raise ValueError(f"expected shape {(self.ctx.n,) * 2}, got {m.shape}")
        object.__setattr__(self, "mask", _freeze(m))

    def complement(self) -> "Domain":
        return Domain(self.ctx, ~self.mask)


def phase_fn(ctx: QhaContext, values) -> PhaseFn:
    return PhaseFn(ctx, values)


def constant_fn(ctx: QhaContext, value: complex = 1.0) -> PhaseFn:
    return PhaseFn(ctx, np.full((ctx.n, ctx.n), value, dtype=complex))


def delta_fn(ctx: QhaContext, z: PhasePoint, amplitude: complex = 1.0) -> PhaseFn:
    """Point mass at z.  With amplitude N it is the unit of fn_convolve."""
    if z.ctx != ctx:
        raise ContextMismatch(f"contexts differ: {ctx} vs {z.ctx}")
    v = np.zeros((ctx.n, ctx.n), dtype=complex)
    v[z.k, z.l] = amplitude
    return PhaseFn(ctx, v)


def indicator(omega: Domain) -> PhaseFn:
    return PhaseFn(omega.ctx, omega.mask.astype(complex))


def full_domain(ctx: QhaContext) -> Domain:
    return Domain(ctx, np.ones((ctx.n, ctx.n), dtype=bool))


def empty_domain(ctx: QhaContext) -> Domain:
    return Domain(ctx, np.zeros((ctx.n, ctx.n), dtype=bool))


def symplectic_form(z: PhasePoint, zp: PhasePoint) -> int:
    """sigma(z, z') = (l k' - l' k) mod N for z = (k, l), z' = (k', l')."""
    same_context(z, zp)
    n = z.ctx.n
    return (z.l * zp.k - zp.l * z.k) % n


def symplectic_fourier(f: PhaseFn) -> PhaseFn:
    """(F_sigma F)(z) = (1/N) sum_{z'} F(z') e^{-2 pi i sigma(z, z')/N}.

    Involutive: applying twice returns F exactly.  Computed as a pair of 1-D
    FFTs (forward in k', inverse in l') followed by an axis swap.
    """
    v = np.fft.fft(np.fft.ifft(f.values, axis=1), axis=0).T
    return PhaseFn(f.ctx, v)


def translate(f: PhaseFn, z0: PhasePoint) -> PhaseFn:
    """(T_{z0} F)(z) = F(z - z0)."""
    same_context(f, z0)
    return PhaseFn(f.ctx, np.roll(f.values, (z0.k, z0.l), axis=(0, 1)))


def check_fn(f: PhaseFn) -> PhaseFn:
    """Reflection F(z) -> F(-z); an involution."""
    n = f.ctx.n
    idx = (-np.arange(n)) % n
    return PhaseFn(f.ctx, f.values[np.ix_(idx, idx)])


def fn_convolve(f: PhaseFn, g: PhaseFn) -> PhaseFn:
    """(F * G)(z) = (1/N) sum_{z'} F(z') G(z - z'); commutative.

    The weight makes N * delta_0 the convolution unit and turns the symplectic
    Fourier transform into an algebra homomorphism:
    F_sigma(F * G) = F_sigma(F) . F_sigma(G) pointwise.
    """
    ctx = same_context(f, g)
    n = ctx.n
    prod = np.fft.fft2(f.values) * np.fft.fft2(g.values)
    return PhaseFn(ctx, np.fft.ifft2(prod) / n)


def fn_norm(f: PhaseFn, p: float) -> float:
    """Weighted p-norm ((1/N) sum |F|^p)^{1/p}; max |F| for p = inf."""
    if p < 1:
        raise InvalidExponents(f"p must be >= 1, got {p}")
    a = np.abs(f.values)
    if np.isinf(p):
        return float(a.max())
    return float(((a**p).sum() / f.ctx.n) ** (1.0 / p))


def total_mass(f: PhaseFn) -> complex:
    """(1/N) sum_z F(z)."""
    return complex(f.values.sum() / f.ctx.n)


def measure(omega: Domain) -> Fraction:
    """mu(Omega) = |Omega| / N, exactly, as a rational number."""
    return Fraction(int(omega.mask.sum()), omega.ctx.n)


def translate_domain(omega: Domain, z0: PhasePoint) -> Domain:
    """Omega + z0 = { z + z0 : z in Omega }."""
    same_context(omega, z0)
    return Domain(omega.ctx, np.roll(omega.mask, (z0.k, z0.l), axis=(0, 1)))

"""Seeded random fixtures shared by the self-test command, the demos and the
test suite.  All draws go through numpy's PCG64 generator so a single 64-bit
seed reproduces every fixture bit for bit.
"""

from __future__ import annotations

import numpy as np

from .context import QhaContext
from .operators import MixedState, OperatorMatrix, Signal
from .phase_space import Domain, PhaseFn

__all__ = [
    "make_rng",
    "random_signal",
    "random_unit_signal",
    "random_phase_fn",
    "random_real_mask",
    "random_operator",
    "random_hermitian",
    "random_mixed_state",
    "random_domain",
]


def make_rng(seed: int | None) -> np.random.Generator:
    return np.random.default_rng(seed)


def _cgauss(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_signal(ctx: QhaContext, rng: np.random.Generator) -> Signal:
    return Signal(ctx, _cgauss(rng, ctx.n))


def random_unit_signal(ctx: QhaContext, rng: np.random.Generator) -> Signal:
    v = _cgauss(rng, ctx.n)
    return Signal(ctx, v / np.linalg.norm(v))


def random_phase_fn(ctx: QhaContext, rng: np.random.Generator, real: bool = False) -> PhaseFn:
    if real:
        return PhaseFn(ctx, rng.normal(size=(ctx.n, ctx.n)).astype(complex))
    return PhaseFn(ctx, _cgauss(rng, (ctx.n, ctx.n)))


def random_real_mask(ctx: QhaContext, rng: np.random.Generator) -> PhaseFn:
    """Real mask with entries uniform in [-1, 1]."""
    return PhaseFn(ctx, rng.uniform(-1.0, 1.0, size=(ctx.n, ctx.n)).astype(complex))


def random_operator(ctx: QhaContext, rng: np.random.Generator, scale: float = 1.0) -> OperatorMatrix:
    return OperatorMatrix(ctx, scale * _cgauss(rng, (ctx.n, ctx.n)))


def random_hermitian(ctx: QhaContext, rng: np.random.Generator) -> OperatorMatrix:
    a = _cgauss(rng, (ctx.n, ctx.n))
    return OperatorMatrix(ctx, (a + a.conj().T) / 2.0)


def random_mixed_state(ctx: QhaContext, rng: np.random.Generator,
                       rank: int | None = None) -> MixedState:
    """Normalized Wishart state of the given rank (full rank when omitted)."""
    r = ctx.n if rank is None else max(1, min(rank, ctx.n))
    b = _cgauss(rng, (ctx.n, r))
    a = b @ b.conj().T
    a /= np.trace(a).real
    a = (a + a.conj().T) / 2.0
    return MixedState(OperatorMatrix(ctx, a))


def random_domain(ctx: QhaContext, rng: np.random.Generator, p: float = 0.5) -> Domain:
    return Domain(ctx, rng.random((ctx.n, ctx.n)) < p)

"""Finite model of bounded operators on L^2: dense N x N matrices.

Signals are complex vectors of length N with the unweighted 2-norm.  The
time-frequency shift pi(k, l) = M_l T_k acts by
(pi(k, l) psi)(n) = e^{2 pi i l n / N} psi(n - k), and conjugation by pi(z)
is the operator analogue of translating a function.  Schatten norms, the
Hermitian eigendecomposition (with deterministic tie-breaking) and positivity
tests live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .context import PhasePoint, QhaContext, same_context
from .errors import ContextMismatch, InvalidExponents, NotHermitian, NotMixedState

__all__ = [
    "Signal",
    "OperatorMatrix",
    "MixedState",
    "Spectrum",
    "signal",
    "basis_vector",
    "signal_norm",
    "inner",
    "operator",
    "identity",
    "zero_operator",
    "parity_matrix",
    "tf_shift",
    "apply_shift",
    "conjugate_shift",
    "parity_check",
    "parity_signal",
    "rank_one",
    "trace",
    "adjoint",
    "operator_norm",
    "schatten_norm",
    "is_hermitian",
    "hermitian_eig",
    "is_positive",
    "fix_phase",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Signal:
    """Complex vector of length N; the finite stand-in for an L^2 function."""

    ctx: QhaContext
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.ctx.n,):
            raise ValueError(f"expected shape ({self.ctx.n},), got {v.shape}")
        object.__setattr__(self, "values", _freeze(v))


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense complex N x N matrix; the finite stand-in for a trace-class operator."""

    ctx: QhaContext
    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=complex)
        if m.shape != (self.ctx.n, self.ctx.n):
            raise ValueError(f"expected shape {(self.ctx.n,) * 2}, got {m.shape}")
        object.__setattr__(self, "entries", _freeze(m))


@dataclass(frozen=True)
class MixedState:
    """Positive unit-trace operator; validated on construction."""

    op: OperatorMatrix

    def __post_init__(self) -> None:
        a = self.op.entries
        tol = self.op.ctx.zero_tol
        if np.abs(a - a.conj().T).max() > tol:
            raise NotMixedState("operator is not Hermitian")
        if abs(np.trace(a) - 1.0) > tol:
            raise NotMixedState(f"trace is {np.trace(a)}, expected 1")
        w = np.linalg.eigvalsh(a)
        if w.min() < -tol * np.abs(w).max():
            raise NotMixedState(f"minimum eigenvalue {w.min()} below tolerance")

    @property
    def ctx(self) -> QhaContext:
        return self.op.ctx


@dataclass(frozen=True)
class Spectrum:
    """Descending real eigenvalues with aligned orthonormal eigenvectors."""

    ctx: QhaContext
    eigenvalues: np.ndarray
    eigenvectors: tuple  # of Signal, aligned with eigenvalues

    def reconstruct(self) -> OperatorMatrix:
        n = self.ctx.n
        a = np.zeros((n, n), dtype=complex)
        for lam, v in zip(self.eigenvalues, self.eigenvectors):
            a += lam * np.outer(v.values, v.values.conj())
        return OperatorMatrix(self.ctx, a)


def signal(ctx: QhaContext, values) -> Signal:
    return Signal(ctx, values)


def basis_vector(ctx: QhaContext, i: int) -> Signal:
    v = np.zeros(ctx.n, dtype=complex)
    v[i % ctx.n] = 1.0
    return Signal(ctx, v)


def signal_norm(psi: Signal) -> float:
    return float(np.linalg.norm(psi.values))


def inner(psi: Signal, phi: Signal) -> complex:
    """<psi, phi> = sum psi(n) conj(phi(n)); antilinear in the second slot."""
    same_context(psi, phi)
    return complex(np.vdot(phi.values, psi.values))


def operator(ctx: QhaContext, entries) -> OperatorMatrix:
    return OperatorMatrix(ctx, entries)


def identity(ctx: QhaContext) -> OperatorMatrix:
    return OperatorMatrix(ctx, np.eye(ctx.n, dtype=complex))


def zero_operator(ctx: QhaContext) -> OperatorMatrix:
    return OperatorMatrix(ctx, np.zeros((ctx.n, ctx.n), dtype=complex))


def parity_matrix(ctx: QhaContext) -> OperatorMatrix:
    """P with (P psi)(n) = psi(-n mod N)."""
    n = ctx.n
    p = np.zeros((n, n), dtype=complex)
    p[np.arange(n), (-np.arange(n)) % n] = 1.0
    return OperatorMatrix(ctx, p)


def tf_shift(ctx: QhaContext, z: PhasePoint) -> OperatorMatrix:
    """Unitary pi(z) with entries M[n, m] = e^{2 pi i l n / N} [n - k = m mod N]."""
    if z.ctx != ctx:
        raise ContextMismatch(f"contexts differ: {ctx} vs {z.ctx}")
    n = ctx.n
    rows = np.arange(n)
    m = np.zeros((n, n), dtype=complex)
    m[rows, (rows - z.k) % n] = np.exp(2j * np.pi * z.l * rows / n)
    return OperatorMatrix(ctx, m)


def apply_shift(z: PhasePoint, psi: Signal) -> Signal:
    """pi(z) psi without forming the matrix."""
    same_context(z, psi)
    n = psi.ctx.n
    rows = np.arange(n)
    v = np.exp(2j * np.pi * z.l * rows / n) * psi.values[(rows - z.k) % n]
    return Signal(psi.ctx, v)


def conjugate_shift(a: OperatorMatrix, z: PhasePoint) -> OperatorMatrix:
    """alpha_z(A) = pi(z) A pi(z)^*; satisfies alpha_z alpha_{z'} = alpha_{z+z'} exactly.

    Computed index-wise: alpha_z(A)[n, m] = e^{2 pi i l (n-m)/N} A[n-k, m-k].
    """
    same_context(a, z)
    n = a.ctx.n
    d = np.arange(n)
    phase = np.exp(2j * np.pi * z.l * d / n)
    shifted = np.roll(a.entries, (z.k, z.k), axis=(0, 1))
    return OperatorMatrix(a.ctx, phase[:, None] * shifted * phase.conj()[None, :])


def parity_check(a: OperatorMatrix) -> OperatorMatrix:
    """A-check = P A P; an involution preserving positivity, trace and norms."""
    n = a.ctx.n
    idx = (-np.arange(n)) % n
    return OperatorMatrix(a.ctx, a.entries[np.ix_(idx, idx)])


def parity_signal(psi: Signal) -> Signal:
    """psi-check(n) = psi(-n mod N)."""
    n = psi.ctx.n
    return Signal(psi.ctx, psi.values[(-np.arange(n)) % n])


def rank_one(psi: Signal, phi: Signal) -> OperatorMatrix:
    """psi (x) phi with entries M[i, j] = psi(i) conj(phi(j)); trace <psi, phi>."""
    ctx = same_context(psi, phi)
    return OperatorMatrix(ctx, np.outer(psi.values, phi.values.conj()))


def trace(a: OperatorMatrix) -> complex:
    return complex(np.trace(a.entries))


def adjoint(a: OperatorMatrix) -> OperatorMatrix:
    return OperatorMatrix(a.ctx, a.entries.conj().T)


def operator_norm(a: OperatorMatrix) -> float:
    return schatten_norm(a, np.inf)


def schatten_norm(a: OperatorMatrix, p: float) -> float:
    """l^p norm of the singular values; operator norm for p = inf.

    Always via the full SVD: one code path, N is small.
    """
    if p < 1:
        raise InvalidExponents(f"Schatten exponent must be >= 1, got {p}")
    s = np.linalg.svd(a.entries, compute_uv=False)
    if np.isinf(p):
        return float(s.max()) if s.size else 0.0
    return float((s**p).sum() ** (1.0 / p))


def is_hermitian(a: OperatorMatrix) -> bool:
    return bool(np.abs(a.entries - a.entries.conj().T).max() <= a.ctx.zero_tol)


def fix_phase(v: np.ndarray) -> np.ndarray:
    """Normalize the global phase: largest-magnitude entry real positive.

    Ties in magnitude resolve to the lowest index (argmax convention).
    """
    i = int(np.argmax(np.abs(v)))
    if abs(v[i]) == 0.0:
        return v
    return v * (v[i].conjugate() / abs(v[i]))


def hermitian_eig(a: OperatorMatrix) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix, descending eigenvalues.

    Deterministic output: within groups of eigenvalues equal to 1e-10 the
    eigenvectors are ordered lexicographically by (-|v(0)|, -|v(1)|, ...), and
    each eigenvector's global phase makes its largest-magnitude entry real and
    positive.
    """
    if not is_hermitian(a):
        raise NotHermitian("matrix is not Hermitian within zero_tol")
    w, v = np.linalg.eigh((a.entries + a.entries.conj().T) / 2.0)
    w = w[::-1]
    v = v[:, ::-1]
    cols = [fix_phase(v[:, i]) for i in range(v.shape[1])]

    order = list(range(len(w)))
    i = 0
    while i < len(w):
        j = i
        while j + 1 < len(w) and abs(w[j + 1] - w[i]) <= 1e-10:
            j += 1
        if j > i:
            block = sorted(order[i : j + 1], key=lambda c: tuple(-np.abs(cols[c])))
            order[i : j + 1] = block
        i = j + 1

    eigvals = np.array([w[i] for i in order])
    vecs = tuple(Signal(a.ctx, cols[i]) for i in order)
    eigvals.setflags(write=False)
    return Spectrum(a.ctx, eigvals, vecs)


def is_positive(a: OperatorMatrix) -> bool:
    """Hermitian within zero_tol and min eigenvalue >= -zero_tol * ||A||_op."""
    if not is_hermitian(a):
        return False
    w = np.linalg.eigvalsh((a.entries + a.entries.conj().T) / 2.0)
    top = max(abs(w.max()), abs(w.min()))
    return bool(w.min() >= -a.ctx.zero_tol * top)

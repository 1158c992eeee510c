"""CSV serialization of grid objects and JSON report helpers.

Formats (one header line, then one row per entry, k-major/i-major ascending,
all rows present; numbers rendered with 17 significant digits):

    # qha-phasefn N=<n>     rows  k,l,re,im
    # qha-domain N=<n>      rows  k,l,flag          flag in {0, 1}
    # qha-operator N=<n>    rows  i,j,re,im
    # qha-signal N=<n>      rows  n,re,im

Readers accept a ``qha-phasefn`` header for domain files as well (a domain is
a 0/1 phase function); values are then binarized at 1/2.
"""

from __future__ import annotations

import json
from typing import IO

import numpy as np

from .context import QhaContext
from .operators import OperatorMatrix, Signal
from .phase_space import Domain, PhaseFn

__all__ = [
    "write_phase_fn",
    "read_phase_fn",
    "write_domain",
    "read_domain",
    "write_operator",
    "read_operator",
    "write_signal",
    "read_signal",
    "format_report",
]

_FMT = "{:.17g}"


def _num(x: float) -> str:
    return _FMT.format(float(x))


def _parse_header(line: str, kinds: tuple[str, ...]) -> tuple[str, int]:
    line = line.strip()
    if not line.startswith("#"):
        raise ValueError(f"missing header line, got {line[:40]!r}")
    body = line.lstrip("#").strip()
    try:
        kind, nfield = body.split()
        key, val = nfield.split("=")
        n = int(val)
    except ValueError as exc:
        raise ValueError(f"malformed header {line!r}") from exc
    if key != "N" or kind not in kinds:
        raise ValueError(f"unexpected header {line!r}; expected kinds {kinds}")
    return kind, n


def write_phase_fn(fh: IO[str], f: PhaseFn) -> None:
    n = f.ctx.n
    fh.write(f"# qha-phasefn N={n}\n")
    for k in range(n):
        for l in range(n):
            v = f.values[k, l]
            fh.write(f"{k},{l},{_num(v.real)},{_num(v.imag)}\n")


def read_phase_fn(fh: IO[str], ctx: QhaContext | None = None) -> PhaseFn:
    kind, n = _parse_header(fh.readline(), ("qha-phasefn",))
    ctx = ctx or QhaContext(n)
    if ctx.n != n:
        raise ValueError(f"file has N={n}, context has N={ctx.n}")
    v = np.zeros((n, n), dtype=complex)
    seen = 0
    for line in fh:
        if not line.strip():
            continue
        k, l, re, im = line.split(",")
        v[int(k), int(l)] = float(re) + 1j * float(im)
        seen += 1
    if seen != n * n:
        raise ValueError(f"expected {n * n} rows, found {seen}")
    return PhaseFn(ctx, v)


def write_domain(fh: IO[str], omega: Domain) -> None:
    n = omega.ctx.n
    fh.write(f"# qha-domain N={n}\n")
    for k in range(n):
        for l in range(n):
            fh.write(f"{k},{l},{1 if omega.mask[k, l] else 0}\n")


def read_domain(fh: IO[str], ctx: QhaContext | None = None) -> Domain:
    kind, n = _parse_header(fh.readline(), ("qha-domain", "qha-phasefn"))
    ctx = ctx or QhaContext(n)
    if ctx.n != n:
        raise ValueError(f"file has N={n}, context has N={ctx.n}")
    m = np.zeros((n, n), dtype=bool)
    seen = 0
    for line in fh:
        if not line.strip():
            continue
        parts = line.split(",")
        k, l = int(parts[0]), int(parts[1])
        m[k, l] = float(parts[2]) > 0.5
        seen += 1
    if seen != n * n:
        raise ValueError(f"expected {n * n} rows, found {seen}")
    return Domain(ctx, m)


def write_operator(fh: IO[str], a: OperatorMatrix) -> None:
    n = a.ctx.n
    fh.write(f"# qha-operator N={n}\n")
    for i in range(n):
        for j in range(n):
            v = a.entries[i, j]
            fh.write(f"{i},{j},{_num(v.real)},{_num(v.imag)}\n")


def read_operator(fh: IO[str], ctx: QhaContext | None = None) -> OperatorMatrix:
    kind, n = _parse_header(fh.readline(), ("qha-operator",))
    ctx = ctx or QhaContext(n)
    if ctx.n != n:
        raise ValueError(f"file has N={n}, context has N={ctx.n}")
    m = np.zeros((n, n), dtype=complex)
    seen = 0
    for line in fh:
        if not line.strip():
            continue
        i, j, re, im = line.split(",")
        m[int(i), int(j)] = float(re) + 1j * float(im)
        seen += 1
    if seen != n * n:
        raise ValueError(f"expected {n * n} rows, found {seen}")
    return OperatorMatrix(ctx, m)


def write_signal(fh: IO[str], psi: Signal) -> None:
    n = psi.ctx.n
    fh.write(f"# qha-signal N={n}\n")
    for i in range(n):
        v = psi.values[i]
        fh.write(f"{i},{_num(v.real)},{_num(v.imag)}\n")


def read_signal(fh: IO[str], ctx: QhaContext | None = None) -> Signal:
    kind, n = _parse_header(fh.readline(), ("qha-signal",))
    ctx = ctx or QhaContext(n)
    if ctx.n != n:
        raise ValueError(f"file has N={n}, context has N={ctx.n}")
    v = np.zeros(n, dtype=complex)
    seen = 0
    for line in fh:
        if not line.strip():
            continue
        i, re, im = line.split(",")
        v[int(i)] = float(re) + 1j * float(im)
        seen += 1
    if seen != n:
        raise ValueError(f"expected {n} rows, found {seen}")
    return Signal(ctx, v)


def format_report(ctx: QhaContext, command: str, checks: dict, extra: dict | None = None) -> str:
    """Uniform JSON report: every command emits n, tolerances and named checks."""
    doc = {
        "command": command,
        "n": ctx.n,
        "tolerances": {"zero_tol": ctx.zero_tol, "deconv_tol": ctx.deconv_tol},
        "checks": checks,
    }
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"

"""Command line surface.

Subcommands: shift-matrix, stft, ambiguity, wigner, spectrogram, cohen,
classify-kernel, decompose, klm-check, localize, povm-check,
reconstruct-domain, deconvolve-mask, retrieve-phase, uncertainty-report,
selftest.

Exit codes: 0 success, 1 invalid arguments, 2 precondition failure (e.g. a
zero-spreading state), 3 I/O failure.  Failures emit one machine-readable
line ``error: <code>: <message>`` on standard error.  Outputs are
deterministic given identical inputs and ``--seed``; randomness comes from
numpy's PCG64 generator.

The environment variable ``QHA_THREADS`` caps BLAS/FFT parallelism (0 or
unset = automatic); it is applied before numpy is first imported, which is
why this module delays its imports.
"""

from __future__ import annotations

import os
import sys


def _apply_thread_cap() -> None:
    raw = os.environ.get("QHA_THREADS", "").strip()
    if not raw:
        return
    try:
        cap = int(raw)
    except ValueError:
        return
    if cap > 0 and "numpy" not in sys.modules:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, str(cap))


_apply_thread_cap()

import argparse
import json

import numpy as np

from . import io as qio
from .context import PhasePoint, QhaContext
from .errors import QhaError
from .selftest import run_selftest

__all__ = ["main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 instead of argparse's default 2
        raise _UsageError(message)


def _open_read(path: str):
    return open(path, "r", encoding="ascii")


def _open_write(path: str):
    return open(path, "w", encoding="ascii", newline="\n")


def _ctx(args) -> QhaContext:
    kw = {}
    if getattr(args, "zero_tol", None) is not None:
        kw["zero_tol"] = args.zero_tol
    if getattr(args, "deconv_tol", None) is not None:
        kw["deconv_tol"] = args.deconv_tol
    return QhaContext(args.n, **kw)


def _load_signal(ctx, path):
    with _open_read(path) as fh:
        return qio.read_signal(fh, ctx)


def _load_window(ctx, spec: str):
    from .tf_transforms import WINDOW_PRESETS, window_preset

    if spec in WINDOW_PRESETS:
        return window_preset(ctx, spec)
    return _load_signal(ctx, spec)


def _load_operator(ctx, path):
    with _open_read(path) as fh:
        return qio.read_operator(fh, ctx)


def _load_domain(ctx, path):
    with _open_read(path) as fh:
        return qio.read_domain(fh, ctx)


def _load_kernel(ctx, spec: str):
    from .cohen import (CohenKernel, born_jordan_kernel, spectrogram_kernel,
                        wigner_kernel)

    if spec == "wigner":
        return wigner_kernel(ctx)
    if spec == "born-jordan":
        return born_jordan_kernel(ctx)
    if spec.startswith("spectrogram:"):
        return spectrogram_kernel(_load_window(ctx, spec.split(":", 1)[1]))
    if spec.startswith("custom:"):
        return CohenKernel(_load_operator(ctx, spec.split(":", 1)[1]))
    raise _UsageError(
        f"unknown kernel {spec!r}; expected wigner, born-jordan, "
        "spectrogram:<window>, or custom:<file>")


def _parse_points(ctx, text: str) -> list[PhasePoint]:
    pts = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        k, l = chunk.split(",")
        pts.append(PhasePoint(ctx, int(k), int(l)))
    if not pts:
        raise _UsageError("empty point list")
    return pts


def _write_report(args, text: str) -> None:
    if getattr(args, "report", None):
        with _open_write(args.report) as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands

def _cmd_shift_matrix(args) -> int:
    from .operators import tf_shift

    ctx = _ctx(args)
    m = tf_shift(ctx, PhasePoint(ctx, args.k, args.l))
    with _open_write(args.out) as fh:
        qio.write_operator(fh, m)
    return 0


def _cmd_transform(args) -> int:
    from .tf_transforms import ambiguity, spectrogram, stft, wigner

    fns = {"stft": stft, "ambiguity": ambiguity, "wigner": wigner,
           "spectrogram": spectrogram}
    ctx = _ctx(args)
    psi = _load_signal(ctx, args.signal)
    win = _load_window(ctx, args.window)
    out = fns[args.command](psi, win)
    with _open_write(args.out) as fh:
        qio.write_phase_fn(fh, out)
    return 0


def _cmd_cohen(args) -> int:
    from .cohen import cohen_distribution

    ctx = _ctx(args)
    kern = _load_kernel(ctx, args.kernel)
    psi = _load_signal(ctx, args.signal)
    q = cohen_distribution(kern, psi)
    with _open_write(args.out) as fh:
        qio.write_phase_fn(fh, q)
    return 0


def _cmd_classify_kernel(args) -> int:
    from .cohen import classify

    ctx = _ctx(args)
    cls = classify(_load_kernel(ctx, args.kernel))
    checks = {
        "is-positive": {"pass": cls.is_positive},
        "is-correct-energy": {"pass": cls.is_correct_energy},
        "energy-constant": {"value": cls.energy_constant},
    }
    _write_report(args, qio.format_report(ctx, "classify-kernel", checks))
    return 0


def _cmd_decompose(args) -> int:
    from .cohen import spectrogram_decomposition
    from .operators import MixedState

    ctx = _ctx(args)
    state = MixedState(_load_operator(ctx, args.state))
    pairs = spectrogram_decomposition(state)
    lam_sum = sum(lam for lam, _ in pairs)
    checks = {
        "weight-sum-is-one": {"pass": abs(lam_sum - 1.0) <= 1e-10,
                              "value": lam_sum},
        "terms": {"value": len(pairs)},
    }
    extra = {"weights": [lam for lam, _ in pairs],
             "windows": [[[v.real, v.imag] for v in w.values] for _, w in pairs]}
    _write_report(args, qio.format_report(ctx, "decompose", checks, extra))
    return 0


def _cmd_klm_check(args) -> int:
    from .cohen import kernel_function, klm_check

    ctx = _ctx(args)
    kern = _load_kernel(ctx, args.kernel)
    phi = kernel_function(kern)
    rng = np.random.default_rng(args.seed)
    if args.points:
        tuples = [_parse_points(ctx, args.points)]
    else:
        tuples = []
        for _ in range(args.tuples):
            m = int(rng.integers(2, args.tuple_size + 1))
            tuples.append([PhasePoint(ctx, int(rng.integers(ctx.n)), int(rng.integers(ctx.n)))
                           for _ in range(m)])
    worst = np.inf
    all_psd = True
    for pts in tuples:
        psd, mineig = klm_check(phi, pts)
        worst = min(worst, mineig)
        all_psd = all_psd and psd
    checks = {"all-tuples-psd": {"pass": all_psd},
              "min-eigenvalue": {"value": float(worst)}}
    _write_report(args, qio.format_report(ctx, "klm-check", checks,
                                          {"tuples": len(tuples)}))
    return 0


def _cmd_localize(args) -> int:
    from .localization import localization_eigenproblem
    from .operators import MixedState

    ctx = _ctx(args)
    omega = _load_domain(ctx, args.domain)
    state = MixedState(_load_operator(ctx, args.state))
    rep = localization_eigenproblem(omega, state)
    mu = float(rep.domain_measure)
    checks = {
        "eigen-sum-equals-measure": {
            "pass": abs(rep.eigen_sum - mu) <= 1e-10 * ctx.n,
            "value": abs(rep.eigen_sum - mu)},
        "trace-equals-measure": {
            "pass": abs(rep.trace - mu) <= 1e-10 * ctx.n,
            "value": abs(rep.trace - mu)},
    }
    extra = {
        "eigenvalues": [float(v) for v in rep.eigen.eigenvalues],
        "eigen_sum": rep.eigen_sum,
        "measure": mu,
        "measure_exact": [rep.domain_measure.numerator, rep.domain_measure.denominator],
        "trace": rep.trace,
    }
    _write_report(args, qio.format_report(ctx, "localize", checks, extra))
    return 0


def _cmd_povm_check(args) -> int:
    from .localization import cell_partition, povm_verify, quadrant_partition
    from .operators import MixedState

    ctx = _ctx(args)
    state = MixedState(_load_operator(ctx, args.state))
    partition = quadrant_partition(ctx) if args.partition == "quadrant" else cell_partition(ctx)
    shifts = _parse_points(ctx, args.shifts) if args.shifts else [
        PhasePoint(ctx, 1, 0), PhasePoint(ctx, 0, 1), PhasePoint(ctx, 1, 1)]
    rep = povm_verify(state, partition, shifts)
    tol = 1e-9
    checks = {
        "partition-sum": {"pass": rep.partition_sum_error <= tol,
                          "value": rep.partition_sum_error},
        "identity": {"pass": rep.identity_error <= tol, "value": rep.identity_error},
        "covariance": {"pass": rep.covariance_error <= tol, "value": rep.covariance_error},
        "positivity": {"pass": rep.min_eigenvalue >= -tol, "value": rep.min_eigenvalue},
    }
    _write_report(args, qio.format_report(ctx, "povm-check", checks,
                                          {"partition": args.partition,
                                           "cells": len(partition)}))
    return 0


def _cmd_reconstruct_domain(args) -> int:
    from .localization import reconstruct_domain

    ctx = _ctx(args)
    h = _load_operator(ctx, args.filter)
    s = _load_operator(ctx, args.state)
    omega = reconstruct_domain(h, s)
    with _open_write(args.out) as fh:
        qio.write_domain(fh, omega)
    return 0


def _cmd_deconvolve_mask(args) -> int:
    from .fourier_wigner import deconvolve_mask

    ctx = _ctx(args)
    h = _load_operator(ctx, args.filter)
    s = _load_operator(ctx, args.state)
    f = deconvolve_mask(h, s)
    with _open_write(args.out) as fh:
        qio.write_phase_fn(fh, f)
    return 0


def _cmd_retrieve_phase(args) -> int:
    from .cohen import phase_retrieval

    ctx = _ctx(args)
    with _open_read(args.spec) as fh:
        spec = qio.read_phase_fn(fh, ctx)
    win = _load_window(ctx, args.window)
    psi = phase_retrieval(spec, win)
    with _open_write(args.out) as fh:
        qio.write_signal(fh, psi)
    return 0


def _cmd_uncertainty_report(args) -> int:
    from .localization import spreading_uncertainty

    ctx = _ctx(args)
    s = _load_operator(ctx, args.state)
    omega = _load_domain(ctx, args.domain)
    rep = spreading_uncertainty(s, omega, args.p)
    checks = {
        "finite-bound": {"pass": rep.finite_bound_holds, "value": rep.finite_bound},
        "lieb-bound": {"pass": rep.lieb_bound_holds, "value": rep.lieb_bound},
    }
    extra = {
        "p": rep.p,
        "epsilon": rep.epsilon,
        "concentration": rep.concentration,
        "measure": float(rep.domain_measure),
    }
    _write_report(args, qio.format_report(ctx, "uncertainty-report", checks, extra))
    return 0


def _cmd_selftest(args) -> int:
    ctx = _ctx(args)
    results = run_selftest(ctx, args.seed)
    width = max(len(k) for k in results)
    lines = []
    for name, (ok, err, tol) in results.items():
        lines.append(f"{name:<{width}}  {'pass' if ok else 'FAIL'}  "
                     f"err={err:.3e}  tol={tol:.1e}")
    table = "\n".join(lines) + "\n"
    sys.stdout.write(table)
    checks = {name: {"pass": ok, "value": err, "tol": tol}
              for name, (ok, err, tol) in results.items()}
    if args.report:
        with _open_write(args.report) as fh:
            fh.write(qio.format_report(ctx, "selftest", checks, {"seed": args.seed}))
    failed = [name for name, (ok, _, _) in results.items() if not ok]
    if failed:
        raise _SelftestFailed(", ".join(failed))
    return 0


class _SelftestFailed(QhaError):
    code = "selftest-failed"


# ---------------------------------------------------------------------------

def _build_parser() -> _Parser:
    p = _Parser(prog="qha", description="quantum harmonic analysis on Z_N x Z_N")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        sp = sub.add_parser(name, **kw)
        sp.add_argument("--n", type=int, required=True, help="grid side N")
        sp.add_argument("--zero-tol", type=float, dest="zero_tol")
        sp.add_argument("--deconv-tol", type=float, dest="deconv_tol")
        return sp

    sp = add("shift-matrix", help="write the time-frequency shift matrix pi(k, l)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--out", required=True)

    for name in ("stft", "ambiguity", "wigner", "spectrogram"):
        sp = add(name, help=f"{name} of a signal against a window")
        sp.add_argument("--signal", required=True)
        sp.add_argument("--window", required=True,
                        help="preset (gaussian|impulse|flat) or signal CSV")
        sp.add_argument("--out", required=True)

    sp = add("cohen", help="Cohen distribution of a signal for a kernel")
    sp.add_argument("--signal", required=True)
    sp.add_argument("--kernel", required=True,
                    help="wigner | born-jordan | spectrogram:<window> | custom:<file>")
    sp.add_argument("--out", required=True)

    sp = add("classify-kernel", help="positivity / total-energy classification")
    sp.add_argument("--kernel", required=True)
    sp.add_argument("--report")

    sp = add("decompose", help="spectrogram decomposition of a mixed state")
    sp.add_argument("--state", required=True)
    sp.add_argument("--report")

    sp = add("klm-check", help="twisted-Gram positivity test of a kernel")
    sp.add_argument("--kernel", required=True)
    sp.add_argument("--points", help='explicit tuple "k,l;k,l;..."')
    sp.add_argument("--tuples", type=int, default=200)
    sp.add_argument("--tuple-size", type=int, default=6, dest="tuple_size")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--report")

    sp = add("localize", help="eigenvalues of a mixed-state localization operator")
    sp.add_argument("--domain", required=True)
    sp.add_argument("--state", required=True)
    sp.add_argument("--report")

    sp = add("povm-check", help="POVM axioms over a partition")
    sp.add_argument("--state", required=True)
    sp.add_argument("--partition", choices=("quadrant", "cells"), default="quadrant")
    sp.add_argument("--shifts", help='covariance shifts "k,l;k,l;..."')
    sp.add_argument("--report")

    sp = add("reconstruct-domain", help="recover a domain from its localization operator")
    sp.add_argument("--filter", required=True)
    sp.add_argument("--state", required=True)
    sp.add_argument("--out", required=True)

    sp = add("deconvolve-mask", help="recover a mask from a filter by spectral division")
    sp.add_argument("--filter", required=True)
    sp.add_argument("--state", required=True)
    sp.add_argument("--out", required=True)

    sp = add("retrieve-phase", help="recover a signal from a spectrogram")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--window", required=True)
    sp.add_argument("--out", required=True)

    sp = add("uncertainty-report", help="spreading concentration vs. domain measure")
    sp.add_argument("--state", required=True)
    sp.add_argument("--domain", required=True)
    sp.add_argument("--p", type=float, default=4.0)
    sp.add_argument("--report")

    sp = add("selftest", help="run the identity suite and print a pass/fail table")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--report")

    return p


_DISPATCH = {
    "shift-matrix": _cmd_shift_matrix,
    "stft": _cmd_transform,
    "ambiguity": _cmd_transform,
    "wigner": _cmd_transform,
    "spectrogram": _cmd_transform,
    "cohen": _cmd_cohen,
    "classify-kernel": _cmd_classify_kernel,
    "decompose": _cmd_decompose,
    "klm-check": _cmd_klm_check,
    "localize": _cmd_localize,
    "povm-check": _cmd_povm_check,
    "reconstruct-domain": _cmd_reconstruct_domain,
    "deconvolve-mask": _cmd_deconvolve_mask,
    "retrieve-phase": _cmd_retrieve_phase,
    "uncertainty-report": _cmd_uncertainty_report,
    "selftest": _cmd_selftest,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _DISPATCH[args.command](args)
    except _UsageError as exc:
        sys.stderr.write(f"error: invalid-args: {exc}\n")
        return 1
    except QhaError as exc:
        sys.stderr.write(f"error: {exc.code}: {exc}\n")
        return 2
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"error: io: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())

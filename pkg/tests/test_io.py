"""CSV round trips and header handling."""

import io

import numpy as np
import pytest

from qha import Domain, QhaContext, operator, phase_fn, signal
from qha.io import (format_report, read_domain, read_operator, read_phase_fn,
                    read_signal, write_domain, write_operator, write_phase_fn,
                    write_signal)
from qha.sampling import make_rng, random_domain, random_operator, random_phase_fn


def roundtrip(write, read, obj, ctx):
    buf = io.StringIO()
    write(buf, obj)
    buf.seek(0)
    return read(buf, ctx)


def test_phase_fn_round_trip():
    ctx = QhaContext(5)
    rng = make_rng(0)
    f = random_phase_fn(ctx, rng)
    got = roundtrip(write_phase_fn, read_phase_fn, f, ctx)
    np.testing.assert_array_equal(got.values, f.values)  # 17 digits round-trips


def test_operator_and_signal_round_trip():
    ctx = QhaContext(6)
    rng = make_rng(1)
    a = random_operator(ctx, rng)
    got = roundtrip(write_operator, read_operator, a, ctx)
    np.testing.assert_array_equal(got.entries, a.entries)
    psi = signal(ctx, rng.normal(size=6) + 1j * rng.normal(size=6))
    got = roundtrip(write_signal, read_signal, psi, ctx)
    np.testing.assert_array_equal(got.values, psi.values)


def test_domain_round_trip_and_phasefn_header():
    ctx = QhaContext(4)
    rng = make_rng(2)
    om = random_domain(ctx, rng)
    got = roundtrip(write_domain, read_domain, om, ctx)
    np.testing.assert_array_equal(got.mask, om.mask)
    # a 0/1 phase function file parses as a domain too
    buf = io.StringIO()
    write_phase_fn(buf, phase_fn(ctx, om.mask.astype(complex)))
    buf.seek(0)
    got = read_domain(buf, ctx)
    np.testing.assert_array_equal(got.mask, om.mask)


def test_headers_and_errors():
    ctx = QhaContext(4)
    rng = make_rng(3)
    f = random_phase_fn(ctx, rng)
    buf = io.StringIO()
    write_phase_fn(buf, f)
    text = buf.getvalue()
    assert text.splitlines()[0] == "# qha-phasefn N=4"
    assert len(text.splitlines()) == 1 + 16  # header plus all N^2 rows

    with pytest.raises(ValueError):
        read_phase_fn(io.StringIO("0,0,1,0\n"))  # missing header
    with pytest.raises(ValueError):
        read_phase_fn(io.StringIO(text), QhaContext(5))  # size mismatch
    with pytest.raises(ValueError):
        read_operator(io.StringIO(text), ctx)  # wrong kind
    truncated = "\n".join(text.splitlines()[:5]) + "\n"
    with pytest.raises(ValueError):
        read_phase_fn(io.StringIO(truncated), ctx)


def test_number_formatting():
    ctx = QhaContext(2)
    a = operator(ctx, np.array([[1 / 3, 0], [0, 1e-17]], dtype=complex))
    buf = io.StringIO()
    write_operator(buf, a)
    lines = buf.getvalue().splitlines()
    assert lines[1].startswith("0,0,0.33333333333333331,")
    assert "1.0000000000000001e-17" in lines[4] or "1e-17" in lines[4]


def test_format_report_shape():
    ctx = QhaContext(8)
    text = format_report(ctx, "demo", {"a": {"pass": True}}, {"seed": 1})
    import json

    doc = json.loads(text)
    assert doc["n"] == 8
    assert doc["tolerances"] == {"zero_tol": 1e-10, "deconv_tol": 1e-8}
    assert doc["checks"]["a"]["pass"] is True
    assert doc["seed"] == 1

import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from mzl.arceval import (
    EvalConfig,
    PrecisionError,
    TruncationError,
    delta_value,
    eval_on_segment,
    j_on_arc,
    j_on_arc_float,
    real_trace,
    real_trace_direct,
)
from mzl.basis import construct, gap_function
from mzl.qexact import delta, eisenstein

LO, HI = math.pi / 2, 2 * math.pi / 3
interior = st.floats(LO + 1e-6, HI - 1e-6)


def j_oracle(theta, prec=200):
    with mp.workprec(prec):
        return (1728 * mpmath.kleinj(mpmath.expj(mpf(theta)))).real


def delta_oracle(z, prec=200):
    with mp.workprec(prec):
        q = mpmath.exp(2j * mp.pi * mpmath.mpc(z))
        return q * mpmath.qp(q) ** 24


def test_config_defaults_and_env(monkeypatch):
    assert EvalConfig().prec_bits == 256
    monkeypatch.setenv("MZL_PREC_BITS", "320")
    assert EvalConfig().prec_bits == 320


@pytest.mark.parametrize("kwargs", [{"prec_bits": 32}, {"tol": 0}, {"tol": 1e-200, "prec_bits": 128}, {"max_terms": 2}])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        EvalConfig(**kwargs)


def test_j_at_corners():
    assert j_on_arc(LO).value == 1728
    assert j_on_arc(HI).value == 0


def test_j_frozen_value():
    # j at theta = 7pi/12, frozen from the kleinj oracle
    with mp.workprec(256):
        theta = 7 * mp.pi / 12
        assert abs(j_on_arc(theta).value - mpf("582.85089896275011121987135866177532")) < 1e-25


@given(interior)
@settings(max_examples=25, deadline=None)
def test_j_matches_kleinj(theta):
    v = j_on_arc(theta)
    assert abs(v.value - j_oracle(theta)) < max(1e-25, 10 * v.est_error)


def test_j_decreases_along_arc():
    ts = [LO + (HI - LO) * i / 50 for i in range(1, 50)]
    vals = [j_on_arc(t).value for t in ts]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_j_outside_arc_rejected():
    with pytest.raises(ValueError):
        j_on_arc(2.2)


def test_float_seed_is_close():
    for t in (1.6, 1.8, 2.0):
        assert abs(j_on_arc_float(t) - float(j_oracle(t))) < 1e-8 * 1728


@pytest.mark.parametrize("z", [mpmath.mpc(0.3, 0.75), mpmath.mpc(-0.5, 0.65), mpmath.expj(1.8)])
def test_delta_matches_eta_product(z):
    v, err = delta_value(z, EvalConfig())
    assert abs(v - delta_oracle(z)) < 1e-28


def test_segment_evaluation_of_series():
    s = delta(80)
    sv = eval_on_segment(s, 0.25, 0.75)
    assert abs(sv.value - delta_oracle(mpmath.mpc(0.25, 0.75))) < 1e-28


def test_segment_rejects_bad_points():
    with pytest.raises(ValueError):
        eval_on_segment(delta(20), 0.7, 0.75)
    with pytest.raises(ValueError):
        eval_on_segment(delta(20), 0.0, 0.4)


def test_segment_short_series_raises():
    with pytest.raises(TruncationError):
        eval_on_segment(eisenstein(4, 3), 0.0, 0.5)


@pytest.mark.parametrize("k, m", [(4, 0), (12, 0), (26, 0), (0, 2), (16, 1), (2, 1), (-4, 3)])
@pytest.mark.parametrize("theta", [1.6, 1.75, 1.95, 2.05])
def test_factored_and_direct_traces_agree(k, m, theta):
    form = construct(k, m)
    a = real_trace(form, theta)
    b = real_trace_direct(form, theta)
    assert abs(a.value - b.value) < 1e-25 + 4 * (a.est_error + b.est_error)


def test_trace_of_e4_matches_closed_form():
    # e^{2i theta} E4(e^{i theta}) via the kleinj oracle: E4^3 = j Delta
    theta = mpf("1.7")
    g = real_trace(gap_function(4), theta).value
    with mp.workprec(200):
        z = mpmath.expj(theta)
        d = delta_oracle(z) * mpmath.expj(6 * theta)
        cube = (j_oracle(theta) * d).real
        expected = mpmath.sign(cube) * abs(cube) ** (mpf(1) / 3)
    assert abs(g - expected) < 1e-25


def test_precision_doubling_is_stable():
    form = gap_function(100)
    a = real_trace(form, 1.8, EvalConfig(256))
    b = real_trace(form, 1.8, EvalConfig(512))
    assert abs(a.value - b.value) <= a.est_error + b.est_error


def test_trace_rejects_endpoints():
    with pytest.raises(ValueError):
        real_trace(gap_function(12), LO)
    with pytest.raises(ValueError):
        real_trace(gap_function(12), 2.0944)


def test_precision_error_type_exists():
    assert issubclass(PrecisionError, ArithmeticError)

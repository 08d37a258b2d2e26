from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mzl.basis import KPRIMES, construct, endpoint_orders, gap_function, split_weight
from mzl.qexact import delta, eisenstein, jfunction


@pytest.mark.parametrize(
    "k, ell, kprime", [(16, 1, 4), (132, 11, 0), (2, -1, 14), (0, 0, 0), (4, 0, 4), (14, 0, 14), (-10, -2, 14)]
)
def test_split_weight(k, ell, kprime):
    s = split_weight(k)
    assert (s.ell, s.kprime) == (ell, kprime)
    assert 12 * s.ell + s.kprime == k


def test_split_weight_rejects_odd():
    with pytest.raises(ValueError):
        split_weight(7)


@given(st.integers(-200, 400).map(lambda n: 2 * n))
def test_split_weight_is_a_decomposition(k):
    s = split_weight(k)
    assert s.kprime in KPRIMES and 12 * s.ell + s.kprime == k


def test_e4_is_its_own_basis_element():
    f = construct(4, 0)
    assert f.F == (Fraction(1),)
    assert f.expansion == eisenstein(4, f.expansion.trunc)


def test_g12_polynomial_and_expansion():
    f = construct(12, 0)
    assert f.F == (Fraction(-720), Fraction(1))
    # Delta (j - 720) = E4^3 - 720 Delta; its q^2 coefficient is 196560
    assert [f.expansion.coefficient(n) for n in range(0, 3)] == [1, 0, 196560]


def test_weight_zero_index_one_is_j_minus_744():
    f = construct(0, 1)
    assert f.F == (Fraction(-744), Fraction(1))
    assert [f.expansion.coefficient(n) for n in range(-1, 2)] == [1, 0, 196884]


def test_g16_uses_delta_e4_times_linear():
    f = gap_function(16)
    assert f.degree == 1
    expected = (delta(20) * eisenstein(4, 20) * (jfunction(20) + f.F[0])).truncate(10)
    assert f.expand(10) == expected
    assert [f.expansion.coefficient(n) for n in range(0, 2)] == [1, 0]


def test_counterexample_polynomial():
    f = construct(132, -9)
    assert f.F == (Fraction(-1404), Fraction(-1224), Fraction(1))


def test_negative_weight_with_small_index():
    f = construct(2, 1)
    assert f.F == (Fraction(1),)
    assert f.expansion.lead == -1


@pytest.mark.parametrize("k, m", [(12, -2), (24, -3), (0, -1)])
def test_missing_basis_elements_rejected(k, m):
    with pytest.raises(ValueError):
        construct(k, m)


@pytest.mark.parametrize("k", [2, 0, -4, 5])
def test_gap_function_needs_k_at_least_four(k):
    with pytest.raises(ValueError):
        gap_function(k)


@given(st.integers(-30, 120).map(lambda n: 2 * n), st.integers(0, 4))
@settings(max_examples=40, deadline=None)
def test_normalization_and_gap(k, extra):
    ell = split_weight(k).ell
    m = max(-ell, -2) + extra
    f = construct(k, m)
    s = f.expansion
    assert s.coefficient(-m) == 1
    assert all(s.coefficient(n) == 0 for n in range(-m + 1, ell + 1))
    assert f.F_is_integral()


def test_expand_past_cache_matches_direct_product():
    f = construct(28, 1)
    long = f.expand(40)
    assert long.truncate(f.expansion.trunc) == f.expansion
    assert long.trunc == 40


@pytest.mark.parametrize(
    "k, m, orders",
    [
        (4, 0, (0, Fraction(1, 3))),
        (6, 0, (Fraction(1, 2), 0)),
        (12, 0, (0, 0)),
        (14, 0, (Fraction(1, 2), Fraction(2, 3))),
        (10, 0, (Fraction(1, 2), Fraction(1, 3))),
    ],
)
def test_endpoint_orders(k, m, orders):
    assert endpoint_orders(construct(k, m)) == orders


@given(st.integers(2, 60).map(lambda n: 2 * n))
@settings(max_examples=30, deadline=None)
def test_valence_formula(k):
    # corner orders plus interior arc zeros account for k/12 (no zeros off the arc)
    from mzl.zeros import count_expected

    f = gap_function(k)
    oi, orho = endpoint_orders(f)
    assert oi + orho + count_expected(f) == Fraction(k, 12)

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mzl.models import (
    CosModel,
    ResidueModel,
    b_derivative,
    b_value,
    check_h_shift,
    check_lemma_3_1,
    check_max_gap,
    check_prop_3_4,
    cos_model_zeros,
    cosine_zeros,
    h_interlace,
    h_model_zeros,
    h_value,
    linear_model,
    linear_remainder,
    max_gap_bound,
    model_property_suite,
    monotone_hypothesis,
    random_valid_pair,
)

PI = math.pi
LO, HI = PI / 2, 2 * PI / 3


@st.composite
def valid_pairs(draw):
    rng = random.Random(draw(st.integers(0, 10**9)))
    return random_valid_pair(rng)


def test_b_at_pi_over_2():
    assert b_value(CosModel(40, 3), LO) == pytest.approx(40 * PI / 4, abs=1e-12)
    assert b_value(CosModel(40, 3, "k_plus_12"), LO) - 3 * PI == pytest.approx(40 * PI / 4, abs=1e-12)


def test_b_is_linear_without_index():
    assert b_value(CosModel(30, 0), 1.7) == pytest.approx(15 * 1.7, abs=1e-14)


def test_unknown_variant_rejected():
    with pytest.raises(ValueError):
        CosModel(12, 0, "k_plus_6")


def test_cosine_zeros_of_g12_model():
    assert cos_model_zeros(CosModel(12, 0)) == pytest.approx([7 * PI / 12], abs=1e-14)


def test_no_model_zeros_for_weight_four():
    assert cos_model_zeros(CosModel(4, 0)) == []


def test_index_five_zeros_closed_form():
    # -10 pi cos(theta) = (n + 1/2) pi  =>  cos(theta) = -(n + 1/2)/10
    expected = [math.acos(-(n + 0.5) / 10) for n in range(5)]
    assert cos_model_zeros(CosModel(0, 5)) == pytest.approx(expected, abs=1e-14)


def test_hypothesis_gate():
    assert not monotone_hypothesis(-24, 3)
    with pytest.raises(ValueError):
        cos_model_zeros(CosModel(-24, 3))
    with pytest.raises(ValueError):
        check_lemma_3_1(-24, 3, "m_plus_1")


@pytest.mark.parametrize("k, m, variant", [(24, 0, "k_plus_12"), (0, 3, "m_plus_1"), (-12, 5, "m_plus_1")])
def test_cos_model_conditions(k, m, variant):
    r = check_lemma_3_1(k, m, variant)
    assert r.ok, r.as_dict()


def test_max_gap_bound_values():
    assert max_gap_bound(12, 0) == pytest.approx(PI / 6)
    assert max_gap_bound(0, 1) == pytest.approx(1 / math.sqrt(3))
    assert check_max_gap(60, 2).ok


@pytest.mark.parametrize("k, m, variant", [(48, 0, "k_plus_12"), (0, 6, "m_plus_1"), (200, 3, "k_plus_12")])
def test_triple_inequalities(k, m, variant):
    r = check_prop_3_4(k, m, variant)
    assert r.ok and r.conditions["triples"] > 0


def test_triple_check_vacuous_with_few_zeros():
    r = check_prop_3_4(12, 0, "k_plus_12")
    assert r.ok and r.conditions["triples"] == 0


def test_triple_check_needs_nonnegative_weight_for_k_variant():
    with pytest.raises(ValueError):
        check_prop_3_4(-12, 4, "k_plus_12")


@given(valid_pairs())
@settings(max_examples=60, deadline=None)
def test_endpoint_identities(pair):
    k, m = pair
    b = b_value(CosModel(k, m), HI)
    assert b_value(CosModel(k, m, "k_plus_12"), HI) - 3 * PI == pytest.approx(b + PI, abs=1e-9)
    assert b_value(CosModel(k, m, "m_plus_1"), HI) == pytest.approx(b + PI, abs=1e-9)


@given(valid_pairs())
@settings(max_examples=30, deadline=None)
def test_sandwich_and_derivative_order(pair):
    k, m = pair
    base, kk, mm = CosModel(k, m), CosModel(k, m, "k_plus_12"), CosModel(k, m, "m_plus_1")
    for i in range(1, 1000):
        t = LO + (HI - LO) * i / 1000
        b = b_value(base, t)
        assert b < b_value(kk, t) - 3 * PI < b + PI
        assert b < b_value(mm, t) < b + PI
        assert b_derivative(base, t) < b_derivative(kk, t)
        assert b_derivative(base, t) < b_derivative(mm, t)


@given(valid_pairs())
@settings(max_examples=60, deadline=None)
def test_variants_have_one_more_zero(pair):
    k, m = pair
    n = len(cos_model_zeros(CosModel(k, m)))
    assert len(cos_model_zeros(CosModel(k, m, "k_plus_12"))) == n + 1
    assert len(cos_model_zeros(CosModel(k, m, "m_plus_1"))) == n + 1


def test_h_model_rejects_small_weight():
    with pytest.raises(ValueError):
        ResidueModel(2)
    with pytest.raises(ValueError):
        h_model_zeros(2)


@pytest.mark.parametrize("k", [50, 100, 176, 300])
def test_h_zeros_near_cosine_zeros(k):
    assert check_h_shift(k).ok


def test_h_positive_at_cosine_zeros():
    for c in cosine_zeros(100, 7 * PI / 12, HI):
        assert h_value(100, c) == pytest.approx((2 * math.cos(c / 2)) ** -100, rel=1e-6, abs=1e-12)
        assert h_value(100, c) > 0


def test_h100_interlaces_with_h112():
    assert h_interlace(100).ok


def test_linear_model_anchor_and_remainder():
    assert linear_model(36, 4, LO) == pytest.approx(9 * PI)
    assert linear_remainder(36, 0, 1.8) == pytest.approx(0, abs=1e-12)
    ts = [LO + (HI - LO) * i / 200 for i in range(1, 201)]
    rs = [linear_remainder(36, 4, t) for t in ts]
    assert all(r >= 0 for r in rs)
    assert all(a < b for a, b in zip(rs, rs[1:]))


def test_property_suite_small_run():
    reports = model_property_suite(draws=10, seed=3, h_range=range(50, 61, 2))
    assert all(r.ok for r in reports)

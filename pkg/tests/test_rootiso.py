from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mzl.rootiso import (
    count_real_roots,
    divide_out_root,
    isolate_real_roots,
    poly_gcd,
    refine_root,
    sign_at,
    squarefree_part,
    to_primitive_int,
)

x = sympy.symbols("x")


def sym(p):
    return sympy.Poly(list(reversed(p)), x)


def test_primitive_scaling():
    assert to_primitive_int([Fraction(1, 2), Fraction(-1, 3)]) == [-3, 2]
    assert to_primitive_int([4, 6, -2]) == [-2, -3, 1]


def test_squarefree_part_removes_repeats():
    p = [int(c) for c in reversed(sympy.Poly((x - 2) ** 3 * (x + 1), x).all_coeffs())]
    assert squarefree_part(p) == [-2, -1, 1]


def test_gcd():
    a = [int(c) for c in reversed(sympy.Poly((x - 1) * (x - 5), x).all_coeffs())]
    b = [int(c) for c in reversed(sympy.Poly((x - 5) * (x + 7), x).all_coeffs())]
    assert poly_gcd(a, b) == [-5, 1]


def test_divide_out_root():
    p = [int(c) for c in reversed(sympy.Poly(x**2 * (x - 1728) ** 2 * (x - 3), x).all_coeffs())]
    q, m0 = divide_out_root(p, 0)
    q, m1 = divide_out_root(q, 1728)
    assert (m0, m1) == (2, 2)
    assert q == [-3, 1]


def test_exact_sign():
    assert sign_at([-2, 0, 1], Fraction(3, 2)) == 1
    assert sign_at([-4, 0, 1], Fraction(2)) == 0
    assert sign_at([-4, 0, 1], Fraction(-1, 3)) == -1


def test_rational_root_on_midpoint_is_exact():
    # x = 864 is the first bisection midpoint of (0, 1728)
    p = [int(c) for c in reversed(sympy.Poly((x - 864) * (x - 100), x).all_coeffs())]
    ivs = isolate_real_roots(p, 0, 1728)
    assert (Fraction(864), Fraction(864)) in ivs
    assert len(ivs) == 2


def test_open_interval_excludes_endpoints():
    p = [int(c) for c in reversed(sympy.Poly(x * (x - 1728) * (x - 5), x).all_coeffs())]
    assert count_real_roots(p, 0, 1728) == 1


def test_refine_root_brackets_sqrt2():
    lo, hi = refine_root([-2, 0, 1], Fraction(1), Fraction(2), Fraction(1, 10**12))
    assert lo * lo < 2 < hi * hi
    assert hi - lo <= Fraction(1, 10**12)


@given(st.lists(st.integers(-60, 60), min_size=2, max_size=9))
@settings(max_examples=150, deadline=None)
def test_count_matches_sympy(coeffs):
    if all(c == 0 for c in coeffs[1:]):
        return
    p = sym(coeffs)
    expected = p.count_roots(-50, 50) - (1 if p.eval(-50) == 0 else 0) - (1 if p.eval(50) == 0 else 0)
    # count_roots counts with multiplicity-free distinct roots in the closed interval
    assert count_real_roots(coeffs, -50, 50) == expected


@given(st.lists(st.integers(-1728, 3000), min_size=1, max_size=6, unique=True))
@settings(max_examples=80, deadline=None)
def test_isolating_intervals_contain_each_root(roots):
    p = sympy.Poly(sympy.prod([x - r for r in roots]), x)
    coeffs = [int(c) for c in reversed(p.all_coeffs())]
    ivs = isolate_real_roots(coeffs, 0, 1728)
    inside = sorted(r for r in roots if 0 < r < 1728)
    assert len(ivs) == len(inside)
    for (lo, hi), r in zip(ivs, inside):
        assert lo <= r <= hi
    for (a, b), (c, d) in zip(ivs, ivs[1:]):
        assert b <= c

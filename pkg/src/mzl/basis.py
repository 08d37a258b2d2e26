"""The canonical basis ``f_{k,m} = q^{-m} + O(q^{l+1})`` of weakly holomorphic forms.

Each element is built as ``Delta^l * E_{k'} * F(j)`` where ``F`` is a monic
polynomial of degree ``l + m`` found by back-substitution over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .qexact import ExactSeries, delta, eisenstein, jfunction, series_add, series_mul

__all__ = [
    "WeightSplit",
    "BasisForm",
    "split_weight",
    "construct",
    "gap_function",
    "endpoint_orders",
    "KPRIMES",
]

KPRIMES = (0, 4, 6, 8, 10, 14)

# (order at i, order at rho) of E_{k'}, weighted as in the valence formula
_EISENSTEIN_CORNER_ORDERS = {
    0: (Fraction(0), Fraction(0)),
    4: (Fraction(0), Fraction(1, 3)),
    6: (Fraction(1, 2), Fraction(0)),
    8: (Fraction(0), Fraction(2, 3)),
    10: (Fraction(1, 2), Fraction(1, 3)),
    14: (Fraction(1, 2), Fraction(2, 3)),
}

MIN_CACHE_TRUNC = 16


@dataclass(frozen=True)
class WeightSplit:
    k: int
    ell: int
    kprime: int

    def __post_init__(self):
        if self.kprime not in KPRIMES or self.k != 12 * self.ell + self.kprime:
            raise ValueError(f"invalid weight split {self}")


def split_weight(k: int) -> WeightSplit:
    """Write ``k = 12*l + k'`` with ``k'`` in {0, 4, 6, 8, 10, 14}."""
    if k % 2:
        raise ValueError(f"weight must be even, got {k}")
    r = k % 12
    kprime = 14 if r == 2 else r
    return WeightSplit(k, (k - kprime) // 12, kprime)


@dataclass(frozen=True)
class BasisForm:
    """``f_{k,m}`` with its polynomial ``F`` and a cached exact expansion.

    ``F`` is stored lowest degree first: ``F(j) = sum(F[i] * j**i)``.
    """

    split: WeightSplit
    m: int
    F: tuple
    expansion: ExactSeries = field(repr=False, compare=False)

    @property
    def k(self) -> int:
        return self.split.k

    @property
    def ell(self) -> int:
        return self.split.ell

    @property
    def kprime(self) -> int:
        return self.split.kprime

    @property
    def degree(self) -> int:
        return len(self.F) - 1

    def F_is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.F)

    def F_integer_coeffs(self) -> list[int]:
        if not self.F_is_integral():
            raise ValueError(f"F for f_{{{self.k},{self.m}}} has non-integer coefficients")
        return [c.numerator for c in self.F]

    def expand(self, trunc: int) -> ExactSeries:
        """Recompute the expansion through ``q**trunc`` from ``Delta^l E_{k'} F(j)``."""
        if trunc <= self.expansion.trunc:
            return self.expansion.truncate(trunc)
        powers = _base_times_j_powers(self.split, self.degree, trunc)
        return _combine(self.F, powers).truncate(trunc)


def _base_times_j_powers(split: WeightSplit, d: int, target: int) -> list[ExactSeries]:
    """``[base * j**i for i in 0..d]`` each valid through at least ``q**target``."""
    ell = split.ell
    slack = d + abs(ell) + 2
    while True:
        t = target + slack
        dl = delta(t + 2)
        base = series_mul(dl**ell, eisenstein(split.kprime, t + 2 * abs(ell) + 2))
        j = jfunction(t)
        powers = [base]
        for _ in range(d):
            powers.append(series_mul(powers[-1], j))
        if min(p.trunc for p in powers) >= target:
            return powers
        slack += d + 4


def _combine(F, powers) -> ExactSeries:
    out = None
    for c, p in zip(F, powers):
        if c == 0:
            continue
        term = p * c
        out = term if out is None else series_add(out, term)
    if out is None:
        t = min(p.trunc for p in powers)
        return ExactSeries(t + 1, (), t)
    return out


@lru_cache(maxsize=512)
def construct(k: int, m: int) -> BasisForm:
    """Build ``f_{k,m}``.

    The series ``base * j**i`` starts at ``q**(l - i)`` with leading coefficient
    1, so matching ``q^{-m}, ..., q^{l}`` against ``i = d, ..., 0`` is a
    unit-triangular system solved top-down.
    """
    split = split_weight(k)
    ell = split.ell
    if m < -ell:
        raise ValueError(f"f_{{{k},{m}}} does not exist: need m >= -l = {-ell}")
    d = ell + m
    target = max(ell + 1, MIN_CACHE_TRUNC)
    powers = _base_times_j_powers(split, d, target)
    F = [Fraction(0)] * (d + 1)
    F[d] = Fraction(1)
    for i in range(d - 1, -1, -1):
        e = ell - i  # exponent pinned down by the coefficient of j^i
        acc = Fraction(0)
        for t in range(i + 1, d + 1):
            if F[t]:
                acc += F[t] * powers[t].coefficient(e)
        F[i] = -acc
    expansion = _combine(F, powers).truncate(target)
    return BasisForm(split, m, tuple(F), expansion)


def gap_function(k: int) -> BasisForm:
    """``G_k = f_{k,0} = 1 + O(q^{l+1})``."""
    if k < 4 or k % 2:
        raise ValueError(f"gap functions need even k >= 4, got {k}")
    return construct(k, 0)


def _root_multiplicity(F, root: int) -> int:
    coeffs = list(F)
    mult = 0
    while len(coeffs) > 1:
        # synthetic division by (x - root), highest degree first
        rev = coeffs[::-1]
        quot = [rev[0]]
        for c in rev[1:]:
            quot.append(c + root * quot[-1])
        remainder = quot.pop()
        if remainder != 0:
            break
        mult += 1
        coeffs = quot[::-1]
    return mult


def endpoint_orders(form: BasisForm) -> tuple[Fraction, Fraction]:
    """Valence-weighted vanishing orders of ``form`` at ``i`` and at ``rho``.

    ``j - 1728`` vanishes to order 2 at ``i`` and ``j`` to order 3 at ``rho``,
    so each root of ``F`` at those values contributes exactly 1 after weighting.
    """
    ei, erho = _EISENSTEIN_CORNER_ORDERS[form.kprime]
    return ei + _root_multiplicity(form.F, 1728), erho + _root_multiplicity(form.F, 0)

"""Exact arithmetic on truncated Laurent series in q.

A series ``s`` stands for ``sum(s.coeffs[i] * q**(s.lead + i)) + O(q**(s.trunc + 1))``.
Every operation returns the truncation it can actually vouch for, so callers
never read a coefficient that depends on terms that were dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "ExactSeries",
    "bernoulli",
    "divisor_sigma",
    "eisenstein",
    "delta",
    "jfunction",
    "series_add",
    "series_mul",
    "series_pow",
]

EISENSTEIN_WEIGHTS = (0, 4, 6, 8, 10, 14)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


@dataclass(frozen=True)
class ExactSeries:
    """Truncated Laurent series with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``q**(lead + i)`` and the expansion is
    valid through ``q**trunc``. Leading zeros are stripped on construction, so
    ``lead`` is the true order whenever the series is not ``O(q**(trunc+1))``.
    """

    lead: int
    coeffs: tuple
    trunc: int

    def __post_init__(self):
        coeffs = tuple(_as_fraction(c) for c in self.coeffs)
        if len(coeffs) != self.trunc - self.lead + 1:
            raise ValueError(
                f"need {self.trunc - self.lead + 1} coefficients for "
                f"q^{self.lead}..q^{self.trunc}, got {len(coeffs)}"
            )
        lead = self.lead
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        object.__setattr__(self, "lead", lead + start)
        object.__setattr__(self, "coeffs", coeffs[start:])

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, lead: int = 0, trunc: int | None = None) -> ExactSeries:
        """Build from a coefficient list starting at ``q**lead``.

        With ``trunc=None`` the list is taken to be complete through its last
        entry; a longer ``trunc`` pads with exact zeros (a polynomial).
        """
        coeffs = list(coeffs)
        if trunc is None:
            trunc = lead + len(coeffs) - 1
        n = trunc - lead + 1
        if n < 0:
            raise ValueError("trunc below lead")
        coeffs = coeffs[:n] + [0] * (n - len(coeffs))
        return cls(lead, tuple(coeffs), trunc)

    @classmethod
    def constant(cls, c, trunc: int) -> ExactSeries:
        return cls.from_coeffs([c], 0, trunc)

    @classmethod
    def monomial(cls, n: int, trunc: int, c=1) -> ExactSeries:
        return cls.from_coeffs([c], n, trunc)

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficient(n)

    def coefficient(self, n: int) -> Fraction:
        """Coefficient of ``q**n``; raises if ``n`` lies beyond the valid range."""
        if n > self.trunc:
            raise ValueError(f"q^{n} is beyond the valid truncation q^{self.trunc}")
        if n < self.lead:
            return Fraction(0)
        return self.coeffs[n - self.lead]

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise ZeroDivisionError("series is O(q^trunc); no leading coefficient")
        return self.coeffs[0]

    def items(self) -> Iterable[tuple[int, Fraction]]:
        for i, c in enumerate(self.coeffs):
            yield self.lead + i, c

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def truncate(self, trunc: int) -> ExactSeries:
        if trunc > self.trunc:
            raise ValueError("cannot extend a truncated series")
        if trunc < self.lead:
            return ExactSeries(trunc + 1, (), trunc)
        return ExactSeries(self.lead, self.coeffs[: trunc - self.lead + 1], trunc)

    def __neg__(self) -> ExactSeries:
        return ExactSeries(self.lead, tuple(-c for c in self.coeffs), self.trunc)

    def __add__(self, other) -> ExactSeries:
        if not isinstance(other, ExactSeries):
            other = ExactSeries.constant(_as_fraction(other), self.trunc)
        return series_add(self, other)

    __radd__ = __add__

    def __sub__(self, other) -> ExactSeries:
        if not isinstance(other, ExactSeries):
            other = ExactSeries.constant(_as_fraction(other), self.trunc)
        return series_add(self, -other)

    def __rsub__(self, other) -> ExactSeries:
        return (-self).__add__(other)

    def __mul__(self, other) -> ExactSeries:
        if isinstance(other, ExactSeries):
            return series_mul(self, other)
        c = _as_fraction(other)
        return ExactSeries(self.lead, tuple(c * a for a in self.coeffs), self.trunc)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> ExactSeries:
        return series_pow(self, e)

    def inverse(self) -> ExactSeries:
        """Laurent inverse; the leading coefficient must be nonzero."""
        if not self.coeffs:
            raise ZeroDivisionError("cannot invert a series with zero leading coefficient")
        # a = c q^lead (1 + u), valid to relative order trunc - lead.
        n = self.trunc - self.lead
        a = self.coeffs
        a0 = a[0]
        if all(c.denominator == 1 for c in a) and abs(a0) == 1:
            ai = [c.numerator for c in a]
            s = ai[0]
            b = [s]
            for i in range(1, n + 1):
                acc = 0
                for t in range(1, i + 1):
                    acc += ai[t] * b[i - t]
                b.append(-s * acc)
        else:
            inv0 = 1 / a0
            b = [inv0]
            for i in range(1, n + 1):
                acc = Fraction(0)
                for t in range(1, i + 1):
                    acc += a[t] * b[i - t]
                b.append(-inv0 * acc)
        return ExactSeries(-self.lead, tuple(b), -self.lead + n)

    def __truediv__(self, other) -> ExactSeries:
        if isinstance(other, ExactSeries):
            return series_mul(self, other.inverse())
        return self * (1 / _as_fraction(other))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactSeries):
            return NotImplemented
        return (self.lead, self.coeffs, self.trunc) == (other.lead, other.coeffs, other.trunc)

    def __hash__(self):
        return hash((self.lead, self.coeffs, self.trunc))

    def __repr__(self) -> str:
        terms = []
        for n, c in list(self.items())[:6]:
            if c:
                terms.append(f"{c}*q^{n}")
        body = " + ".join(terms) if terms else "0"
        return f"ExactSeries({body} + O(q^{self.trunc + 1}))"


def series_add(a: ExactSeries, b: ExactSeries) -> ExactSeries:
    trunc = min(a.trunc, b.trunc)
    lead = min(a.lead, b.lead, trunc + 1)
    out = [Fraction(0)] * (trunc - lead + 1)
    for s in (a, b):
        for n, c in s.items():
            if n > trunc:
                break
            out[n - lead] += c
    return ExactSeries(lead, tuple(out), trunc)


def series_mul(a: ExactSeries, b: ExactSeries) -> ExactSeries:
    """Product valid through ``min(a.trunc + b.lead, b.trunc + a.lead)``."""
    if a.is_zero() or b.is_zero():
        trunc = min(a.trunc + b.lead, b.trunc + a.lead)
        return ExactSeries(trunc + 1, (), trunc)
    trunc = min(a.trunc + b.lead, b.trunc + a.lead)
    lead = a.lead + b.lead
    n = trunc - lead + 1
    if n <= 0:
        return ExactSeries(trunc + 1, (), trunc)
    ac, bc = a.coeffs[:n], b.coeffs[:n]
    if all(c.denominator == 1 for c in ac) and all(c.denominator == 1 for c in bc):
        ai = [c.numerator for c in ac]
        bi = [c.numerator for c in bc]
        out = [0] * n
        for i, x in enumerate(ai):
            if x:
                for t in range(min(len(bi), n - i)):
                    out[i + t] += x * bi[t]
    else:
        out = [Fraction(0)] * n
        for i, x in enumerate(ac):
            if x:
                for t in range(min(len(bc), n - i)):
                    out[i + t] += x * bc[t]
    return ExactSeries(lead, tuple(out), trunc)


def series_pow(a: ExactSeries, e: int) -> ExactSeries:
    """Integer power; negative exponents go through the Laurent inverse."""
    if e < 0:
        return series_pow(a.inverse(), -e)
    if e == 0:
        # relative precision of a carries over to a^0 = 1
        return ExactSeries.constant(1, a.trunc - a.lead)
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number ``B_n`` (``B_1 = -1/2``) via sum_j C(n+1, j) B_j = 0.

    Odd ``n > 1`` is rejected: those values vanish and nothing here needs them.
    """
    if n < 0 or (n % 2 and n != 1):
        raise ValueError(f"bernoulli: n must be 0, 1 or even, got {n}")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    # B_1 = -1/2 is the only odd term that enters the recurrence
    total = Fraction(1) + (n + 1) * Fraction(-1, 2)
    for j in range(2, n, 2):
        total += comb(n + 1, j) * bernoulli(j)
    return -total / (n + 1)


def divisor_sigma(n: int, power: int) -> int:
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**power
            e = n // d
            if e != d:
                total += e**power
        d += 1
    return total


@lru_cache(maxsize=64)
def eisenstein(k: int, trunc: int) -> ExactSeries:
    """Normalized Eisenstein series ``E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n``."""
    if k % 2 or k == 2 or k < 0:
        raise ValueError(f"eisenstein: weight must be 0 or an even integer >= 4, got {k}")
    if trunc < 0:
        raise ValueError("eisenstein: trunc must be >= 0")
    if k == 0:
        return ExactSeries.constant(1, trunc)
    factor = -Fraction(2 * k) / bernoulli(k)
    coeffs = [Fraction(1)] + [factor * divisor_sigma(n, k - 1) for n in range(1, trunc + 1)]
    return ExactSeries(0, tuple(coeffs), trunc)


@lru_cache(maxsize=64)
def delta(trunc: int) -> ExactSeries:
    """The discriminant ``(E_4^3 - E_6^2)/1728``, valid through ``q**trunc``."""
    if trunc < 1:
        raise ValueError("delta: trunc must be >= 1")
    e4 = eisenstein(4, trunc)
    e6 = eisenstein(6, trunc)
    return (e4**3 - e6**2) / 1728


@lru_cache(maxsize=64)
def jfunction(trunc: int) -> ExactSeries:
    """Klein's ``j = E_4^3 / Delta``, valid through ``q**trunc``."""
    if trunc < -1:
        raise ValueError("jfunction: trunc must be >= -1")
    # Delta^{-1} through q^t needs Delta through q^{t+2}
    d = delta(trunc + 2)
    return (eisenstein(4, trunc + 1) ** 3 * d.inverse()).truncate(trunc)

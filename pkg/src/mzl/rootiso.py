"""Exact real-root isolation for integer polynomials (Descartes bisection).

Polynomials are coefficient lists, lowest degree first.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

__all__ = [
    "to_primitive_int",
    "poly_gcd",
    "squarefree_part",
    "sign_at",
    "isolate_real_roots",
    "count_real_roots",
    "refine_root",
    "divide_out_root",
]


def _strip(p: list) -> list:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def to_primitive_int(p) -> list[int]:
    """Scale a rational polynomial to a primitive integer one with positive lead."""
    p = _strip([Fraction(c) for c in p])
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _derivative(p: list) -> list:
    return [i * c for i, c in enumerate(p)][1:] or [0]


def _poly_rem(a: list, b: list) -> list:
    a = [Fraction(c) for c in a]
    b = _strip([Fraction(c) for c in b])
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] / lb
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
    return _strip(a) if a else [Fraction(0)]


def poly_gcd(a, b) -> list[int]:
    a = _strip([Fraction(c) for c in a])
    b = _strip([Fraction(c) for c in b])
    while any(b):
        a, b = b, _poly_rem(a, b)
    return to_primitive_int(a)


def _exact_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for s in range(len(a) - 1 - db, -1, -1):
        coef = Fraction(a[s + db], b[-1])
        q[s] = coef
        for i, c in enumerate(b):
            a[s + i] -= coef * c
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return to_primitive_int(q)


def squarefree_part(p) -> list[int]:
    p = to_primitive_int(p)
    if len(p) <= 2:
        return p
    g = poly_gcd(p, _derivative(p))
    if len(g) == 1:
        return p
    return _exact_div(p, g)


def divide_out_root(p, r) -> tuple[list, int]:
    """Remove the factor ``(x - r)`` as often as it divides; return quotient and count."""
    p = list(p)
    mult = 0
    while len(p) > 1:
        rev = p[::-1]
        quot = [rev[0]]
        for c in rev[1:]:
            quot.append(c + r * quot[-1])
        if quot.pop() != 0:
            break
        mult += 1
        p = quot[::-1]
    return p, mult


def sign_at(p: list[int], x: Fraction) -> int:
    """Exact sign of ``p(x)`` at a rational point."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    d = len(p) - 1
    total = 0
    nk = 1
    dk = den**d
    for c in p:
        total += c * nk * dk
        nk *= num
        dk //= den
    return (total > 0) - (total < 0)


def _sign_variations(p: list[int]) -> int:
    v = 0
    last = 0
    for c in p:
        if c:
            if last and (c > 0) != (last > 0):
                v += 1
            last = c
    return v


def _taylor_shift1(p: list[int]) -> list[int]:
    """Coefficients of ``p(x + 1)``."""
    a = list(p)
    n = len(a)
    for i in range(n - 1):
        for t in range(n - 2, i - 1, -1):
            a[t] += a[t + 1]
    return a


def _descartes_bound_01(p: list[int]) -> int:
    """Sign variations of ``(1+x)^d p(1/(1+x))``: bounds roots in (0, 1)."""
    return _sign_variations(_taylor_shift1(p[::-1]))


def _affine(p: list[int], a: Fraction, w: Fraction) -> list[int]:
    """Integer polynomial proportional to ``p(a + w t)``."""
    # p(a + w t): Horner in the polynomial ring over Q, then clear denominators
    out = [Fraction(0)]
    for c in reversed(p):
        nxt = [Fraction(0)] * (len(out) + 1)
        for i, v in enumerate(out):
            nxt[i] += v * a
            nxt[i + 1] += v * w
        nxt[0] += c
        out = nxt
    return to_primitive_int(out) if any(out) else [0]


def isolate_real_roots(p, lo, hi) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals each holding exactly one root of squarefree ``p`` in open ``(lo, hi)``.

    An interval ``(r, r)`` marks an exact rational root. Endpoints of the other
    intervals are never roots, so ``p`` changes sign across each of them.
    """
    p = to_primitive_int(p)
    lo, hi = Fraction(lo), Fraction(hi)
    if len(p) == 1:
        return []
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi - lo, _affine(p, lo, hi - lo))]
    while stack:
        a, w, q = stack.pop()
        v = _descartes_bound_01(q)
        if v == 0:
            continue
        if v == 1:
            out.append((a, a + w))
            continue
        mid = a + w / 2
        half = [c * 2 ** (len(q) - 1 - i) for i, c in enumerate(q)]  # 2^d q(t/2)
        right = _taylor_shift1(half)  # 2^d q((t+1)/2)
        if right[0] == 0:
            out.append((mid, mid))
            right = right[1:]
            # t divides the shifted polynomial; drop the root at t = 0
        stack.append((a, w / 2, half))
        stack.append((mid, w / 2, right))
    out.sort()
    # exact roots at midpoints or at lo/hi may sit on the edge of a neighbouring
    # interval; divide them out and pull such edges inward without crossing the root
    exact = sorted({a for a, b in out if a == b} | {e for e in (lo, hi) if sign_at(p, e) == 0})
    reduced = p
    for r in exact:
        reduced = _exact_div(reduced, [-r.numerator, r.denominator])
    fixed = []
    for a, b in out:
        if a != b:
            if sign_at(p, a) == 0:
                a = _nudge(reduced, a, b)
            if sign_at(p, b) == 0:
                b = _nudge(reduced, b, a)
        fixed.append((a, b))
    return fixed


def _nudge(p: list[int], edge: Fraction, other: Fraction) -> Fraction:
    """A point between ``edge`` and the single root of ``p`` on the way to ``other``."""
    s = sign_at(p, edge)
    step = (other - edge) / 2
    while True:
        c = edge + step
        if sign_at(p, c) == s:
            return c
        step /= 2


def count_real_roots(p, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the open interval ``(lo, hi)``."""
    return len(isolate_real_roots(squarefree_part(p), lo, hi))


def refine_root(p: list[int], lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Exact bisection until ``hi - lo <= width``; the bracket keeps a sign change."""
    if lo == hi:
        return lo, hi
    slo = sign_at(p, lo)
    shi = sign_at(p, hi)
    if slo == 0 or shi == 0 or slo == shi:
        raise ValueError("bracket does not isolate a simple root")
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sign_at(p, mid)
        if s == 0:
            return mid, mid
        if s == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi

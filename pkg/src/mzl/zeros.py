"""Certified zeros of ``f_{k,m}`` on the open arc and an interlacing checker.

On the open arc ``Delta`` and ``E_{k'}`` never vanish and ``j`` decreases
strictly from 1728 to 0, so the interior zeros are exactly the roots of ``F``
in ``(0, 1728)``. Those are isolated exactly and then pulled back through ``j``.
A sign scan of the real trace runs as an independent second route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath
from mpmath import mp, mpf

from .arceval import EvalConfig, arc_factors, j_on_arc, j_on_arc_float, real_trace
from .basis import BasisForm, endpoint_orders
from .rootiso import (
    divide_out_root,
    isolate_real_roots,
    refine_root,
    squarefree_part,
    to_primitive_int,
)

__all__ = [
    "ZeroSet",
    "InterlaceVerdict",
    "ZeroMismatchError",
    "MultiplicityError",
    "OverlapError",
    "isolate_zeros",
    "sign_scan_zeros",
    "count_expected",
    "interlace_check",
    "restrict",
    "zero_sets_agree",
    "root_disposition",
    "ARC_LO",
    "ARC_HI",
]

ARC_LO = math.pi / 2
ARC_HI = 2 * math.pi / 3
DEFAULT_RADIUS = 1e-12
MERGE_TOL = 1e-12


class ZeroMismatchError(RuntimeError):
    """Exact isolation and the sign scan disagree."""


class MultiplicityError(RuntimeError):
    """Two zeros coincide (or nearly so); a multiple zero is outside the expected regime."""


class OverlapError(RuntimeError):
    """Certification intervals of two zeros overlap, so their order is undecided."""


@dataclass(frozen=True)
class ZeroSet:
    k: int
    m: int
    zeros_theta: tuple
    radii: tuple
    endpoint_i: Fraction
    endpoint_rho: Fraction
    method: str  # "poly-isolation" or "sign-scan"

    def __post_init__(self):
        if len(self.zeros_theta) != len(self.radii):
            raise ValueError("zeros and radii differ in length")
        for (a, ra), (b, rb) in zip(zip(self.zeros_theta, self.radii), zip(self.zeros_theta[1:], self.radii[1:])):
            if not b - a > ra + rb:
                raise MultiplicityError(f"zeros {a} and {b} of f_{{{self.k},{self.m}}} are not separated")

    def __len__(self) -> int:
        return len(self.zeros_theta)

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "zeros_theta": list(self.zeros_theta),
            "radii": list(self.radii),
            "endpoint_i": str(self.endpoint_i),
            "endpoint_rho": str(self.endpoint_rho),
            "method": self.method,
        }


@dataclass(frozen=True)
class InterlaceVerdict:
    ok: bool
    witness: Optional[tuple]
    first_belongs_to: Optional[str]
    last_belongs_to: Optional[str]

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "witness": list(self.witness) if self.witness else None,
            "first_belongs_to": self.first_belongs_to,
            "last_belongs_to": self.last_belongs_to,
        }


# --- exact side --------------------------------------------------------------


def _interior_polynomial(form: BasisForm) -> list[int]:
    """Integer polynomial with the roots of F, minus any roots at 0 and 1728."""
    p = to_primitive_int(form.F)
    p, _ = divide_out_root(p, 0)
    p, _ = divide_out_root(p, 1728)
    return p


def count_expected(form: BasisForm) -> int:
    """Distinct real roots of ``F`` in the open interval (0, 1728), counted exactly."""
    p = _interior_polynomial(form)
    if len(p) == 1:
        return 0
    return len(isolate_real_roots(squarefree_part(p), 0, 1728))


def root_disposition(form: BasisForm) -> dict:
    """Where the roots of ``F`` sit: at the corners, inside (0,1728), elsewhere."""
    p = to_primitive_int(form.F)
    p, at0 = divide_out_root(p, 0)
    p, at1728 = divide_out_root(p, 1728)
    sf = squarefree_part(p) if len(p) > 1 else p
    interior = len(isolate_real_roots(sf, 0, 1728)) if len(sf) > 1 else 0
    repeated = (len(p) - 1) - (len(sf) - 1)
    if len(sf) > 1:
        bound = 1 + max(abs(Fraction(c, sf[-1])) for c in sf[:-1])
        real_total = len(isolate_real_roots(sf, -bound, bound))
    else:
        real_total = 0
    return {
        "degree": form.degree,
        "at_0": at0,
        "at_1728": at1728,
        "interior": interior,
        "real_outside": real_total - interior,
        "nonreal": (len(sf) - 1) - real_total,
        "repeated": repeated,
    }


# --- pulling j-roots back to the arc -----------------------------------------


def _theta_seed(r: float) -> float:
    """Double-precision solution of ``j(e^{i theta}) = r`` by bisection."""
    lo, hi = ARC_LO, ARC_HI
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if j_on_arc_float(mid) > r:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _j_slope(theta: float) -> float:
    h = 1e-7
    a = max(theta - h, ARC_LO + 1e-12)
    b = min(theta + h, ARC_HI - 1e-12)
    return abs(j_on_arc_float(b) - j_on_arc_float(a)) / (b - a)


def _certify_bracket(lo_j: Fraction, hi_j: Fraction, theta: mpf, radius: mpf, cfg: EvalConfig) -> bool:
    """True if ``j`` is above ``hi_j`` at ``theta - radius`` and below ``lo_j`` at ``theta + radius``."""
    with mp.workprec(cfg.prec_bits):
        left = theta - radius
        right = theta + radius
        if left <= mp.pi / 2 or right >= 2 * mp.pi / 3:
            return False
        jl = j_on_arc(left, cfg)
        jr = j_on_arc(right, cfg)
        hi_v = mpf(hi_j.numerator) / hi_j.denominator
        lo_v = mpf(lo_j.numerator) / lo_j.denominator
        return jl.value - jl.est_error > hi_v and jr.value + jr.est_error < lo_v


def _pull_back(p: list[int], lo: Fraction, hi: Fraction, cfg: EvalConfig, target: float) -> tuple[float, float]:
    """Map an isolated root of ``p`` in ``(lo, hi)`` to ``(theta, radius)`` with radius < target."""
    seed = _theta_seed(float((lo + hi) / 2))
    slope = max(_j_slope(seed), 1e-300)
    width = Fraction(slope * target / 8) or Fraction(1, 1 << 200)
    lo, hi = refine_root(p, lo, hi, width)
    with mp.workprec(cfg.prec_bits):
        mid_j = (lo + hi) / 2
        r = mpf(mid_j.numerator) / mid_j.denominator
        theta = _refine_theta(r, mpf(_theta_seed(float(mid_j))), cfg)
        radius = mpf(target) / 16
        while radius < target:
            if _certify_bracket(lo, hi, theta, radius, cfg):
                # float rounding of the center is covered by the 1e-15 pad
                return float(theta), float(radius) + 1e-15
            radius *= 2
    raise ZeroMismatchError(f"could not certify the pull-back of the root in ({float(lo)}, {float(hi)})")


def _refine_theta(r: mpf, seed: mpf, cfg: EvalConfig) -> mpf:
    """Newton-secant polish of ``j(theta) = r`` at working precision."""
    h = mpf(10) ** -8
    x0, x1 = seed - h, seed + h
    lo, hi = mp.pi / 2, 2 * mp.pi / 3
    x0 = min(max(x0, lo + mpf(10) ** -14), hi - mpf(10) ** -14)
    x1 = min(max(x1, lo + mpf(10) ** -14), hi - mpf(10) ** -14)
    f0 = j_on_arc(x0, cfg).value - r
    f1 = j_on_arc(x1, cfg).value - r
    for _ in range(30):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        x2 = min(max(x2, lo + mpf(10) ** -14), hi - mpf(10) ** -14)
        x0, f0 = x1, f1
        x1 = x2
        f1 = j_on_arc(x1, cfg).value - r
        if abs(x1 - x0) < mpf(10) ** -25:
            break
    return x1


def isolate_zeros(
    form: BasisForm,
    cfg: EvalConfig | None = None,
    *,
    target_radius: float = DEFAULT_RADIUS,
    cross_check: bool = False,
) -> ZeroSet:
    """Certified zeros of ``form`` on the open arc via exact root isolation of ``F``.

    With ``cross_check=True`` the sign scan is run as well and any disagreement
    raises ``ZeroMismatchError``.
    """
    cfg = cfg or EvalConfig()
    p = _interior_polynomial(form)
    ends = endpoint_orders(form)
    zeros: list[tuple[float, float]] = []
    if len(p) > 1:
        sf = squarefree_part(p)
        if len(sf) != len(p):
            g_roots = _repeated_interior_roots(p, sf)
            if g_roots:
                raise MultiplicityError(f"F of f_{{{form.k},{form.m}}} has a repeated root in (0, 1728)")
        for lo, hi in isolate_real_roots(sf, 0, 1728):
            zeros.append(_pull_back(sf, lo, hi, cfg, target_radius))
    zeros.sort()
    zs = ZeroSet(
        form.k,
        form.m,
        tuple(z for z, _ in zeros),
        tuple(r for _, r in zeros),
        ends[0],
        ends[1],
        "poly-isolation",
    )
    if cross_check:
        scan = sign_scan_zeros(form, cfg, target_radius=target_radius)
        if not zero_sets_agree(zs, scan):
            raise ZeroMismatchError(
                f"f_{{{form.k},{form.m}}}: poly-isolation found {len(zs)} zeros, sign scan {len(scan)}"
            )
    return zs


def _repeated_interior_roots(p: list[int], sf: list[int]) -> int:
    from .rootiso import _exact_div

    rest = _exact_div(p, sf)
    if len(rest) == 1:
        return 0
    return len(isolate_real_roots(squarefree_part(rest), 0, 1728))


# --- independent route: sign scan of the real trace ---------------------------


def scan_spacing(k: int, m: int) -> float:
    return min(1e-3, math.pi / (4 * (abs(k) + 2 * math.sqrt(3) * math.pi * max(m, 1))))


def sign_scan_zeros(form: BasisForm, cfg: EvalConfig | None = None, *, target_radius: float = DEFAULT_RADIUS) -> ZeroSet:
    """Zeros of the real trace found by a uniform sign scan refined by Illinois steps."""
    cfg = cfg or EvalConfig()
    h = scan_spacing(form.k, form.m)
    n = int(math.ceil((ARC_HI - ARC_LO) / h))
    with mp.workprec(cfg.prec_bits):
        lo = mp.pi / 2
        step = (2 * mp.pi / 3 - lo) / n
        grid = [lo + i * step for i in range(1, n)]
    vals = [_signed(form, t, cfg) for t in grid]
    zeros: list[tuple[float, float]] = []
    for i in range(len(grid) - 1):
        a, b = vals[i], vals[i + 1]
        if a[0] == 0:
            raise MultiplicityError(f"real trace indistinguishable from 0 at theta={float(grid[i])}")
        if a[0] != b[0] and b[0] != 0:
            zeros.append(_illinois(form, grid[i], grid[i + 1], a[1], b[1], cfg, target_radius))
    if vals and vals[-1][0] == 0:
        raise MultiplicityError("real trace indistinguishable from 0 at the last grid point")
    ends = endpoint_orders(form)
    return ZeroSet(form.k, form.m, tuple(z for z, _ in zeros), tuple(r for _, r in zeros), ends[0], ends[1], "sign-scan")


def _signed(form: BasisForm, theta, cfg: EvalConfig):
    v = real_trace(form, theta, cfg)
    if abs(v.value) <= v.est_error:
        return 0, v.value
    return (1 if v.value > 0 else -1), v.value


def _illinois(form, a, b, fa, fb, cfg, target):
    """Bracketing false position with the Illinois modification."""
    with mp.workprec(cfg.prec_bits):
        side = 0
        for _ in range(200):
            if b - a <= 2 * target:
                break
            c = (a * fb - b * fa) / (fb - fa)
            # keep strictly inside and make sure the bracket shrinks by a useful amount
            if not (a < c < b):
                c = (a + b) / 2
            sc, fc = _signed(form, c, cfg)
            if sc == 0:
                # value below its own error: bracket tightly around c
                r = mpf(target) / 4
                sl, _ = _signed(form, c - r, cfg)
                sr, _ = _signed(form, c + r, cfg)
                if sl != 0 and sr != 0 and sl != sr:
                    return float(c), float(r) + 1e-15
                c = (a + b) / 2
                sc, fc = _signed(form, c, cfg)
                if sc == 0:
                    raise MultiplicityError(f"cannot resolve the sign of the real trace near {float(c)}")
            if (fc > 0) == (fa > 0):
                a, fa = c, fc
                if side == -1:
                    fb /= 2
                side = -1
            else:
                b, fb = c, fc
                if side == 1:
                    fa /= 2
                side = 1
        mid = (a + b) / 2
        return float(mid), float((b - a) / 2) + 1e-15


def zero_sets_agree(a: ZeroSet, b: ZeroSet) -> bool:
    """Same count and each pair within the sum of certification radii."""
    if len(a) != len(b):
        return False
    return all(abs(x - y) <= rx + ry for x, rx, y, ry in zip(a.zeros_theta, a.radii, b.zeros_theta, b.radii))


def restrict(zs: ZeroSet, upper: float) -> ZeroSet:
    """Zeros strictly below ``upper`` (the arc with its rho end trimmed)."""
    keep = [(z, r) for z, r in zip(zs.zeros_theta, zs.radii) if z + r < upper]
    straddle = [z for z, r in zip(zs.zeros_theta, zs.radii) if z - r < upper <= z + r]
    if straddle:
        raise OverlapError(f"zero {straddle[0]} straddles the cut at {upper}")
    return ZeroSet(zs.k, zs.m, tuple(z for z, _ in keep), tuple(r for _, r in keep), zs.endpoint_i, zs.endpoint_rho, zs.method)


def interlace_check(a: ZeroSet, b: ZeroSet) -> InterlaceVerdict:
    """Strict alternation of the merged zero list of ``a`` and ``b``."""
    merged = sorted(
        [(z, r, "A") for z, r in zip(a.zeros_theta, a.radii)] + [(z, r, "B") for z, r in zip(b.zeros_theta, b.radii)]
    )
    for (x, rx, sx), (y, ry, sy) in zip(merged, merged[1:]):
        if sx != sy and not y - x > rx + ry:
            raise OverlapError(f"zeros {x} ({sx}) and {y} ({sy}) are not separated by their radii")
    if not merged:
        return InterlaceVerdict(True, None, None, None)
    witness = None
    for i in range(len(merged) - 1):
        if merged[i][2] == merged[i + 1][2]:
            witness = (i, i + 1)
            break
    return InterlaceVerdict(witness is None, witness, merged[0][2], merged[-1][2])

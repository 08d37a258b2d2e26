"""Trigonometric surrogates for the real trace and checks of their zero geometry.

``b(theta) = k theta/2 - 2 pi m cos(theta)`` drives the cosine model ``2 cos(b)``;
the variants replace ``k`` by ``k + 12`` or ``m`` by ``m + 1``. Near ``rho`` the
model picks up a residue term, giving ``H_k``. These are surrogates, so plain
double precision with bisection to ``1e-15`` is enough.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .basis import split_weight

__all__ = [
    "CosModel",
    "ResidueModel",
    "ModelReport",
    "VARIANTS",
    "monotone_hypothesis",
    "b_value",
    "b_derivative",
    "cos_model_zeros",
    "check_lemma_3_1",
    "max_gap_bound",
    "check_max_gap",
    "check_prop_3_4",
    "h_value",
    "h_derivative",
    "h_model_zeros",
    "cosine_zeros",
    "check_h_shift",
    "h_interlace",
    "linear_model",
    "linear_remainder",
    "random_valid_pair",
    "model_property_suite",
]

PI = math.pi
ARC_LO = PI / 2
ARC_HI = 2 * PI / 3
H_LO = 7 * PI / 12
BISECT_TOL = 1e-15
SHARED_TOL = 1e-12

VARIANTS = ("base", "k_plus_12", "m_plus_1")


def monotone_hypothesis(k: int, m: int) -> bool:
    """``m >= |l| - l``, under which ``b`` increases on the arc."""
    ell = split_weight(k).ell
    return m >= abs(ell) - ell


@dataclass(frozen=True)
class CosModel:
    k: int
    m: int
    variant: str = "base"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def k_eff(self) -> int:
        return self.k + 12 if self.variant == "k_plus_12" else self.k

    @property
    def m_eff(self) -> int:
        return self.m + 1 if self.variant == "m_plus_1" else self.m

    def base(self) -> CosModel:
        return CosModel(self.k, self.m, "base")


@dataclass(frozen=True)
class ResidueModel:
    k: int

    def __post_init__(self):
        if self.k < 4:
            raise ValueError("H_k needs k >= 4")


@dataclass
class ModelReport:
    name: str
    params: dict
    ok: bool
    conditions: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "ok": self.ok,
            "conditions": self.conditions,
            "witnesses": self.witnesses,
        }


def b_value(model: CosModel, theta: float) -> float:
    return model.k_eff * theta / 2 - 2 * PI * model.m_eff * math.cos(theta)


def b_derivative(model: CosModel, theta: float) -> float:
    return model.k_eff / 2 + 2 * PI * model.m_eff * math.sin(theta)


def _bisect_increasing(f, target: float, lo: float, hi: float) -> float:
    flo = f(lo) - target
    for _ in range(200):
        if hi - lo <= BISECT_TOL:
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid) - target
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _require_hypothesis(k: int, m: int) -> None:
    if not monotone_hypothesis(k, m):
        ell = split_weight(k).ell
        raise ValueError(f"(k={k}, m={m}) violates m >= |l| - l = {abs(ell) - ell}")


def cos_model_zeros(model: CosModel) -> list[float]:
    """Solutions of ``b(theta) = pi/2 mod pi`` in the open arc, ascending."""
    _require_hypothesis(model.k, model.m)
    b = lambda t: b_value(model, t)  # noqa: E731
    b_lo, b_hi = b(ARC_LO), b(ARC_HI)
    # targets (n + 1/2) pi strictly between b_lo and b_hi
    n = math.floor(b_lo / PI - 0.5) + 1
    out = []
    while True:
        target = (n + 0.5) * PI
        if target >= b_hi:
            break
        if target > b_lo:
            out.append(_bisect_increasing(b, target, ARC_LO, ARC_HI))
        n += 1
    # the quarter-turn values at pi/2 land exactly on a target when k = 2 mod 4
    return [t for t in out if ARC_LO + 1e-13 < t < ARC_HI - 1e-13]


def check_lemma_3_1(k: int, m: int, variant: str) -> ModelReport:
    """The four sufficient conditions for the base and variant cosine zeros to interlace."""
    if variant == "base":
        raise ValueError("variant must be k_plus_12 or m_plus_1")
    _require_hypothesis(k, m)
    base = cos_model_zeros(CosModel(k, m, "base"))
    star = cos_model_zeros(CosModel(k, m, variant))
    params = {"k": k, "m": m, "variant": variant}
    witnesses = []
    if not star:
        conds = {"first_is_star": not base, "last_is_star": not base, "no_shared": True, "one_between": True}
        return ModelReport("cos_model_conditions", params, all(conds.values()), conds)
    first = not base or star[0] < base[0]
    last = not base or star[-1] > base[-1]
    min_dist = min((abs(a - c) for a in star for c in base), default=math.inf)
    no_shared = min_dist > SHARED_TOL
    one_between = True
    for a1, a2 in zip(star, star[1:]):
        inside = [c for c in base if a1 < c < a2]
        if len(inside) != 1:
            one_between = False
            witnesses.append({"interval": [a1, a2], "count": len(inside)})
    # every base zero must fall between star zeros
    covered = all(star[0] < c < star[-1] for c in base)
    conds = {
        "first_is_star": first,
        "last_is_star": last,
        "no_shared": no_shared,
        "one_between": one_between and covered,
        "one_more_zero": len(star) == len(base) + 1,
    }
    return ModelReport("cos_model_conditions", params, all(conds.values()), conds, witnesses)


def max_gap_bound(k: int, m: int) -> float:
    """Upper bound ``2 pi / (k + 2 sqrt(3) m pi)`` on consecutive cosine-zero gaps."""
    _require_hypothesis(k, m)
    return 2 * PI / (k + 2 * math.sqrt(3) * m * PI)


def check_max_gap(k: int, m: int) -> ModelReport:
    zs = cos_model_zeros(CosModel(k, m))
    bound = max_gap_bound(k, m)
    gaps = [b - a for a, b in zip(zs, zs[1:])]
    bad = [{"gap": g, "at": i} for i, g in enumerate(gaps) if g > bound * (1 + 1e-12)]
    return ModelReport(
        "max_gap",
        {"k": k, "m": m},
        not bad,
        {"bound": bound, "max_gap": max(gaps, default=0.0)},
        bad,
    )


def check_prop_3_4(k: int, m: int, variant: str) -> ModelReport:
    """``beta1 - alpha1 < beta2 - alpha2`` and ``alpha2 - beta1 > alpha3 - beta2`` on every triple."""
    if variant == "base":
        raise ValueError("variant must be k_plus_12 or m_plus_1")
    _require_hypothesis(k, m)
    if variant == "k_plus_12" and k < 0:
        raise ValueError("the k+12 comparison needs k >= 0")
    star = cos_model_zeros(CosModel(k, m, variant))
    base = cos_model_zeros(CosModel(k, m, "base"))
    witnesses = []
    triples = 0
    for a1, a2, a3 in zip(star, star[1:], star[2:]):
        b1 = [c for c in base if a1 < c < a2]
        b2 = [c for c in base if a2 < c < a3]
        if len(b1) != 1 or len(b2) != 1:
            witnesses.append({"triple": [a1, a2, a3], "reason": "not interleaved"})
            continue
        triples += 1
        be1, be2 = b1[0], b2[0]
        left = be1 - a1 < be2 - a2
        right = a2 - be1 > a3 - be2
        if not (left and right):
            witnesses.append({"triple": [a1, a2, a3], "betas": [be1, be2], "left": left, "right": right})
    return ModelReport(
        "prop_3_4",
        {"k": k, "m": m, "variant": variant},
        not witnesses,
        {"triples": triples},
        witnesses,
    )


# --- the residue model H_k near rho ------------------------------------------


def h_value(k: int, theta: float) -> float:
    return 2 * math.cos(k * theta / 2) + (2 * math.cos(theta / 2)) ** (-k)


def h_derivative(k: int, theta: float) -> float:
    c = 2 * math.cos(theta / 2)
    return -k * math.sin(k * theta / 2) + 0.5 * k * math.tan(theta / 2) * c ** (-k)


def _sign_scan(f, lo: float, hi: float, step: float) -> list[float]:
    n = max(2, math.ceil((hi - lo) / step))
    grid = [lo + i * (hi - lo) / n for i in range(n)]  # excludes hi
    vals = [f(t) for t in grid]
    out = []
    for i in range(len(grid) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0:
            out.append(grid[i])
        elif (a < 0) != (b < 0) and b != 0:
            lo_, hi_, flo = grid[i], grid[i + 1], a
            while hi_ - lo_ > BISECT_TOL:
                mid = 0.5 * (lo_ + hi_)
                fm = f(mid)
                if fm == 0:
                    lo_ = hi_ = mid
                    break
                if (fm < 0) == (flo < 0):
                    lo_, flo = mid, fm
                else:
                    hi_ = mid
            out.append(0.5 * (lo_ + hi_))
    return out


def h_model_zeros(k: int) -> list[float]:
    """Zeros of ``H_k`` in ``[7pi/12, 2pi/3)`` by a sign scan at spacing ``pi/(4k)``."""
    ResidueModel(k)
    return _sign_scan(lambda t: h_value(k, t), H_LO, ARC_HI, PI / (4 * k))


def cosine_zeros(k: int, lo: float = ARC_LO, hi: float = ARC_HI) -> list[float]:
    """Zeros ``(2n+1) pi / k`` of ``cos(k theta / 2)`` in ``[lo, hi]``."""
    n0 = max(0, math.ceil((lo * k / PI - 1) / 2))
    out = []
    n = n0
    while True:
        t = (2 * n + 1) * PI / k
        if t > hi:
            break
        if t >= lo:
            out.append(t)
        n += 1
    return out


def check_h_shift(k: int) -> ModelReport:
    """Each zero of ``H_k`` lies within ``pi/(3k)`` of its cosine zero once that is past ``7pi/12``."""
    hz = h_model_zeros(k)
    cz = cosine_zeros(k, ARC_LO, ARC_HI)
    bound = PI / (3 * k)
    witnesses = []
    max_shift = 0.0
    for a in hz:
        star = min(cz, key=lambda c: abs(c - a)) if cz else None
        if star is None or star < H_LO:
            continue
        d = abs(a - star)
        max_shift = max(max_shift, d)
        if not d < bound:
            witnesses.append({"zero": a, "cosine_zero": star, "shift": d})
    for star in cz:
        # the window must sit inside the scanned range
        if star - bound < H_LO or star + bound >= ARC_HI:
            continue
        if not any(abs(a - star) < bound for a in hz):
            witnesses.append({"cosine_zero": star, "reason": "no H_k zero within pi/(3k)"})
    return ModelReport("h_shift", {"k": k}, not witnesses, {"bound": bound, "max_shift": max_shift}, witnesses)


def h_interlace(k: int) -> ModelReport:
    """Alternation of the zeros of ``H_k`` and ``H_{k+12}`` on ``[7pi/12, 2pi/3)``."""
    a = h_model_zeros(k)
    b = h_model_zeros(k + 12)
    merged = sorted([(t, "A") for t in a] + [(t, "B") for t in b])
    witnesses = [
        {"index": i, "theta": [merged[i][0], merged[i + 1][0]]}
        for i in range(len(merged) - 1)
        if merged[i][1] == merged[i + 1][1] or merged[i + 1][0] - merged[i][0] <= SHARED_TOL
    ]
    return ModelReport("h_interlace", {"k": k}, not witnesses, {"counts": [len(a), len(b)]}, witnesses)


# --- first-order model near pi/2 ----------------------------------------------


def linear_model(k: int, m: int, theta: float) -> float:
    """Tangent line of ``b`` at ``pi/2``: ``k pi/4 + (k + 4 m pi)/2 (theta - pi/2)``."""
    return k * PI / 4 + (k + 4 * m * PI) / 2 * (theta - ARC_LO)


def linear_remainder(k: int, m: int, theta: float) -> float:
    """``L_{k,m}(theta) - b(theta)``; nonnegative on the arc because ``b`` is concave there."""
    return linear_model(k, m, theta) - b_value(CosModel(k, m), theta)


def random_valid_pair(rng, k_range: tuple[int, int] = (-120, 600), m_extra: int = 40) -> tuple[int, int]:
    """Draw an even ``k`` and an ``m`` satisfying the monotone hypothesis."""
    k = 2 * rng.randint(k_range[0] // 2, k_range[1] // 2)
    ell = split_weight(k).ell
    m0 = abs(ell) - ell
    return k, rng.randint(m0, m0 + m_extra)


def model_property_suite(draws: int = 200, seed: int = 0, h_range: range = range(50, 301, 2)) -> list[ModelReport]:
    """Cosine-model, gap and triple checks on random pairs, plus the ``H_k`` shift check over ``h_range``."""
    import random

    rng = random.Random(seed)
    out = []
    for _ in range(draws):
        k, m = random_valid_pair(rng)
        for variant in ("k_plus_12", "m_plus_1"):
            out.append(check_lemma_3_1(k, m, variant))
            if variant == "m_plus_1" or k >= 0:
                out.append(check_prop_3_4(k, m, variant))
        out.append(check_max_gap(k, m))
    out.extend(check_h_shift(k) for k in h_range)
    return out

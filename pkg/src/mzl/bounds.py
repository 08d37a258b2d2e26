"""Explicit constants, bound functions and inequalities behind the interlacing argument.

Everything here is either a closed-form evaluation or a sampled check. A
``BoundReport`` records one inequality ``lhs < rhs``; sweeps and threshold
searches are built from them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
from mpmath import mp, mpf

from .arceval import EvalConfig, arc_factors, delta_value, modular_values, real_trace
from .basis import construct, gap_function, split_weight
from .models import CosModel, b_value, cos_model_zeros, cosine_zeros, h_derivative, h_model_zeros, h_value
from .zeros import isolate_zeros

__all__ = [
    "BoundReport",
    "ThresholdResult",
    "c_of_k",
    "epsilon_bound",
    "interval1_gap",
    "beta_alpha_lower_bounds",
    "t_function",
    "b_lower_bound",
    "interval2_constant",
    "threshold_predicate",
    "threshold_search",
    "PREDICATES",
    "residue_rhs",
    "residue_inequality_check",
    "interval_points",
    "verify_delta_constants",
    "verify_interval_two_constant",
    "overlap_zero_count",
    "near_pi2_gap_bounds",
    "near_rho_gap_bounds",
    "gap_floor",
    "derivative_floor",
    "check_derivative_floor",
    "check_h_derivative_floor",
    "theorem2_inequality",
    "certified_onset",
    "zero_shift_check",
    "DEFAULT_E",
    "RESIDUE_CASES",
    "residue_suite",
]

PI = math.pi
SQRT3 = math.sqrt(3)
ARC_LO = PI / 2
ARC_HI = 2 * PI / 3
INTERVAL_ONE_HI = 1.9
INTERVAL_TWO_LO = 7 * PI / 12
HEIGHTS = {"one": 0.75, "two": 0.65}

ARC_DELTA_MAX = 0.00481
SEGMENT_DELTA_MIN = 0.00721
DELTA_QUOTIENT = 0.66713
LEADING_ERROR_BOUND = 1.985
DEFAULT_E = 0.6

FAMILIES = {"06": (0, 6), "410": (4, 10), "814": (8, 14)}


@dataclass(frozen=True)
class BoundReport:
    """One inequality ``lhs < rhs``; ``holds`` is computed, never passed in."""

    name: str
    params: dict
    lhs: float
    rhs: float
    paper_claim: str | None = None
    notes: dict = field(default_factory=dict, compare=False)

    @property
    def holds(self) -> bool:
        return self.lhs < self.rhs

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def relative_margin(self) -> float:
        """``(rhs - lhs) / |bound|`` where the bound is whichever side is the fixed constant."""
        ref = self.notes.get("reference")
        ref = abs(ref) if ref else max(abs(self.rhs), abs(self.lhs))
        return self.slack / ref if ref else math.inf

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
            "slack": self.slack,
            "paper_claim": self.paper_claim,
            **({"notes": self.notes} if self.notes else {}),
        }


# --- closed forms -------------------------------------------------------------


class _FloatOps:
    pi = math.pi
    cos = staticmethod(math.cos)
    sin = staticmethod(math.sin)
    num = float


class _MpOps:
    """mpmath versions of the same operations; use inside ``mp.workprec``."""

    cos = staticmethod(mpmath.cos)
    sin = staticmethod(mpmath.sin)
    num = mpf

    @property
    def pi(self):
        return +mp.pi


def _with_prec(prec: int | None, fn):
    if prec is None:
        return fn(_FloatOps())
    with mp.workprec(prec):
        return fn(_MpOps())


def c_of_k(k: int, prec: int | None = None):
    """``2.97 (.66713)^((k-14)/12)``, a bound on ``|g - 2cos(k theta/2)|`` valid for ``G_k``.

    With ``prec`` the value is an mpmath number computed at that many bits.
    """
    return _with_prec(prec, lambda M: M.num("2.97") * M.num("0.66713") ** (M.num(k - 14) / 12))


def epsilon_bound(C: float, k: int) -> float:
    """Largest distance ``pi C / (2k)`` a zero can move when ``|g - 2cos(k theta/2)| < C``."""
    if not C < 2:
        raise ValueError(f"need C < 2, got {C}")
    if k <= 0:
        raise ValueError("k must be positive")
    return PI * C / (2 * k)


def interval1_gap(k: int) -> float:
    """Lower bound on the distance between zeros of ``cos(k theta/2)`` and ``cos((k+12) theta/2)``."""
    if k < 4:
        raise ValueError("k must be >= 4")
    base = PI / k - PI / (k + 12)
    return base if split_weight(k).kprime in (0, 4, 8) else 2 * base


def beta_alpha_lower_bounds(k: int) -> float:
    """Lower bound on ``alpha - beta`` intervals near ``rho`` for the residue class of ``k``."""
    if k < 4:
        raise ValueError("k must be >= 4")
    kp = split_weight(k).kprime
    K = k + 12
    shift = PI / (3 * k) + PI / (3 * K)
    lead = {
        0: PI / k,
        4: 5 * PI / (3 * k) - 2 * PI / (3 * K),
        6: 3 * PI / (2 * k) - PI / (2 * K),
        8: 4 * PI / (3 * k) - PI / (3 * K),
        10: 7 * PI / (6 * k) - PI / (6 * K),
        14: 11 * PI / (6 * k) - 5 * PI / (6 * K),
    }[kp]
    return lead - shift


def _t_offsets(family: str, k: int, n: int, M) -> tuple:
    K = k + 12
    pi = M.pi
    if family == "06":
        return (2 * n + 1) * pi / k, (2 * n + 1) * pi / K
    if family == "410":
        return (6 * n + 5) * pi / (3 * k), (6 * n + 5) * pi / (3 * K)
    if family == "814":
        return (6 * n + 7) * pi / (3 * k), (6 * n + 7) * pi / (3 * K)
    raise ValueError(f"unknown family {family!r}")


def _t(family: str, k: int, n: int, M):
    if k <= 0 or n < 0:
        raise ValueError("need k > 0 and n >= 0")
    a, b = _t_offsets(family, k, n, M)
    top = 2 * M.pi / 3
    t1 = top - a
    t2 = top - b + M.pi / (3 * (k + 12))
    for t in (t1, t2):
        if not M.pi / 2 <= t < top:
            raise ValueError(f"T_{family}({k}, {n}) evaluates cos at theta={float(t):.6g} outside [pi/2, 2pi/3)")
    num = 1 - (2 * M.cos(t1 / 2)) ** -12
    den = (2 * M.cos(t2 / 2)) ** k
    return num / den


def t_function(family: str, k: int, n: int, prec: int | None = None):
    """Upper bound on ``(2cos(t/2))^{-k} (1 - (2cos(t/2))^{-12})`` between the two zeros."""
    return _with_prec(prec, lambda M: _t(family, k, n, M))


def b_lower_bound(family: str, k: int, prec: int | None = None):
    """Lower bound on ``beta - alpha`` intervals near ``rho`` from the derivative bound ``4k + 24``."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if split_weight(k).kprime not in FAMILIES[family]:
        raise ValueError(f"k={k} is not in the residue classes of family {family}")
    K = k + 12

    def value(M):
        if family == "06":
            s, t = M.sin(3 * M.pi / K), _t("06", k, 1, M)
        elif family == "410":
            s, t = M.sin(4 * M.pi / (3 * K)), _t("410", k, 0, M)
        else:
            s, t = M.sin(7 * M.pi / K), _t("814", k, 0, M)
        return (s - t) / (4 * k + 24)

    return _with_prec(prec, value)


_FAMILY_EXPONENT = {"06": 6, "410": 10, "814": 14}


def _family_of(k: int) -> str:
    kp = split_weight(k).kprime
    return next(f for f, ks in FAMILIES.items() if kp in ks)


def interval2_constant(k: int) -> float:
    """``2.24 (.44)^((k - e)/12)`` with ``e`` = 6, 10, 14 by residue family."""
    return 2.24 * 0.44 ** ((k - _FAMILY_EXPONENT[_family_of(k)]) / 12)


def overlap_zero_count(k: int, combined: bool = True) -> int:
    """Zeros of ``cos(k theta/2)`` and ``cos((k+12) theta/2)`` in ``[7pi/12, 1.9]``.

    With ``combined=False`` only the first family is counted.
    """
    if k < 4:
        raise ValueError("k must be >= 4")
    n = len(cosine_zeros(k, INTERVAL_TWO_LO, INTERVAL_ONE_HI))
    if combined:
        n += len(cosine_zeros(k + 12, INTERVAL_TWO_LO, INTERVAL_ONE_HI))
    return n


# --- threshold predicates -----------------------------------------------------


def _pred_epsilon(k: int) -> BoundReport | None:
    return BoundReport("epsilon", {"k": k}, epsilon_bound(c_of_k(k), k) if c_of_k(k) < 2 else math.inf,
                       0.5 * (PI / k - PI / (k + 12)), "k >= 118")


def _pred_family(family: str, claim: str):
    def pred(k: int) -> BoundReport | None:
        if _family_of(k) != family:
            return None
        lhs = 2.24 * 0.44 ** ((k - _FAMILY_EXPONENT[family]) / 12) * 20 / (7 * k)
        try:
            rhs = 0.5 * b_lower_bound(family, k)
        except ValueError:
            rhs = -math.inf
        return BoundReport(f"b{family}", {"k": k}, lhs, rhs, claim)

    return pred


def _pred_overlap(k: int) -> BoundReport | None:
    return BoundReport("overlap", {"k": k}, 1, overlap_zero_count(k, combined=False), None)


def _pred_overlap_combined(k: int) -> BoundReport | None:
    return BoundReport("overlap_combined", {"k": k}, 1, overlap_zero_count(k, combined=True), "k >= 94")


PREDICATES = {
    "epsilon": (_pred_epsilon, 118),
    "b06": (_pred_family("06", "k >= 102"), 102),
    "b410": (_pred_family("410", "k >= 128"), 128),
    "b814": (_pred_family("814", "k >= 98"), 98),
    "overlap": (_pred_overlap, None),
    "overlap_combined": (_pred_overlap_combined, 94),
}


def threshold_predicate(name: str, k: int) -> BoundReport | None:
    """The named inequality at ``k``, or ``None`` when ``k`` is outside its residue classes."""
    return PREDICATES[name][0](k)


@dataclass
class ThresholdResult:
    name: str
    k_min: int
    k_max: int
    threshold: int | None
    claimed_threshold: int | None
    exceptions: list[int]
    min_slack: float | None
    reports: list[BoundReport] = field(repr=False, default_factory=list)

    @property
    def confirms_claim(self) -> bool:
        """Every applicable ``k`` from the claimed threshold up to ``k_max`` satisfies the inequality."""
        if self.claimed_threshold is None:
            return False
        return all(r.holds for r in self.reports if r.params["k"] >= self.claimed_threshold)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "k_min": self.k_min,
            "k_max": self.k_max,
            "threshold": self.threshold,
            "claimed_threshold": self.claimed_threshold,
            "confirms_claim": self.confirms_claim,
            "exceptions": self.exceptions,
            "min_slack": self.min_slack,
        }


def threshold_search(inequality, k_max: int, k_min: int = 4) -> ThresholdResult:
    """Smallest applicable even ``k`` from which the inequality holds through ``k_max``.

    ``inequality`` is a registered name or a callable ``k -> BoundReport | None``.
    Applicable ``k`` below the threshold where it nonetheless holds are listed as exceptions.
    """
    if isinstance(inequality, str):
        pred, claim = PREDICATES[inequality]
        name = inequality
    else:
        pred, claim, name = inequality, None, getattr(inequality, "__name__", "custom")
    reports = []
    for k in range(k_min + (k_min % 2), k_max + 1, 2):
        r = pred(k)
        if r is not None:
            reports.append(r)
    threshold = None
    for r in reversed(reports):
        if not r.holds:
            break
        threshold = r.params["k"]
    below = [r.params["k"] for r in reports if threshold is None or r.params["k"] < threshold]
    exceptions = [k for k, r in zip(below, reports) if r.holds]
    tail = [r.slack for r in reports if threshold is not None and r.params["k"] >= threshold]
    return ThresholdResult(name, k_min, k_max, threshold, claim, exceptions, min(tail) if tail else None, reports)


# --- the residue inequalities ---------------------------------------------------


@lru_cache(maxsize=1 << 14)
def _segment_values(x: float, height: float, prec: int, tol: float, max_terms: int):
    cfg = EvalConfig(prec, tol, max_terms)
    (d, _), (e4, _), (e6, _) = modular_values(mpmath.mpc(x, height), cfg)
    with mp.workprec(prec):
        return d, e4, e6, e4**3 / d


def _eisenstein_from(kprime: int, e4, e6):
    return {0: 1, 4: e4, 6: e6, 8: e4 * e4, 10: e4 * e6, 14: e4 * e4 * e6}[kprime]


def interval_points(interval: str, n: int) -> list[float]:
    """``n`` uniform points: ``(pi/2, 1.9]`` for interval one, ``[7pi/12, 2pi/3)`` for interval two."""
    if interval == "one":
        lo, hi = ARC_LO, INTERVAL_ONE_HI
        return [lo + (hi - lo) * (i + 1) / n for i in range(n)]
    if interval == "two":
        lo, hi = INTERVAL_TWO_LO, ARC_HI
        return [lo + (hi - lo) * i / n for i in range(n)]
    raise ValueError(f"unknown interval {interval!r}")


def _check_interval(theta: float, interval: str) -> None:
    if interval == "one" and not ARC_LO < theta <= INTERVAL_ONE_HI:
        raise ValueError("interval one needs theta in (pi/2, 1.9]")
    if interval == "two" and not INTERVAL_TWO_LO <= theta < ARC_HI:
        raise ValueError("interval two needs theta in [7pi/12, 2pi/3)")
    if interval not in HEIGHTS:
        raise ValueError(f"unknown interval {interval!r}")


def residue_rhs(k: int, m: int, theta: float, interval: str, cfg: EvalConfig | None = None, x_grid: int = 201) -> float:
    """Maximum over ``|x| <= 1/2`` of the contour-integral majorant at height ``.75`` or ``.65``."""
    cfg = cfg or EvalConfig()
    _check_interval(theta, interval)
    if x_grid < 201:
        raise ValueError("x_grid must be at least 201")
    A = HEIGHTS[interval]
    split = split_weight(k)
    ell, kp = split.ell, split.kprime
    f = arc_factors(theta, cfg)
    with mp.workprec(cfg.prec_bits):
        d_arc = abs(f.delta)
        ek_arc = abs(f.eisenstein(kp)[0])
        j_arc = f.j
        pref = mpmath.exp(-2 * mp.pi * m * (mpmath.sin(mpf(theta)) - mpf(A)))

        def integrand(x: float) -> mpf:
            d, e4, e6, j = _segment_values(float(x), A, cfg.prec_bits, cfg.tol, cfg.max_terms)
            other = _eisenstein_from(14 - kp, e4, e6)
            return pref * (d_arc / abs(d)) ** ell * abs(ek_arc * other / (d * (j - j_arc)))

        xs = [-0.5 + i / (x_grid - 1) for i in range(x_grid)]
        vals = [integrand(x) for x in xs]
        i = max(range(x_grid), key=lambda t: vals[t])
        best = vals[i]
        lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, x_grid - 1)]
        # golden-section refinement on the bracket around the grid argmax
        g = (math.sqrt(5) - 1) / 2
        a, b = lo, hi
        c, dd = b - g * (b - a), a + g * (b - a)
        fc, fd = integrand(c), integrand(dd)
        for _ in range(40):
            if fc > fd:
                b, dd, fd = dd, c, fc
                c = b - g * (b - a)
                fc = integrand(c)
            else:
                a, c, fc = c, dd, fd
                dd = a + g * (b - a)
                fd = integrand(dd)
        best = max(best, fc, fd)
        return float(best)


def residue_inequality_check(
    k: int, m: int, theta: float, interval: str, cfg: EvalConfig | None = None, x_grid: int = 201
) -> BoundReport:
    """``|g - 2cos(b)| (minus the extra residue term on interval two)`` against its majorant."""
    cfg = cfg or EvalConfig()
    _check_interval(theta, interval)
    form = construct(k, m)
    g = float(real_trace(form, theta, cfg).value)
    lhs = g - 2 * math.cos(b_value(CosModel(k, m), theta))
    if interval == "two":
        lhs -= (-1) ** m * math.exp(-PI * m * (2 * math.sin(theta) - math.tan(theta / 2))) / (2 * math.cos(theta / 2)) ** k
    rhs = residue_rhs(k, m, theta, interval, cfg, x_grid)
    return BoundReport(
        f"residue_{interval}",
        {"k": k, "m": m, "theta": theta, "height": HEIGHTS[interval]},
        abs(lhs),
        rhs,
        None,
        {"signed_lhs": lhs},
    )


# --- sampled constants -------------------------------------------------------------

SAMPLING_CFG = EvalConfig(prec_bits=128, tol=1e-25, max_terms=400)


def _abs_delta(z, cfg: EvalConfig) -> float:
    return float(abs(delta_value(z, cfg)[0]))


def verify_delta_constants(grid: int = 10_000, cfg: EvalConfig | None = None) -> dict[str, BoundReport]:
    """Sampled ``|Delta|`` extremes on the arc and on the horizontal segments.

    Reports, each as ``lhs < rhs``: the arc maximum against ``.00481``, ``.00721``
    against the segment minimum at height ``.75``, their quotient against
    ``.66713``, and the analogous quotient at height ``.65`` against ``.44``.
    """
    if grid < 1000:
        raise ValueError("grid must be at least 1000")
    cfg = cfg or SAMPLING_CFG
    thetas = [ARC_LO + (ARC_HI - ARC_LO) * i / (grid - 1) for i in range(grid)]
    xs = [-0.5 + i / (grid - 1) for i in range(grid)]
    arc = max(_abs_delta(mpmath.expj(t), cfg) for t in thetas)
    seg75 = min(_abs_delta(mpmath.mpc(x, 0.75), cfg) for x in xs)
    seg65 = min(_abs_delta(mpmath.mpc(x, 0.65), cfg) for x in xs)
    params = {"grid": grid}
    return {
        "arc_max": BoundReport("arc_delta_max", params, arc, ARC_DELTA_MAX, "< .00481", {"reference": ARC_DELTA_MAX}),
        "segment_min": BoundReport(
            "segment_delta_min", {**params, "height": 0.75}, SEGMENT_DELTA_MIN, seg75, "> .00721",
            {"reference": SEGMENT_DELTA_MIN},
        ),
        "quotient": BoundReport(
            "delta_quotient", {**params, "height": 0.75}, arc / seg75, DELTA_QUOTIENT, "< .66713",
            {"reference": DELTA_QUOTIENT},
        ),
        "quotient_two": BoundReport(
            "delta_quotient", {**params, "height": 0.65}, arc / seg65, 0.44, None, {"reference": 0.44}
        ),
    }


def verify_interval_two_constant(k: int, samples: int = 50, cfg: EvalConfig | None = None) -> BoundReport:
    """Sampled ``max |g - H_k|`` on ``[7pi/12, 2pi/3)`` for ``G_k`` against ``2.24 (.44)^((k-e)/12)``."""
    cfg = cfg or EvalConfig()
    form = gap_function(k)
    worst = 0.0
    for t in interval_points("two", samples):
        g = float(real_trace(form, t, cfg).value)
        worst = max(worst, abs(g - h_value(k, t)))
    return BoundReport("interval_two_constant", {"k": k, "samples": samples}, worst, interval2_constant(k))


# --- gap bounds and the general inequality -------------------------------------------


def near_pi2_gap_bounds(k: int, m: int, variant: str) -> float:
    """Lower bound on the first zero gap near ``pi/2`` for the weight or index comparison.

    Returns ``-inf`` when the expression's denominators are not positive.
    """
    if variant == "k_plus_12":
        s1, s2 = k + 4 * m * PI, k + 12 + 4 * m * PI
        if s1 <= 0:
            return -math.inf
        return PI / s1 - PI / s2
    if variant == "m_plus_1":
        s1, s2 = k + 4 * PI * m, k + 4 * PI * (m + 1)
        s3 = (m + 1) * (k + 2 * PI * SQRT3 * (m + 1))
        if s1 <= 0 or s3 <= 0:
            return -math.inf
        return PI * (2 + s1) / (2 * s1) - PI * (2 + s2) / (2 * s2) - 2 / s3
    raise ValueError("variant must be k_plus_12 or m_plus_1")


def _rho_slope(k: float, m: float) -> float:
    return k / 2 + SQRT3 * PI * m


def near_rho_gap_bounds(k: int, m: int, variant: str) -> float:
    """Gap between the last model zeros before ``2pi/3`` from tangent lines anchored there.

    Both ``b`` and ``b_*`` meet ``2pi/3`` at the same phase modulo ``pi``, at
    distance ``delta0`` past their last zero, so the tangent-line zeros sit at
    ``2pi/3 - delta0/s`` with ``s`` the slope. This is an analogue of the bound
    near ``pi/2``, not a closed form taken from elsewhere.
    """
    b_end = b_value(CosModel(k, m), ARC_HI)
    delta0 = (b_end - PI / 2) % PI or PI
    s = _rho_slope(k, m)
    if variant == "k_plus_12":
        s_star = _rho_slope(k + 12, m)
    elif variant == "m_plus_1":
        s_star = _rho_slope(k, m + 1)
    else:
        raise ValueError("variant must be k_plus_12 or m_plus_1")
    if s <= 0:
        return -math.inf
    return delta0 * (1 / s - 1 / s_star)


def gap_floor(k: int, m: int) -> float:
    """``M(k, m)``: the smallest of the two near-``pi/2`` and two near-``2pi/3`` gap bounds."""
    return min(
        near_pi2_gap_bounds(k, m, "k_plus_12"),
        near_pi2_gap_bounds(k, m, "m_plus_1"),
        near_rho_gap_bounds(k, m, "k_plus_12"),
        near_rho_gap_bounds(k, m, "m_plus_1"),
    )


def _check_E(E: float) -> None:
    if not 0 < E < math.sqrt(2) / 2:
        raise ValueError(f"E must lie in (0, sqrt(2)/2), got {E}")


def derivative_floor(k: int, m: int, E: float = DEFAULT_E) -> float:
    """``E (k + 2 sqrt(3) pi m)``: claimed floor for ``|d/dtheta 2cos(b)|`` near model zeros."""
    _check_E(E)
    return E * (k + 2 * SQRT3 * PI * m)


def check_derivative_floor(k: int, m: int, E: float = DEFAULT_E, samples: int = 33) -> BoundReport:
    """Sample ``|(k + 4 pi m sin t) sin b(t)|`` within ``pi/(2(|k| + 4 pi m))`` of each model zero."""
    floor = derivative_floor(k, m, E)
    model = CosModel(k, m)
    half = PI / (2 * (abs(k) + 4 * PI * m))
    worst = math.inf
    for a in cos_model_zeros(model):
        for i in range(samples):
            t = min(max(a - half + 2 * half * i / (samples - 1), ARC_LO), ARC_HI)
            worst = min(worst, abs((k + 4 * PI * m * math.sin(t)) * math.sin(b_value(model, t))))
    return BoundReport("derivative_floor", {"k": k, "m": m, "E": E, "samples": samples}, floor, worst)


def check_h_derivative_floor(k: int, samples: int = 33) -> BoundReport:
    """Sample ``|H_k'|`` within ``pi/(6k)`` of each zero of ``H_k`` against ``7k/20``.

    Only zeros below ``2pi/3 - 2pi/(3(k+12))`` are used: past that point the
    residue term's derivative is no longer small next to the cosine's.
    """
    cap = ARC_HI - 2 * PI / (3 * (k + 12))
    half = PI / (6 * k)
    worst = math.inf
    for a in h_model_zeros(k):
        if a > cap:
            continue
        for i in range(samples):
            t = a - half + 2 * half * i / (samples - 1)
            worst = min(worst, abs(h_derivative(k, t)))
    return BoundReport("h_derivative_floor", {"k": k, "samples": samples}, 7 * k / 20, worst)


def theorem2_inequality(
    k: int, m: int, epsilon: float = 0.1, E: float = DEFAULT_E, variant: str | None = None, cfg: EvalConfig | None = None
) -> BoundReport:
    """Zero-displacement bound against half the gap floor on the trimmed arc.

    ``variant`` picks which comparison's gap bounds enter the floor; ``None``
    takes the minimum over both, as in the general statement.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    _check_E(E)
    ell = split_weight(k).ell
    rho = ARC_HI - epsilon
    slope = k + 2 * SQRT3 * PI * m
    if variant is None:
        M = gap_floor(k, m)
    else:
        M = min(near_pi2_gap_bounds(k, m, variant), near_rho_gap_bounds(k, m, variant))
    if slope <= 0:
        lhs = math.inf
    else:
        residue = math.exp(-PI * m * (2 * math.sin(rho) - math.tan(rho / 2))) / (2 * math.cos(rho / 2)) ** k
        lhs = (2.97 * 0.49**m * 0.67**ell + residue) / (E * slope)
    return BoundReport(
        "theorem2",
        {"k": k, "m": m, "epsilon": epsilon, "E": E, "variant": variant or "both"},
        lhs,
        0.5 * M,
        None,
        {"near_rho_bounds": "tangent-line analogue"},
    )


def certified_onset(
    mode: str, fixed: int, values: range, epsilon: float = 0.1, E: float = DEFAULT_E
) -> int | None:
    """Smallest value in ``values`` from which the inequality holds through the end of the range.

    ``mode='weight'`` varies ``k`` at ``m = fixed``; ``mode='index'`` varies ``m`` at ``k = fixed``.
    """
    variant = {"weight": "k_plus_12", "index": "m_plus_1"}[mode]
    onset = None
    for v in reversed(list(values)):
        k, m = (v, fixed) if mode == "weight" else (fixed, v)
        if not theorem2_inequality(k, m, epsilon, E, variant).holds:
            break
        onset = v
    return onset


def zero_shift_check(k: int, cfg: EvalConfig | None = None) -> BoundReport:
    """Largest distance from a zero of ``G_k`` in ``(pi/2, 1.9]`` to the nearest zero of ``cos(k theta/2)``."""
    cfg = cfg or EvalConfig()
    zs = isolate_zeros(gap_function(k), cfg)
    cz = cosine_zeros(k, ARC_LO, ARC_HI)
    worst = 0.0
    for t, r in zip(zs.zeros_theta, zs.radii):
        if t > INTERVAL_ONE_HI:
            continue
        worst = max(worst, min(abs(t - c) for c in cz) + r)
    C = c_of_k(k)
    rhs = epsilon_bound(C, k) if C < 2 else math.inf
    return BoundReport("zero_shift", {"k": k}, worst, rhs)


RESIDUE_CASES = ((52, 0), (100, 0), (148, 0), (0, 5), (0, 10))


def residue_suite(
    cases=RESIDUE_CASES, samples: int = 50, cfg: EvalConfig | None = None, x_grid: int = 201
) -> list[BoundReport]:
    """Both residue inequalities on ``samples`` points per interval, plus ``|g - 2cos| < 1.985`` when ``m = 0``."""
    cfg = cfg or EvalConfig()
    out = []
    for k, m in cases:
        for interval in ("one", "two"):
            for t in interval_points(interval, samples):
                r = residue_inequality_check(k, m, t, interval, cfg, x_grid)
                out.append(r)
                if m == 0 and interval == "one":
                    lhs = r.notes["signed_lhs"]
                    out.append(
                        BoundReport(
                            "leading_error", {"k": k, "theta": t}, abs(lhs), LEADING_ERROR_BOUND, "< 1.985"
                        )
                    )
    return out

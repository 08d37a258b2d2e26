"""Arbitrary-precision evaluation on the arc ``z = e^{i theta}`` and on horizontal lines.

On the arc every weight-``k`` form ``g`` gives a real number ``e^{ik theta/2} g(e^{i theta})``.
We never sum the raw expansion of a large-weight basis element; instead the
normalized factors ``e^{6i theta} Delta``, ``e^{2i theta} E_4``, ``e^{3i theta} E_6`` and
``j`` are computed once per point and combined with the polynomial ``F``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
from mpmath import mp, mpc, mpf

from .basis import BasisForm
from .qexact import ExactSeries, delta, eisenstein

__all__ = [
    "EvalConfig",
    "ArcValue",
    "SegmentValue",
    "PrecisionError",
    "TruncationError",
    "real_trace",
    "real_trace_direct",
    "j_on_arc",
    "j_on_arc_float",
    "eval_on_segment",
    "modular_values",
    "delta_value",
    "arc_factors",
    "DEFAULT_PREC_BITS",
]

DEFAULT_PREC_BITS = 256
PREC_ENV_VAR = "MZL_PREC_BITS"


class PrecisionError(ArithmeticError):
    """A quantity that must be real came out with a visible imaginary part."""


class TruncationError(ArithmeticError):
    """A series did not reach the requested tolerance within the term budget."""


def _default_prec() -> int:
    raw = os.environ.get(PREC_ENV_VAR)
    return int(raw) if raw else DEFAULT_PREC_BITS


@dataclass(frozen=True)
class EvalConfig:
    prec_bits: int = field(default_factory=_default_prec)
    tol: float = 1e-30
    max_terms: int = 400

    def __post_init__(self):
        if self.prec_bits < 64:
            raise ValueError("prec_bits must be >= 64")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.tol < 2.0 ** (1 - self.prec_bits):
            raise ValueError(f"tol={self.tol} is below what {self.prec_bits} bits can resolve")
        if self.max_terms < 8:
            raise ValueError("max_terms must be >= 8")

    def scaled(self, extra_bits: int) -> EvalConfig:
        """Same term budget, ``extra_bits`` more precision and a matching tolerance."""
        if extra_bits <= 0:
            return self
        tol = math.ldexp(self.tol, -extra_bits)
        if tol < 1e-300:
            # below double range: keep the tolerance as an mpmath number
            tol = mpmath.ldexp(mpf(self.tol), -extra_bits)
        return EvalConfig(self.prec_bits + extra_bits, tol, self.max_terms)

    def as_dict(self) -> dict:
        tol = self.tol if isinstance(self.tol, float) else mpmath.nstr(self.tol, 6)
        return {"prec_bits": self.prec_bits, "tol": tol, "max_terms": self.max_terms}


@dataclass(frozen=True)
class ArcValue:
    theta: mpf
    value: mpf
    prec_bits: int
    est_error: mpf

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class SegmentValue:
    x: mpf
    height: mpf
    value: mpc
    prec_bits: int
    est_error: mpf


# --- series summation -------------------------------------------------------

_STANDARD_SIZES = (64, 128, 256, 512, 1024)


@lru_cache(maxsize=None)
def _standard_exact(name: str, nterms: int) -> tuple:
    if name == "E4":
        s = eisenstein(4, nterms)
    elif name == "E6":
        s = eisenstein(6, nterms)
    elif name == "Delta":
        s = delta(nterms)
    else:
        raise KeyError(name)
    return s.lead, tuple(int(c) for c in (s.coefficient(n) for n in range(s.lead, nterms + 1)))


@lru_cache(maxsize=256)
def _numeric_coeffs(name: str, nterms: int, prec: int) -> tuple:
    lead, coeffs = _standard_exact(name, nterms)
    with mp.workprec(prec):
        return lead, tuple(mpf(c) for c in coeffs)


def _sum_terms(lead: int, coeffs, q, tol, prec: int):
    """Sum ``sum c_n q^n`` until three consecutive terms fall under ``tol/8``.

    Returns ``(value, est_error)`` or ``None`` when the coefficients run out first.
    The tail is bounded by a geometric majorant built from the observed term ratio.
    """
    aq = abs(q)
    qn = q**lead
    total = mpc(0)
    small = 0
    mags: list = []
    abs_sum = mpf(0)
    thresh = mpf(tol) / 8
    for i, c in enumerate(coeffs):
        term = c * qn
        total += term
        mag = abs(term)
        abs_sum += mag
        if c != 0:
            mags.append(mag)
        if mag < thresh:
            small += 1
        else:
            small = 0
        if small >= 3 and len(mags) >= 4:
            recent = mags[-4:]
            ratios = [recent[t + 1] / recent[t] for t in range(3) if recent[t] > 0]
            r = max(ratios + [aq])
            if r >= 1:
                small = 0
                qn *= q
                continue
            tail = max(recent[-3:]) * r / (1 - r)
            rounding = abs_sum * (i + 2) * mpf(2) ** (-prec)
            return total, tail + rounding
        qn *= q
    return None


def _sum_standard(name: str, q, cfg: EvalConfig):
    for n in _STANDARD_SIZES:
        if n > max(cfg.max_terms, _STANDARD_SIZES[0]):
            break
        lead, coeffs = _numeric_coeffs(name, n, cfg.prec_bits)
        out = _sum_terms(lead, coeffs, q, cfg.tol, cfg.prec_bits)
        if out is not None:
            return out
    raise TruncationError(f"{name} did not converge to tol={cfg.tol} within {cfg.max_terms} terms")


def modular_values(z, cfg: EvalConfig):
    """``(Delta, E4, E6)`` at ``z`` as ``(mpc, err)`` pairs, summed at ``cfg`` precision."""
    with mp.workprec(cfg.prec_bits):
        z = mpc(z)
        if z.imag < mpf("0.5"):
            raise ValueError("evaluation below height 0.5 is not supported")
        q = mpmath.exp(2j * mp.pi * z)
        return tuple(_sum_standard(name, q, cfg) for name in ("Delta", "E4", "E6"))


def delta_value(z, cfg: EvalConfig):
    """``Delta(z)`` alone as ``(mpc, err)``; cheaper when only ``|Delta|`` is sampled."""
    with mp.workprec(cfg.prec_bits):
        z = mpc(z)
        if z.imag < mpf("0.5"):
            raise ValueError("evaluation below height 0.5 is not supported")
        q = mpmath.exp(2j * mp.pi * z)
        return _sum_standard("Delta", q, cfg)


# --- the normalized real factors on the arc ---------------------------------


@dataclass(frozen=True)
class ArcFactors:
    """Real normalized factors at ``theta`` with absolute error estimates."""

    theta: mpf
    delta: mpf  # e^{6i theta} Delta(e^{i theta})
    e4: mpf  # e^{2i theta} E_4(e^{i theta})
    e6: mpf  # e^{3i theta} E_6(e^{i theta})
    j: mpf
    err_delta: mpf
    err_e4: mpf
    err_e6: mpf
    err_j: mpf
    prec_bits: int

    def eisenstein(self, kprime: int):
        """``e^{ik' theta/2} E_{k'}`` and its error, from ``E_8 = E_4^2`` etc."""
        a, b, ea, eb = self.e4, self.e6, self.err_e4, self.err_e6
        if kprime == 0:
            return mpf(1), mpf(0)
        if kprime == 4:
            return a, ea
        if kprime == 6:
            return b, eb
        if kprime == 8:
            return a * a, 2 * abs(a) * ea
        if kprime == 10:
            return a * b, abs(a) * eb + abs(b) * ea
        if kprime == 14:
            return a * a * b, a * a * eb + 2 * abs(a * b) * ea
        raise ValueError(f"no Eisenstein factor for k'={kprime}")


def _realify(z, err, tol, what: str):
    if abs(z.imag) > max(mpf(tol), 4 * err):
        raise PrecisionError(f"{what}: imaginary part {mpmath.nstr(z.imag, 5)} exceeds tolerance")
    return z.real


@lru_cache(maxsize=1 << 16)
def _arc_factors_cached(theta_key, prec: int, tol: float, max_terms: int) -> ArcFactors:
    cfg = EvalConfig(prec, tol, max_terms)
    with mp.workprec(prec):
        theta = mpf(theta_key)
        z = mpmath.expj(theta)
        (d, ed), (e4, ee4), (e6, ee6) = modular_values(z, cfg)
        with mp.workprec(prec):
            dn = _realify(d * mpmath.expj(6 * theta), ed, tol, "Delta")
            an = _realify(e4 * mpmath.expj(2 * theta), ee4, tol, "E4")
            bn = _realify(e6 * mpmath.expj(3 * theta), ee6, tol, "E6")
            j = an**3 / dn
            err_j = abs(j) * (ed / abs(dn)) + 3 * an * an * ee4 / abs(dn)
        return ArcFactors(theta, dn, an, bn, j, ed, ee4, ee6, err_j, prec)


def _theta_mpf(theta, prec: int) -> mpf:
    with mp.workprec(prec):
        return mpf(theta)


def arc_factors(theta, cfg: EvalConfig) -> ArcFactors:
    th = _theta_mpf(theta, cfg.prec_bits)
    return _arc_factors_cached(th._mpf_, cfg.prec_bits, cfg.tol, cfg.max_terms)


def _in_open_arc(theta: mpf) -> bool:
    return mp.pi / 2 < theta < 2 * mp.pi / 3


_ENDPOINT_SLACK = 1e-15


def j_on_arc(theta, cfg: EvalConfig | None = None) -> ArcValue:
    """Real value of ``j(e^{i theta})`` for theta in ``[pi/2, 2pi/3]``.

    Within ``1e-15`` of an endpoint the exact corner value (1728 or 0) is returned.
    """
    cfg = cfg or EvalConfig()
    with mp.workprec(cfg.prec_bits):
        th = _theta_mpf(theta, cfg.prec_bits)
        lo, hi = mp.pi / 2, 2 * mp.pi / 3
        if th < lo - _ENDPOINT_SLACK or th > hi + _ENDPOINT_SLACK:
            raise ValueError(f"theta={th} outside [pi/2, 2pi/3]")
        if abs(th - lo) <= _ENDPOINT_SLACK:
            # j - 1728 vanishes to second order at i
            return ArcValue(th, mpf(1728), cfg.prec_bits, mpf(10) ** 6 * (th - lo) ** 2)
        if abs(th - hi) <= _ENDPOINT_SLACK:
            return ArcValue(th, mpf(0), cfg.prec_bits, mpf(10) ** 6 * abs(th - hi) ** 3)
        f = arc_factors(th, cfg)
        return ArcValue(th, f.j, cfg.prec_bits, f.err_j)


def _horner_extra_bits(form: BasisForm) -> int:
    big = max(abs(c.numerator) for c in form.F) if form.F else 1
    return int(big).bit_length() + 11 * form.degree + 32


def _form_config(form: BasisForm, cfg: EvalConfig) -> EvalConfig:
    extra = _horner_extra_bits(form)
    # power-of-two buckets so forms of similar size share cached arc factors
    bucket = 64
    while bucket < extra:
        bucket *= 2
    return cfg.scaled(bucket)


def _F_numeric(form: BasisForm, prec: int):
    return _F_numeric_cached(form.F, prec)


@lru_cache(maxsize=1024)
def _F_numeric_cached(F: tuple, prec: int):
    with mp.workprec(prec):
        return tuple(mpf(c.numerator) / c.denominator for c in F)


def real_trace(form: BasisForm, theta, cfg: EvalConfig | None = None) -> ArcValue:
    """``g(theta) = e^{ik theta/2} e^{-2 pi m sin theta} f_{k,m}(e^{i theta})`` for theta in open I."""
    cfg = cfg or EvalConfig()
    wcfg = _form_config(form, cfg)
    prec = wcfg.prec_bits
    with mp.workprec(prec):
        th = _theta_mpf(theta, prec)
        if not _in_open_arc(th):
            raise ValueError(f"theta={th} is not inside the open arc (pi/2, 2pi/3)")
        f = _arc_factors_cached(th._mpf_, prec, wcfg.tol, wcfg.max_terms)
        F = _F_numeric(form, prec)
        j = f.j
        # Horner for F(j) and F'(j), plus the absolute-term sum for a rounding bound
        val = mpf(0)
        der = mpf(0)
        absval = mpf(0)
        aj = abs(j)
        for c in reversed(F):
            der = der * j + val
            val = val * j + c
            absval = absval * aj + abs(c)
        ek, err_ek = f.eisenstein(form.kprime)
        damp = mpmath.exp(-2 * mp.pi * form.m * mpmath.sin(th))
        dl = f.delta**form.ell
        prefactor = dl * ek * damp
        g = prefactor * val
        rel_pref = abs(form.ell) * f.err_delta / abs(f.delta)
        if ek != 0:
            rel_pref += err_ek / abs(ek)
        err_F = abs(der) * f.err_j + absval * (2 * len(F) + 2) * mpf(2) ** (-prec)
        err = abs(prefactor) * err_F + abs(g) * rel_pref + abs(g) * mpf(2) ** (8 - prec)
    return ArcValue(th, g, cfg.prec_bits, err)


def real_trace_direct(form: BasisForm, theta, cfg: EvalConfig | None = None, trunc: int = 160) -> ArcValue:
    """Same quantity as ``real_trace`` but summed straight from the exact expansion.

    Independent second route used for consistency checks at small weight.
    """
    cfg = cfg or EvalConfig()
    expansion = form.expand(trunc)
    with mp.workprec(cfg.prec_bits + 64):
        th = _theta_mpf(theta, cfg.prec_bits + 64)
        z = mpmath.expj(th)
        q = mpmath.exp(2j * mp.pi * z)
        coeffs = [mpf(c.numerator) / c.denominator for c in expansion.coeffs]
        out = _sum_terms(expansion.lead, coeffs, q, cfg.tol / 16, cfg.prec_bits + 64)
        if out is None:
            raise TruncationError("direct expansion did not converge; raise trunc")
        s, err = out
        phase = mpmath.expj(form.k * th / 2) * mpmath.exp(-2 * mp.pi * form.m * mpmath.sin(th))
        v = s * phase
        err = err * abs(phase)
        return ArcValue(th, _realify(v, err, cfg.tol, "direct trace"), cfg.prec_bits, err)


def eval_on_segment(series: ExactSeries, x, height, cfg: EvalConfig | None = None) -> SegmentValue:
    """Value of ``series`` at ``z = x + i*height``, ``|x| <= 1/2``, ``height >= 0.5``.

    Only the coefficients actually present in ``series`` are used; if they run
    out before the tolerance is met a ``TruncationError`` is raised.
    """
    cfg = cfg or EvalConfig()
    with mp.workprec(cfg.prec_bits):
        x = mpf(x)
        h = mpf(height)
        if h < mpf("0.5"):
            raise ValueError("height must be >= 0.5")
        if abs(x) > mpf("0.5") + mpf(2) ** (-cfg.prec_bits + 4):
            raise ValueError("x must lie in [-1/2, 1/2]")
        q = mpmath.exp(2j * mp.pi * mpc(x, h))
        coeffs = [mpf(c.numerator) / c.denominator for c in series.coeffs]
        out = _sum_terms(series.lead, coeffs, q, cfg.tol, cfg.prec_bits)
        if out is None:
            raise TruncationError(f"series valid through q^{series.trunc} is too short for tol={cfg.tol}")
        v, err = out
    return SegmentValue(x, h, v, cfg.prec_bits, err)


# --- fast double-precision j, only used to seed high-precision searches ------

_E4_F = [float(c) for c in _standard_exact("E4", 64)[1]]
_DELTA_F = [float(c) for c in _standard_exact("Delta", 64)[1]]


def j_on_arc_float(theta: float) -> float:
    """Double-precision ``j(e^{i theta})``; a seed, never a certificate."""
    import cmath

    z = cmath.exp(1j * theta)
    q = cmath.exp(2j * math.pi * z)
    e4 = 0j
    for c in reversed(_E4_F[:40]):
        e4 = e4 * q + c
    d = 0j
    for c in reversed(_DELTA_F[:40]):
        d = d * q + c
    d *= q
    return (e4**3 / d).real

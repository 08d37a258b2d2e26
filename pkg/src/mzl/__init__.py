"""Zeros of weakly holomorphic modular forms on the arc of the fundamental domain.

Exact q-series arithmetic, the canonical basis ``f_{k,m}``, certified zeros on
the arc, their interlacing, and the trigonometric models and bounds that
explain it.
"""

from .arceval import EvalConfig, real_trace
from .basis import BasisForm, construct, endpoint_orders, gap_function, split_weight
from .qexact import ExactSeries, delta, eisenstein, jfunction
from .zeros import ZeroSet, interlace_check, isolate_zeros, sign_scan_zeros

__version__ = "0.1.0"

__all__ = [
    "EvalConfig",
    "real_trace",
    "BasisForm",
    "construct",
    "endpoint_orders",
    "gap_function",
    "split_weight",
    "ExactSeries",
    "delta",
    "eisenstein",
    "jfunction",
    "ZeroSet",
    "interlace_check",
    "isolate_zeros",
    "sign_scan_zeros",
    "__version__",
]

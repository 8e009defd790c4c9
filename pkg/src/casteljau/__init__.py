"""Compensated de Casteljau evaluation of Bernstein-form polynomials.

The package provides error-free transformation kernels (:mod:`.eft`), the
plain, compensated, and K-fold compensated triangle evaluators
(:mod:`.evaluate`), an exact rational oracle (:mod:`.oracle`), flop-count
instrumentation (:mod:`.counting`), and deterministic accuracy experiments
with a CLI (:mod:`.experiments`, ``casteljau`` / ``python -m casteljau``).
"""

from .counting import CountingFloat, FlopCounter, count_evaluation_flops
from .eft import EftPair, SplitPair, split, sum_k, two_prod, two_prod_fma, two_sum, vec_sum
from .evaluate import (
    BernsteinPoly,
    CompensationTrace,
    ErrorVector,
    MonomialPoly,
    comp_de_casteljau,
    comp_de_casteljau_k,
    de_casteljau,
    flop_count,
    horner,
    local_error,
    local_error_eft,
)
from .oracle import (
    ConditionReport,
    ExactScalar,
    bernstein_from_monomial,
    bernstein_from_root_form,
    condition_number,
    exact_eval,
    exact_eval_basis,
    nearest_float,
    p_tilde,
    relative_error,
)

__version__ = "0.1.0"

__all__ = [
    "BernsteinPoly",
    "CompensationTrace",
    "ConditionReport",
    "CountingFloat",
    "EftPair",
    "ErrorVector",
    "ExactScalar",
    "FlopCounter",
    "MonomialPoly",
    "SplitPair",
    "bernstein_from_monomial",
    "bernstein_from_root_form",
    "comp_de_casteljau",
    "comp_de_casteljau_k",
    "condition_number",
    "count_evaluation_flops",
    "de_casteljau",
    "exact_eval",
    "exact_eval_basis",
    "flop_count",
    "horner",
    "local_error",
    "local_error_eft",
    "nearest_float",
    "p_tilde",
    "relative_error",
    "split",
    "sum_k",
    "two_prod",
    "two_prod_fma",
    "two_sum",
    "vec_sum",
]

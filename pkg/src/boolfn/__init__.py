"""Resilient, high-nonlinearity, high-immunity Boolean functions with linear-size circuits."""

from boolfn.core import (
    LIMITS,
    AnfPoly,
    BitPermutation,
    BoolFnError,
    CapExceeded,
    TruthTable,
    add_parity_vars,
    concat,
    degree,
    direct_sum,
    mobius,
    mobius_inv,
    nondegenerate_vars,
    restrict,
)
from boolfn.spectra import (
    DyadicRational,
    WalshSpectrum,
    almost_optimal_lb,
    divisibility_check,
    is_bent,
    linear_bias,
    nonlinearity,
    resiliency_order,
    siegenthaler_check,
    walsh_transform,
)
from boolfn.immunity import (
    algebraic_immunity,
    ai_lower_bound_subfunctions,
    fast_algebraic_immunity,
    min_annihilator_degree,
)
from boolfn.report import PropertyReport, analyze

__version__ = "0.1.0"

__all__ = [
    "LIMITS",
    "PropertyReport",
    "AnfPoly",
    "BitPermutation",
    "BoolFnError",
    "CapExceeded",
    "DyadicRational",
    "TruthTable",
    "WalshSpectrum",
    "add_parity_vars",
    "ai_lower_bound_subfunctions",
    "algebraic_immunity",
    "almost_optimal_lb",
    "analyze",
    "concat",
    "degree",
    "direct_sum",
    "divisibility_check",
    "fast_algebraic_immunity",
    "is_bent",
    "linear_bias",
    "min_annihilator_degree",
    "mobius",
    "mobius_inv",
    "nondegenerate_vars",
    "nonlinearity",
    "resiliency_order",
    "restrict",
    "siegenthaler_check",
    "walsh_transform",
]

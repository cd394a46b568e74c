"""Bounds, exhaustive checks and exact search for grain-error-correcting codes."""

from .bounds import (
    BoundValue,
    Method,
    bound_crossing,
    conj_v_bound,
    conjectured_rate_bound,
    dmc_mutual_information,
    frac_cover_bound,
    info_rate_bound,
    rate_curve,
)
from .counting import phi_count_closed, phi_count_general, realizable
from .errors import BudgetExhausted, ScaleLimitError
from .grain_model import BitWord, GrainPattern, RunProfile, confusable, derivative, phi_set, run_profile
from .search import build_confusability_graph, lp_fractional_chain, max_code

__version__ = "0.1.0"

__all__ = [
    "BitWord",
    "BoundValue",
    "BudgetExhausted",
    "GrainPattern",
    "Method",
    "RunProfile",
    "ScaleLimitError",
    "bound_crossing",
    "build_confusability_graph",
    "confusable",
    "conj_v_bound",
    "conjectured_rate_bound",
    "derivative",
    "dmc_mutual_information",
    "frac_cover_bound",
    "info_rate_bound",
    "lp_fractional_chain",
    "max_code",
    "phi_count_closed",
    "phi_count_general",
    "phi_set",
    "rate_curve",
    "realizable",
    "run_profile",
]

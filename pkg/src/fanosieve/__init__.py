"""Exact-arithmetic sieve for Q-Fano indices of Gorenstein canonical Fano threefolds
and of du Val del Pezzo surfaces."""

from .arith import (
    Rat,
    epsilon_lc_coefficient,
    euler_phi,
    factorize,
    j_budget_term,
    km_budget_3fold,
    phi_index_set,
    residue,
)
from .basket import Basket, CurveRecord, basket_cost, enumerate_baskets, lcm_index
from .rr import RRCheck, rr_admissible, rr_correction, rr_lhs
from .sieve import (
    Candidate,
    SieveReport,
    Verdict,
    budget_filter,
    enumerate_candidates,
    surface_sieve,
    threefold_sieve,
)
from .wps import WeightVector, degree, enumerate_gorenstein_wps3, fano_index, is_gorenstein, is_well_formed

__all__ = [
    "Basket", "Candidate", "CurveRecord", "RRCheck", "Rat", "SieveReport", "Verdict", "WeightVector",
    "basket_cost", "budget_filter", "degree", "enumerate_baskets", "enumerate_candidates",
    "enumerate_gorenstein_wps3", "epsilon_lc_coefficient", "euler_phi", "factorize", "fano_index",
    "is_gorenstein", "is_well_formed", "j_budget_term", "km_budget_3fold", "lcm_index", "phi_index_set",
    "residue", "rr_admissible", "rr_correction", "rr_lhs", "surface_sieve", "threefold_sieve",
]

"""Exact complete weight enumerators of two families of p-ary cyclic codes."""
from .cyclotomic import CyclotomicInt, GaussTypeValue, classify
from .enumerator import (
    CweTable,
    WeightDistribution,
    brute_force_cwe,
    closed_form_cwe,
    closed_form_cwe_c1,
    closed_form_cwe_c2,
    collapse_to_weights,
    strategy_composition,
    strategy_cwe,
)
from .field import FieldContext, FieldElement, build_field
from .sums import (
    SumDistribution,
    exp_sum_S,
    exp_sum_T,
    gauss_sum_closed,
    gauss_sum_direct,
    quadratic_form_rank,
    s_distribution,
    s_distribution_closed,
    t_distribution,
    t_distribution_closed,
)
from .verify import VerificationReport, verify

__version__ = "0.1.0"

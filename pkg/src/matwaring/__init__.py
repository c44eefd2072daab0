"""Exact checks for sums of k-th powers of matrices over finite commutative rings."""

from .rings import RingElement, make_ring, quotient_by_integer, enumerate_ring
from .matrices import Matrix, mat_pow, companion, general_companion, direct_sum_embed, parse_matrix
from .trace_power import closed_form, reduced_form, coefficients, witt_membership_check
from .condition_sets import build_condition_set, is_member, verify_group_closure, pth_power_mod_p
from .subgroups import compute_trace_subgroup, decide_sum_of_kth_powers, brute_force_witness
from .theorems import verify_theorem, revalidate
from .reports import Statement, TheoremReport
from .orders import IntPolynomial, resultant, discriminant, order_power_criterion
from .certificates import (
    verify_closure_identity, check_identity, check_all_identities, verify_chain_semantically,
    explore_remark, symbolic_errata,
)
from .universe import TestUniverse, DEFAULT_UNIVERSE
from .budget import Budget, BudgetExceeded

__version__ = "0.1.0"

__all__ = [
    "RingElement", "make_ring", "quotient_by_integer", "enumerate_ring",
    "Matrix", "mat_pow", "companion", "general_companion", "direct_sum_embed", "parse_matrix",
    "closed_form", "reduced_form", "coefficients", "witt_membership_check",
    "build_condition_set", "is_member", "verify_group_closure", "pth_power_mod_p",
    "compute_trace_subgroup", "decide_sum_of_kth_powers", "brute_force_witness",
    "verify_theorem", "revalidate", "Statement", "TheoremReport",
    "IntPolynomial", "resultant", "discriminant", "order_power_criterion",
    "verify_closure_identity", "check_identity", "check_all_identities", "verify_chain_semantically",
    "explore_remark", "symbolic_errata", "TestUniverse", "DEFAULT_UNIVERSE", "Budget", "BudgetExceeded",
]

"""Numerical monodromy of P^{-1}: loop permutations, the canonical edge labelling,
branch comparisons for Q(P^{-1}) and Puiseux expansions at infinity."""
from .checks import (BranchPartition, DegreeCheck, ProofTrace, branch_equalities, degree_formula_check,
                     lemma2_check, proof_trace)
from .group import MonodromyData, critical_values, monodromy_group
from .omega import OmegaLabeling, omega_labeling
from .perm import Permutation
from .puiseux import PuiseuxSeries, branch_shift_residual, puiseux_at_infinity
from .tracking import TrackOptions, loop_permutation, track_branches

__all__ = [
    "BranchPartition", "DegreeCheck", "MonodromyData", "OmegaLabeling", "Permutation", "ProofTrace",
    "PuiseuxSeries", "TrackOptions", "branch_equalities", "branch_shift_residual", "critical_values",
    "degree_formula_check", "lemma2_check", "loop_permutation", "monodromy_group", "omega_labeling",
    "proof_trace", "puiseux_at_infinity", "track_branches",
]

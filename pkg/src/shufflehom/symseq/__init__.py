"""Permutations, Σ_ℓ-representations, symmetric sequences and the ⊙ product."""

from .perm import (block_permutation, chi, coset_decompose, multi_shuffles, shuffle_orbit_reps,
                   shuffles)
from .rep import (Rep, SymMap, SymSeq, ValidationError, concentrated, permutation_rep,
                  random_reduced_seq, regular_rep, sign_rep, trivial_rep, unit_seq, zero_seq)
from .odot import (PowerData, ProductSeq, norm_map, odot, power_coinvariants, power_invariants,
                   twist)

__all__ = [
    "block_permutation", "chi", "coset_decompose", "multi_shuffles", "shuffle_orbit_reps", "shuffles",
    "Rep", "SymMap", "SymSeq", "ValidationError", "concentrated", "permutation_rep",
    "random_reduced_seq", "regular_rep", "sign_rep", "trivial_rep", "unit_seq", "zero_seq",
    "PowerData", "ProductSeq", "norm_map", "odot", "power_coinvariants", "power_invariants", "twist",
]

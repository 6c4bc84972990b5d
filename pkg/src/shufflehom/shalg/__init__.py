"""Shuffle algebras, free constructions, examples and divided powers."""

from .algebra import (AlgebraMap, ShuffleAlgebra, adjoin_unit, aug_ideal, corrupt, trivial_algebra,
                      zero_algebra)
from .dp import AxiomReport, DividedPowerAlgebra, check_axioms, psi
from .examples import (OrdinaryAlgebra, diamond, exterior_algebra, gr_functor, gr_sigma, sign_sequence,
                       sym_of_module, truncated_polynomial)
from .free import (FreeComm, flatten, free_assoc, free_comm, free_functor, structure_map, unit_map,
                   weight_one_projection)

__all__ = [
    "AlgebraMap", "ShuffleAlgebra", "adjoin_unit", "aug_ideal", "corrupt", "trivial_algebra", "zero_algebra",
    "AxiomReport", "DividedPowerAlgebra", "check_axioms", "psi",
    "OrdinaryAlgebra", "diamond", "exterior_algebra", "gr_functor", "gr_sigma", "sign_sequence",
    "sym_of_module", "truncated_polynomial",
    "FreeComm", "flatten", "free_assoc", "free_comm", "free_functor", "structure_map", "unit_map",
    "weight_one_projection",
]

"""Bar constructions, Harrison, André–Quillen and Hodge computations."""

from .bar import (BarComplex, bar, bar_homology, bar_shuffle_product, e1_homology, en_homology, harrison,
                  indecomposables, iterated_bar, iterated_bar_homology)
from .checks import (Verdict, acyclicity_check, associated_graded_free, augmentation_powers,
                     classical_free_on_disc, symmetrization_embedding)
from .cotriple import (CotripleResolution, HodgeReport, aq_homology, aq_weight_homology, cotriple_resolution,
                       hodge_check)
from .discs import disc, disc_sphere, f_r, sphere, suspend

__all__ = [
    "BarComplex", "bar", "bar_homology", "bar_shuffle_product", "e1_homology", "en_homology", "harrison",
    "indecomposables", "iterated_bar", "iterated_bar_homology",
    "Verdict", "acyclicity_check", "associated_graded_free", "augmentation_powers", "classical_free_on_disc",
    "symmetrization_embedding",
    "CotripleResolution", "HodgeReport", "aq_homology", "aq_weight_homology", "cotriple_resolution",
    "hodge_check",
    "disc", "disc_sphere", "f_r", "sphere", "suspend",
]

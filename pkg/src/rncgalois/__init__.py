"""Exact engine for Galois centers of projection of rational normal
curves over finite fields: family generators, the Galois decision via
deck-transformation search, stratum classification, and dimension
estimates by two-prime point counting.
"""

from ._backend import BACKEND
from .field import (
    GF,
    FieldElement,
    FieldHandle,
    alpha_class_representatives,
    is_square,
    primitive_root_of_unity,
    sqrt,
)
from .forms import BinaryForm, Divisor, ProjPoint, form_from_divisor, iter_points
from .proj import (
    MoebiusMap,
    Pencil,
    PlueckerVector,
    RationalMap,
    moebius_from_three_points,
    pluecker,
    projection_map,
    subspace_from_map,
    veronese_pullback,
)
from .deck import (
    GALOIS,
    NOT_GALOIS,
    UNKNOWN,
    DeckGroup,
    GroupType,
    brute_force_deck,
    classify_group,
    critical_points,
    deck_group,
    fiber,
    is_galois,
)
from .families import (
    FamilyLabel,
    FiniteSubgroup,
    compare_dihedral_constructions,
    cyclic_center,
    dihedral_center,
    family_sampler,
    invariant_pencil,
    subgroup_search,
)
from .strata import (
    ClassificationReport,
    FamilyInventory,
    classify,
    dimension_estimate,
    phi,
    table_inventory,
    theta,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GF",
    "FieldElement",
    "FieldHandle",
    "alpha_class_representatives",
    "is_square",
    "primitive_root_of_unity",
    "sqrt",
    "BinaryForm",
    "Divisor",
    "ProjPoint",
    "form_from_divisor",
    "iter_points",
    "MoebiusMap",
    "Pencil",
    "PlueckerVector",
    "RationalMap",
    "moebius_from_three_points",
    "pluecker",
    "projection_map",
    "subspace_from_map",
    "veronese_pullback",
    "GALOIS",
    "NOT_GALOIS",
    "UNKNOWN",
    "DeckGroup",
    "GroupType",
    "brute_force_deck",
    "classify_group",
    "critical_points",
    "deck_group",
    "fiber",
    "is_galois",
    "FamilyLabel",
    "FiniteSubgroup",
    "compare_dihedral_constructions",
    "cyclic_center",
    "dihedral_center",
    "family_sampler",
    "invariant_pencil",
    "subgroup_search",
    "ClassificationReport",
    "FamilyInventory",
    "classify",
    "dimension_estimate",
    "phi",
    "table_inventory",
    "theta",
    "__version__",
]

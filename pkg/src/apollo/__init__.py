"""Reciprocity obstructions in primitive integral Apollonian circle packings."""

__version__ = "0.1.0"

from apollo.packing import (
    Quadruple,
    QuadForm,
    TangentFamily,
    InvalidQuadrupleError,
    validate,
    apply_move,
    reduce_to_root,
    form_of,
    quad_of,
    tangent_family,
    coprime_neighbor,
)
from apollo.classify import (
    Chi4,
    PackingType,
    ObstructionFamily,
    ObstructionReport,
    residue_type,
    admissible_residues,
    chi2,
    chi4,
    lattice_of,
    extended_type,
    obstructions_for,
)
from apollo.enumeration import (
    CurvatureBitmap,
    enumerate_curvatures,
    missing_curvatures,
    sporadic_set,
    obstruction_members,
    cooccurrence_check,
    successive_differences,
)

__all__ = [
    "__version__",
    "Quadruple",
    "QuadForm",
    "TangentFamily",
    "InvalidQuadrupleError",
    "validate",
    "apply_move",
    "reduce_to_root",
    "form_of",
    "quad_of",
    "tangent_family",
    "coprime_neighbor",
    "Chi4",
    "PackingType",
    "ObstructionFamily",
    "ObstructionReport",
    "residue_type",
    "admissible_residues",
    "chi2",
    "chi4",
    "lattice_of",
    "extended_type",
    "obstructions_for",
    "CurvatureBitmap",
    "enumerate_curvatures",
    "missing_curvatures",
    "sporadic_set",
    "obstruction_members",
    "cooccurrence_check",
    "successive_differences",
]

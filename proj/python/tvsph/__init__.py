"""Quantum 6j symbols, Turaev-Viro state sums, and spherical-tetrahedron
semiclassics.

Colors are passed as doubled integers (2j) so admissibility stays exact.
"""

from tvsph._core import (
    BudgetExceeded,
    GeometryError,
    Triangulation,
    asymptotic_ratio,
    delinfty_value,
    delta_total,
    dihedral_angles,
    fivecell,
    gram_det,
    invariant_s3_total,
    load_triangulation,
    normalization_value,
    pachner_14,
    pachner_23,
    quantum_integer,
    sixj,
    spherical_volume,
    tv,
    validate,
    verify_sjac,
)

__all__ = [
    "BudgetExceeded",
    "GeometryError",
    "Triangulation",
    "asymptotic_ratio",
    "delinfty_value",
    "delta_total",
    "dihedral_angles",
    "fivecell",
    "gram_det",
    "invariant_s3_total",
    "load_triangulation",
    "normalization_value",
    "pachner_14",
    "pachner_23",
    "quantum_integer",
    "sixj",
    "spherical_volume",
    "tv",
    "validate",
    "verify_sjac",
]

"""
Binary quadratic forms of positive discriminant.
"""

from .cache import FormCache, compute_class_data
from .quadratic import (
    CycleAnchor,
    Discriminant,
    FormCycle,
    FormTriple,
    as_discriminant,
    automorph,
    axis_of_form,
    character_table,
    class_number_formula_check,
    cycle_anchors,
    cycle_from_representative,
    dirichlet_L1,
    dirichlet_series_L1,
    form_cycles,
    fundamental_unit_plus,
    is_fundamental,
    is_squarefree,
    kronecker,
    kronecker_chi,
    reduced_forms,
    reduction_step,
)

__all__ = [
    "CycleAnchor",
    "Discriminant",
    "FormCache",
    "FormCycle",
    "FormTriple",
    "as_discriminant",
    "automorph",
    "axis_of_form",
    "character_table",
    "class_number_formula_check",
    "compute_class_data",
    "cycle_anchors",
    "cycle_from_representative",
    "dirichlet_L1",
    "dirichlet_series_L1",
    "form_cycles",
    "fundamental_unit_plus",
    "is_fundamental",
    "is_squarefree",
    "kronecker",
    "kronecker_chi",
    "reduced_forms",
    "reduction_step",
]

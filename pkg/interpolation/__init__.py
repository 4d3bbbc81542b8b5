from interpolation.expansion import (
    Expansion,
    ExpansionFamily,
    check_side_conditions,
    evaluate_expansion,
    native_inner,
    side_condition_tolerance,
)
from interpolation.lagrange import (
    BasisVariant,
    CoefficientMatrix,
    LagrangeFunction,
    family_from_functions,
    full_basis_family,
    full_coefficient_matrix,
    solve_full_basis,
    solve_full_lagrange,
)
from interpolation.system import SaddleSystem, assemble, check_unisolvent

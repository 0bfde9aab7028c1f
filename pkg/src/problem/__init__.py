from .boundary import BoundaryData
from .manufactured import ManufacturedSolution
from .psispec import (
    PsiFamily,
    PsiSpec,
    StructuralReport,
    TabulatedField,
    blend,
    check_structural_conditions,
    dpsi_dtheta_power,
    eval_psi,
)

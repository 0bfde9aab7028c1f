from .sampling import random_gradient_pairs, random_nonnegative_matrices
from .symfun import (
    B0Estimate,
    EigenTuple,
    b0_candidates,
    concavity_probe,
    cone_margin,
    elementary_symmetric,
    elementary_symmetric_enumerated,
    estimate_B0,
    hessian_quotient,
    in_gamma_cone,
    inverse_gradient_metric,
    matrix_quotient,
    matrix_quotient_lower_bound,
    newton_maclaurin_margin,
    quotient_gradient,
    quotient_gradient_excluded_form,
    quotient_power,
    sample_gamma_cone,
    sigma_excluding,
)

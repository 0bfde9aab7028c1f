from .coloring import ColoringPlan, StencilWeights, coloring_plan, stencil_weights
from .discretize import (
    GraphFields,
    Grid,
    NodalField,
    apply_boundary,
    boundary_values,
    build_grid,
    fd_partials,
    graph_fields,
    nodal_jet,
)
from .solver import (
    BarrierPair,
    Evaluation,
    HomotopyStep,
    RefinementStudy,
    SolveConfig,
    SolveReport,
    barrier_configs,
    barrier_pair,
    evaluate,
    homotopy_solve,
    jacobian,
    newton_solve,
    refinement_study,
    residual,
    umbilic_psi,
)

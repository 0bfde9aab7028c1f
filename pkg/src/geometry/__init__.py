from .graphgeom import (
    GraphPointState,
    ShapeData,
    induced_metric,
    principal_curvatures,
    second_fundamental_form,
    shape_data,
    spacelike_margin,
    spacelike_v,
    support_theta,
    unit_normal,
)
from .hypgeom import (
    ChartPoint,
    chart_metric,
    chart_point,
    christoffels,
    covariant_hessian,
    embed,
    geodesic_radius,
    lorentz_distance,
    lorentz_inner,
    tangent_frame,
)

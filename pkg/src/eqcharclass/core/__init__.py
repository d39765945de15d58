"""Exact coefficient arithmetic and exterior calculus on chart-based spaces."""
from .coeffs import GaussQ, I, ONE, ZERO
from .chart import (
    ChartError,
    ChartModel,
    Constraint,
    POINT,
    complex_chart,
    euclidean,
    formal_constants,
    product,
    simplex_chart,
    sphere2,
    sphere3,
    torus_chart,
)
from .scalar import Scalar
from .forms import (
    Form,
    Substitution,
    VectorField,
    bracket_vf,
    contract,
    drop_generators,
    drop_variable,
    exterior_d,
    identity_substitution,
    integrate_param,
    lie_derivative,
    lift,
    pullback,
    wedge,
    wedge_all,
    with_interval,
)
from .parse import ParseError, parse_expr
from .serialize import chart_from_json, chart_to_json, dumps, form_from_json, form_to_json, scalar_from_json, scalar_to_json, substitution_from_json, substitution_to_json

"""Simplicial manifolds, Dupont forms and the Getzler model."""
from .spaces import NK, ActionSpace, NbarK, SimplicialError, SimplicialSpace, gamma, gamma_defects, nbar_identification
from .derham import SimplicialForm, double_complex_defect, simplicial_del, total_d
from .dupont import (
    DupontForm,
    compat_chart,
    dupont_char_form,
    dupont_chart,
    dupont_curvature,
    dupont_d,
    dupont_wedge,
    integrate_level,
    simplex_integrate,
    simplex_monomial_integral,
    simplicial_connection,
    universal_connection,
    vertex_family,
)

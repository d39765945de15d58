"""Seeded random generators for forms, vector fields, equivariant forms and cochains.

Every generator takes a :class:`random.Random`, so a seed fixes the output.
"""
from __future__ import annotations

import random
from typing import List

from .cartan import EquivariantForm
from .core import ChartModel, Form, Scalar, VectorField
from .core.chart import UNIT


def random_scalar(chart: ChartModel, rng: random.Random, terms: int = 3, max_exp: int = 2) -> Scalar:
    out = Scalar.zero(chart)
    for _ in range(terms):
        s = Scalar.const(chart, (rng.randint(-4, 4), rng.choice((0, 0, rng.randint(-2, 2)))))
        for v, kind in zip(chart.variables, chart.kinds):
            if rng.random() < 0.5:
                continue
            e = rng.randint(-max_exp, max_exp) if kind == UNIT else rng.randint(0, max_exp)
            if e:
                s = s * Scalar.var(chart, v, e)
        out = out + s
    return out


def random_form(chart: ChartModel, rng: random.Random, terms: int = 3, max_exp: int = 2, max_degree: int = None) -> Form:
    """Sum of ``terms`` monomial forms with random generators."""
    top = chart.dim if max_degree is None else min(max_degree, chart.dim)
    out = Form.zero(chart)
    for _ in range(terms):
        k = rng.randint(0, top)
        gens = sorted(rng.sample(range(chart.dim), k))
        f = Form.scalar(random_scalar(chart, rng, 1, max_exp))
        for g in gens:
            f = f ^ Form.d_of(chart, chart.variables[g])
        out = out + f
    return out


def _sphere_fields(chart: ChartModel) -> List[VectorField]:
    """Infinitesimal unitary rotations of S^3 (tangent to the sphere)."""
    z1, z1b, z2, z2b = (Scalar.var(chart, v) for v in chart.variables[:4])
    names = chart.variables[:4]
    i = (0, 1)
    specs = [
        (z1 * i, z1b * (0, -1), None, None),
        (None, None, z2 * i, z2b * (0, -1)),
        (z2, z2b, -z1, -z1b),
        (z2 * i, z2b * (0, -1), z1 * i, z1b * (0, -1)),
    ]
    out = []
    for spec in specs:
        out.append(VectorField.from_names(chart, {n: c for n, c in zip(names, spec) if c is not None}))
    return out


def random_vector_field(chart: ChartModel, rng: random.Random, max_exp: int = 1) -> VectorField:
    """A random field tangent to the chart (unit variables move along their circles)."""
    if chart.constraints:
        fields = _sphere_fields(chart)
        out = VectorField(chart, {})
        for v in fields:
            if rng.random() < 0.6:
                out = out + v * random_scalar(chart, rng, 1, max_exp)
        return out
    coeffs = {}
    for i, (v, kind) in enumerate(zip(chart.variables, chart.kinds)):
        if rng.random() < 0.3:
            continue
        c = random_scalar(chart, rng, 2, max_exp)
        if kind == UNIT:
            c = c * Scalar.var(chart, v)
        coeffs[i] = c
    return VectorField(chart, coeffs)


def random_equivariant(action, rng: random.Random, max_poly: int = 2, terms: int = 2, invariant: bool = False) -> EquivariantForm:
    from .cartan import invariant_part

    comps = {}
    for _ in range(rng.randint(1, 3)):
        n = rng.randint(0, max_poly)
        m = tuple(sorted(rng.randrange(action.algebra.dim) for _ in range(n)))
        f = random_form(action.space, rng, terms, max_exp=2, max_degree=2)
        comps[m] = comps[m] + f if m in comps else f
    w = EquivariantForm(action, comps)
    if invariant:
        w = EquivariantForm(action, {m: invariant_part(action, f) for m, f in w.components.items()})
    return w


def random_cochain(X, level: int, rng: random.Random, max_poly: int = 1):
    """Random Getzler cochain: no group generators, group dependence through Laurent monomials."""
    from .core import drop_generators
    from .simplicial.getzler import GetzlerCochain

    chart = X.chart(level)
    comps = {}
    for _ in range(rng.randint(1, 2)):
        n = rng.randint(0, max_poly)
        m = tuple(sorted(rng.randrange(X.group.rank) for _ in range(n)))
        f = drop_generators(random_form(chart, rng, 2, max_exp=1, max_degree=2), X.group_indices(level))
        comps[m] = comps[m] + f if m in comps else f
    return GetzlerCochain(X, level, comps)

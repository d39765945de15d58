"""Canonical JSON shapes for charts, Scalars, Forms and substitutions.

Scalar: ``[[exps, [num_re, den_re, num_im, den_im]], ...]`` in sorted order.
Form:   ``[[Scalar, [generator names]], ...]`` sorted by generator tuple.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .chart import ChartError, ChartModel, Constraint, _chart
from .coeffs import GaussQ
from .forms import Form, Substitution
from .scalar import Scalar


def coeff_to_json(c: GaussQ):
    return [c.re.numerator, c.re.denominator, c.im.numerator, c.im.denominator]


def coeff_from_json(v) -> GaussQ:
    a, b, c, d = v
    return GaussQ(Fraction(a, b), Fraction(c, d))


def scalar_to_json(s: Scalar):
    return [[list(m), coeff_to_json(c)] for m, c in sorted(s.terms.items())]


def scalar_from_json(data, chart: ChartModel) -> Scalar:
    terms = {}
    for m, c in data:
        if len(m) != chart.dim:
            raise ChartError("exponent vector length does not match chart")
        terms[tuple(m)] = coeff_from_json(c)
    return Scalar(chart, terms)


def form_to_json(f: Form):
    names = f.chart.variables
    return [[scalar_to_json(s), ["d" + names[g] for g in gens]] for gens, s in sorted(f.terms.items())]


def form_from_json(data, chart: ChartModel) -> Form:
    return Form.from_scalars(chart, [(gens, scalar_from_json(s, chart)) for s, gens in data])


def _raw_to_json(terms):
    return [[list(e), coeff_to_json(c)] for e, c in terms]


def _raw_from_json(data):
    return tuple((tuple(e), coeff_from_json(c)) for e, c in data)


def chart_to_json(chart: ChartModel):
    return {
        "name": chart.name,
        "variables": list(chart.variables),
        "kinds": list(chart.kinds),
        "conjugation": list(chart.conjugation),
        "relations": [
            {
                "label": c.label,
                "lhs": list(c.lhs),
                "rhs": _raw_to_json(c.rhs),
                "transversal": [[i, _raw_to_json(t)] for i, t in c.transversal],
                "kappa": coeff_to_json(c.kappa),
            }
            for c in chart.constraints
        ],
    }


def chart_from_json(data) -> ChartModel:
    cons = [
        Constraint(
            lhs=tuple(r["lhs"]),
            rhs=_raw_from_json(r["rhs"]),
            transversal=tuple((i, _raw_from_json(t)) for i, t in r["transversal"]),
            kappa=coeff_from_json(r["kappa"]),
            label=r.get("label", ""),
        )
        for r in data.get("relations", [])
    ]
    return _chart(data["name"], data["variables"], data["kinds"], data["conjugation"], cons)


def substitution_to_json(sub: Substitution):
    return {
        "source": chart_to_json(sub.source),
        "target": chart_to_json(sub.target),
        "images": {v: scalar_to_json(s) for v, s in zip(sub.source.variables, sub.images)},
    }


def substitution_from_json(data) -> Substitution:
    source = chart_from_json(data["source"])
    target = chart_from_json(data["target"])
    imgs = [scalar_from_json(data["images"][v], target) for v in source.variables]
    return Substitution(source, target, imgs)


def dumps(obj) -> str:
    """Byte-stable JSON text."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)

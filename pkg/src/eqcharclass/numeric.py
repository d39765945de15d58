"""Floating-point evaluation and a finite-difference oracle for curvature and moment maps.

The oracle differentiates the connection numerically along straight lines in
the ambient coordinates and obtains fundamental fields by differentiating the
action at ``u = exp(ih)``.  Nothing symbolic is differentiated on that side.
"""
from __future__ import annotations

import cmath
import random
from typing import Dict, List, Sequence

from .core import ChartModel, Form, Scalar, euclidean, parse_expr
from .core.chart import UNIT, _chart

Point = Dict[str, complex]


def eval_scalar(s: Scalar, point: Point) -> complex:
    names = s.chart.variables
    total = 0j
    for m, c in s.terms.items():
        term = complex(float(c.re), float(c.im))
        for name, e in zip(names, m):
            if e:
                term *= point[name] ** e
        total += term
    return total


def _det(rows: List[List[complex]]) -> complex:
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0j
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * _det(minor)
    return total


def eval_form(f: Form, point: Point, vectors: Sequence[Point]) -> complex:
    """``f_p(v_1, ..., v_k)``; only the degree-k part contributes."""
    names = f.chart.variables
    total = 0j
    for gens, s in f.terms.items():
        if len(gens) != len(vectors):
            continue
        rows = [[v[names[g]] for v in vectors] for g in gens]
        total += eval_scalar(s, point) * _det(rows)
    return total


def ambient(chart: ChartModel) -> ChartModel:
    """The same coordinates without constraints."""
    return _chart(chart.name + "~", chart.variables, chart.kinds, chart.conjugation)


def random_point(chart: ChartModel, rng: random.Random) -> Point:
    pt: Point = {}
    for i, name in enumerate(chart.variables):
        if name in pt:
            continue
        j = chart.conjugation[i]
        if chart.kinds[i] == UNIT:
            pt[name] = cmath.exp(1j * rng.uniform(-3, 3))
        elif j != i:
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            pt[name], pt[chart.variables[j]] = z, z.conjugate()
        else:
            pt[name] = complex(rng.uniform(-1.5, 1.5))
    for c in chart.constraints:
        # round spheres: rescale the holomorphic coordinates to unit norm
        sup = {i for i, _ in c.transversal}
        hol = [i for i in sorted(sup) if chart.conjugation[i] > i]
        r = sum(abs(pt[chart.variables[i]]) ** 2 for i in hol) ** 0.5
        for i in hol:
            z = pt[chart.variables[i]] / r
            pt[chart.variables[i]], pt[chart.variables[chart.conjugation[i]]] = z, z.conjugate()
    return pt


def random_tangent(chart: ChartModel, point: Point, rng: random.Random) -> Point:
    v: Point = {}
    for i, name in enumerate(chart.variables):
        if name in v:
            continue
        j = chart.conjugation[i]
        if chart.kinds[i] == UNIT:
            v[name] = 1j * point[name] * rng.uniform(-1, 1)
        elif j != i:
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            v[name], v[chart.variables[j]] = z, z.conjugate()
        else:
            v[name] = complex(rng.uniform(-1, 1))
    for c in chart.constraints:
        sup = {i for i, _ in c.transversal}
        hol = [i for i in sorted(sup) if chart.conjugation[i] > i]
        inner = sum(point[chart.variables[i]].conjugate() * v[chart.variables[i]] for i in hol).real
        for i in hol:
            z = v[chart.variables[i]] - inner * point[chart.variables[i]]
            v[chart.variables[i]], v[chart.variables[chart.conjugation[i]]] = z, z.conjugate()
    return v


def _shift(point: Point, v: Point, t: float, chart: ChartModel) -> Point:
    out = {}
    for i, name in enumerate(chart.variables):
        if chart.kinds[i] == UNIT:
            # move along the circle so that conj(u) = 1/u stays true
            out[name] = point[name] * cmath.exp(t * v[name] / point[name])
        else:
            out[name] = point[name] + t * v[name]
    return out


def fd_exterior_d(theta: Form, point: Point, v: Point, w: Point, h: float = 1e-5) -> complex:
    """``d theta(v, w) = v(theta(w)) - w(theta(v))`` by central differences (constant fields)."""
    chart = theta.chart

    def along(a, b):
        plus = eval_form(theta, _shift(point, a, h, chart), [b])
        minus = eval_form(theta, _shift(point, a, -h, chart), [b])
        return (plus - minus) / (2 * h)

    return along(v, w) - along(w, v)


def fd_fundamental(action, point: Point, h: float = 1e-6) -> Point:
    """``X#`` for ``X = i`` on the first circle: differentiate ``exp(ih) . p``."""
    pc = action.product_chart
    r = action.group.rank
    gnames = pc.variables[:r]

    def moved(s):
        pt = dict(point)
        for k, g in enumerate(gnames):
            pt[g] = cmath.exp(1j * s) if k == 0 else 1
        return {v: eval_scalar(img, pt) for v, img in zip(action.space.variables, action.images)}

    plus, minus = moved(h), moved(-h)
    return {v: (plus[v] - minus[v]) / (2 * h) for v in action.space.variables}


def _close(a: complex, b: complex, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(b))


def curvature_oracle(conn, samples: int = 50, seed: int = 0, tol: float = 1e-6) -> Dict[str, object]:
    """Compare symbolic ``Omega``, ``mu`` and ``P(Omega + mu)`` with finite differences."""
    from .chern_weil import curvature, equivariant_char_form, moment_map, polynomial

    rng = random.Random(seed)
    E = conn.bundle.total
    raw = parse_expr(conn.label, ambient(E), forms=True) if conn.label else None
    theta = raw if raw is not None else Form(ambient(E), conn.components[0].terms)
    omega = curvature(conn).components[0]
    mu = moment_map(conn, conn.bundle.G_action.algebra.basis_element(0)).components[0]
    cf1 = equivariant_char_form(polynomial("id"), conn)
    cf2 = equivariant_char_form(polynomial("X^2"), conn)
    worst = 0.0
    failures: List[str] = []
    for k in range(samples):
        p = random_point(E, rng)
        v, w = random_tangent(E, p, rng), random_tangent(E, p, rng)
        num_omega = fd_exterior_d(theta, p, v, w)
        xs = fd_fundamental(conn.bundle.G_action, p)
        num_mu = eval_form(theta, p, [xs])
        checks = [
            ("curvature", eval_form(omega, p, [v, w]), num_omega),
            ("moment map", eval_form(mu, p, []), num_mu),
            ("P=id, xi^0", eval_form(cf1.components.get((), Form.zero(E)), p, [v, w]), num_omega),
            ("P=id, xi^1", eval_form(cf1.components.get((0,), Form.zero(E)), p, []), num_mu),
            ("P=X^2, xi^1", eval_form(cf2.components.get((0,), Form.zero(E)), p, [v, w]), 2 * num_mu * num_omega),
            ("P=X^2, xi^2", eval_form(cf2.components.get((0, 0), Form.zero(E)), p, []), num_mu * num_mu),
        ]
        for name, sym, num in checks:
            err = abs(sym - num) / max(1.0, abs(num))
            worst = max(worst, err)
            if not _close(sym, num, tol):
                failures.append(f"sample {k}: {name} symbolic {sym:.8g} vs numeric {num:.8g}")
    return {"samples": samples, "max_rel_error": worst, "failures": failures, "ok": not failures}

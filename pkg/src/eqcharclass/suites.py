"""Named verification suites; each returns one :class:`Result` per checked identity."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List

from .cartan import EquivariantForm, cartan_d, cartan_d_defect, check_equivariance, expected_defect
from .chern_weil import (
    basic_defects,
    bundle_actions,
    bundle_names,
    char_form,
    compare_pb_vb,
    connection_count,
    equivariant_char_form,
    get_connection,
    get_line_bundle,
    line_bundle_names,
    polynomial,
    pull_connection,
    pullback_bundle,
    transgression,
    transgression_defect,
    triangle_transgression,
)
from .core import Form, Scalar, contract, parse_expr, euclidean, exterior_d, lie_derivative, pullback, sphere3
from .lie import get_action
from .sampling import random_cochain, random_equivariant, random_form, random_vector_field
from .simplicial import ActionSpace, NK, NbarK, SimplicialForm, double_complex_defect, simplicial_del
from .simplicial.checks import (
    algebra_hom_check,
    classform_check,
    degeneracy_counterexample,
    random_dupont_form,
    stokes_defects,
    universal_inverse_check,
)
from .simplicial.dupont import _integrate_level, dupont_chart, dupont_d, volume_form
from .simplicial.getzler import chain_map_check, dbar, getzler_defects, group_average
from .simplicial.spaces import gamma_defects


@dataclass
class Result:
    suite: str
    identity: str
    ok: bool
    detail: str = ""
    cases: int = 1

    def to_json(self):
        return {"suite": self.suite, "identity": self.identity, "ok": self.ok, "cases": self.cases, "detail": self.detail}


@dataclass
class SuiteConfig:
    suites: List[str] = field(default_factory=lambda: ["all"])
    seed: int = 0
    samples: int = None
    p_max: int = 3
    fmt: str = "plain"
    example: str = None


def _first(bad) -> str:
    if not bad:
        return ""
    if isinstance(bad, dict):
        k = sorted(bad)[0]
        return f"{k}: {bad[k]}"
    return str(bad[0])


class _Collector:
    def __init__(self, suite: str):
        self.suite = suite
        self.counts: Dict[str, List] = {}

    def check(self, identity: str, ok: bool, detail: Callable[[], str] = None):
        entry = self.counts.setdefault(identity, [0, 0, ""])
        entry[0] += 1
        if not ok:
            entry[1] += 1
            if not entry[2]:
                entry[2] = detail() if detail else "mismatch"

    def results(self) -> List[Result]:
        out = []
        for identity in sorted(self.counts):
            n, bad, first = self.counts[identity]
            detail = f"{n} cases" if not bad else f"{bad}/{n} failed; first: {first}"
            out.append(Result(self.suite, identity, not bad, detail, n))
        return out


def _n(cfg: SuiteConfig, default: int) -> int:
    return cfg.samples if cfg.samples is not None else default


# ---------------------------------------------------------------- suites


def suite_exterior(cfg: SuiteConfig) -> List[Result]:
    col = _Collector("exterior")
    rng = random.Random(cfg.seed)
    rot = get_action("rotation-plane")
    hopf = get_action("hopf")
    X = ActionSpace(rot)
    charts = [
        ("rotation-plane", rot.space, rot.substitution()),
        ("S^3", sphere3(), hopf.substitution()),
        ("torus level 2", X.chart(2), X.face(2, 2)),
    ]
    for name, chart, sub in charts:
        for _ in range(_n(cfg, 100)):
            f = random_form(chart, rng, terms=2, max_exp=2)
            v = random_vector_field(chart, rng)
            df = exterior_d(f)
            col.check(f"d^2 = 0 [{name}]", exterior_d(df).is_zero(), lambda: str(exterior_d(df)))
            ii = contract(v, contract(v, f))
            col.check(f"iota^2 = 0 [{name}]", ii.is_zero(), lambda: str(ii))
            magic = lie_derivative(v, f) - exterior_d(contract(v, f)) - contract(v, df)
            col.check(f"L = d iota + iota d [{name}]", magic.is_zero(), lambda: str(magic))
            g = random_form(sub.source, rng, terms=2, max_exp=1)
            comm = pullback(sub, exterior_d(g)) - exterior_d(pullback(sub, g))
            col.check(f"pullback commutes with d [{name}]", comm.is_zero(), lambda: str(comm))
    return col.results()


def suite_cartan(cfg: SuiteConfig) -> List[Result]:
    col = _Collector("cartan")
    rng = random.Random(cfg.seed + 1)
    actions = [get_action(n) for n in ("rotation-plane", "hopf", "torus-plane")]
    for k in range(_n(cfg, 60)):
        act = actions[k % len(actions)]
        w = random_equivariant(act, rng, invariant=rng.random() < 0.5)
        for a in range(act.algebra.dim):
            lhs, rhs = cartan_d_defect(w, a), expected_defect(w, a)
            col.check("d_C^2 = L(X#)", lhs == rhs, lambda: f"{lhs} != {rhs}")
        if check_equivariance(w):
            dd = cartan_d(cartan_d(w))
            col.check("d_C^2 = 0 on equivariant forms", dd.is_zero(), lambda: str(dd))
    return col.results()


def suite_double_complex(cfg: SuiteConfig) -> List[Result]:
    col = _Collector("double-complex")
    rng = random.Random(cfg.seed + 2)
    X = ActionSpace(get_action("rotation-plane"))
    p_max = cfg.p_max
    for space in (X, ActionSpace(get_action("hopf")), NbarK(get_action("rotation-plane").group), NK(get_action("rotation-plane").group)):
        bad = space.relation_defects(p_max)
        col.check("simplicial identities", not bad, lambda: _first(bad))
    bad = gamma_defects(NbarK(X.group), NK(X.group), p_max)
    col.check("gamma is simplicial", not bad, lambda: _first(bad))
    # del^2 lands two levels up, so start at levels 0..p_max - 2
    for k in range(_n(cfg, 24)):
        p = k % max(p_max - 1, 1)
        x = SimplicialForm(X, p, random_form(X.chart(p), rng, terms=2, max_exp=1, max_degree=2))
        dd = simplicial_del(simplicial_del(x))
        col.check("del^2 = 0", dd.is_zero(), lambda: str(dd))
        bad = double_complex_defect(x)
        col.check("(d + (-1)^q del)^2 = 0", not bad, lambda: _first(bad))
    return col.results()


def suite_getzler(cfg: SuiteConfig) -> List[Result]:
    col = _Collector("getzler")
    rng = random.Random(cfg.seed + 3)
    X = ActionSpace(get_action("rotation-plane"))
    n = _n(cfg, 24)
    identities = ("dbar^2", "iota_bar^2", "dbar iota_bar + iota_bar dbar + L", "d_G^2")
    for k in range(n):
        f = random_cochain(X, k % 3, rng)
        bad = getzler_defects(f)
        for name in identities:
            if name == "iota_bar^2" and f.level < 2:
                continue
            col.check(name.replace("+ L", "= -L"), name not in bad, lambda: str(bad.get(name)))
        # iota_bar^2 needs level 2; give it n samples of its own
        if f.level < 2:
            bad = getzler_defects(random_cochain(X, 2, rng))
            col.check("iota_bar^2", "iota_bar^2" not in bad, lambda: str(bad.get("iota_bar^2")))
        g = random_cochain(X, k % 2, rng)
        closed = dbar(g)
        back = dbar(group_average(closed))
        col.check("dbar int_G f = f on dbar-closed f", back == closed, lambda: f"{back} != {closed}")
    return col.results()


def suite_chain_map(cfg: SuiteConfig) -> List[Result]:
    col = _Collector("chain-map")
    rng = random.Random(cfg.seed + 4)
    X = ActionSpace(get_action("rotation-plane"))
    for k in range(_n(cfg, 24)):
        p = k % 3
        x = SimplicialForm(X, p, random_form(X.chart(p), rng, terms=2, max_exp=1, max_degree=3))
        rep = chain_map_check(x)
        failed = {name for name, _ in rep["failures"]}
        for name in ("J del", "J d_M", "J d_G"):
            col.check(name, name not in failed, lambda: f"level {p}")
    return col.results()


def suite_simplex(cfg: SuiteConfig) -> List[Result]:
    col = _Collector("simplex")
    X = ActionSpace(get_action("rotation-plane"))
    vols = volume_form(X, 5)
    for p in range(6):
        got = _integrate_level(X, p, vols[p])
        want = Form.const(X.chart(p), Fraction(1, factorial(p)))
        col.check(f"vol(Delta^{p}) = 1/{p}!", got == want, lambda: f"{got} != {want}")
    # int_{Delta^1} t_0 dt_0 = 1/2 (dt_0 = -dt_1)
    chart = dupont_chart(X, 1)
    t1 = Scalar.var(chart, "t1")
    got = _integrate_level(X, 1, Form.d_of(chart, "t1") * (t1 - 1))
    col.check("int t_0 dt_0 = 1/2", got == Form.const(X.chart(1), Fraction(1, 2)), lambda: str(got))
    rng = random.Random(cfg.seed + 5)
    for _ in range(_n(cfg, 8)):
        w1, w2 = random_dupont_form(X, rng), random_dupont_form(X, rng)
        bad = w1.compatibility_defects()
        col.check("random Dupont forms are compatible", not bad, lambda: _first(bad))
        bad = dupont_d(w1).compatibility_defects() + (w1 * w2).compatibility_defects()
        col.check("d and wedge preserve compatibility", not bad, lambda: _first(bad))
        bad = stokes_defects(w1)
        col.check("int d = (-1)^p d int - del int", not bad, lambda: _first(bad))
    return col.results()


def _registered(cfg: SuiteConfig):
    for b in bundle_names():
        if cfg.example and b != cfg.example:
            continue
        for a in bundle_actions(b):
            yield b, a


def suite_chern_weil(cfg: SuiteConfig) -> List[Result]:
    col = _Collector("chern-weil")
    Ps = {"id": polynomial("id"), "X^2": polynomial("X^2")}
    for b, a in _registered(cfg):
        n = connection_count(b, a)
        conns = [get_connection(b, a, i) for i in range(n)]
        for c in conns:
            col.check("connection normalized", not c.normalization_defects(), lambda: str(c))
            col.check("connection K- and G-invariant", c.is_K_invariant() and c.is_G_invariant(), lambda: str(c))
            for pname, P in Ps.items():
                cf = equivariant_char_form(P, c)
                bad = basic_defects(cf, c.bundle)
                col.check("P(Omega + mu) basic", not bad, lambda: f"{b}/{a} {pname}: {_first(bad)}")
                dc = cartan_d(cf)
                col.check("d_C P(Omega + mu) = 0", dc.is_zero(), lambda: f"{b}/{a} {pname}: {dc}")
                d = exterior_d(char_form(P, c))
                col.check("d P(Omega) = 0", d.is_zero(), lambda: f"{b}/{a} {pname}: {d}")
            prod = equivariant_char_form(Ps["id"].times(Ps["id"]), c)
            fac = equivariant_char_form(Ps["id"], c) ^ equivariant_char_form(Ps["id"], c)
            col.check("P Q -> wedge", prod == fac, lambda: f"{b}/{a}: {prod} != {fac}")
        for pname, P in Ps.items():
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    lhs = cartan_d(transgression(P, conns[i], conns[j]))
                    rhs = equivariant_char_form(P, conns[j]) - equivariant_char_form(P, conns[i])
                    col.check("d_C transgression = difference", lhs == rhs, lambda: f"{b}/{a} {pname} ({i},{j})")
            if n >= 3:
                for tri in ((0, 1, 2), (0, 1, n - 1)):
                    c0, c1, c2 = (conns[t] for t in tri)
                    defect = transgression_defect(P, c0, c1, c2)
                    witness = cartan_d(triangle_transgression(P, c0, c1, c2))
                    col.check("transgression additive up to d_C(triangle)", defect == witness, lambda: f"{b}/{a} {pname} {tri}")
    # naturality along R^1 -> R^2, x -> (x, 0)
    if cfg.example not in (None, "trivial-r2"):
        return col.results()
    conn = get_connection("trivial-r2", "trivial", 0)
    new, fbar = pullback_bundle(conn.bundle, euclidean("x"), {"x": "x", "y": "0"})
    pulled = pull_connection(conn, new, fbar)
    for pname, P in Ps.items():
        lhs = pullback(fbar, char_form(P, conn))
        rhs = char_form(P, pulled)
        col.check("pullback naturality", lhs == rhs, lambda: f"{pname}: {lhs} != {rhs}")
    return col.results()


MAIN_CASES = [
    ("trivial-r2", "rotation-plane", 0, "id"),
    ("trivial-r2", "rotation-plane", 0, "X^2"),
    ("hopf", "hopf", 0, "id"),
    ("hopf", "hopf", 1, "X^2"),
    ("trivial-r2", "trivial", 0, "id"),
]


def suite_main_theorem(cfg: SuiteConfig) -> List[Result]:
    col = _Collector("main-theorem")
    for b, a, i, P in MAIN_CASES:
        if cfg.example and b != cfg.example:
            continue
        rep = classform_check(polynomial(P), get_connection(b, a, i), cfg.p_max)
        col.check(f"pr0 J int omega_P(Theta) = P(Omega + mu) [{b}/{a}#{i}, {P}]", rep["ok"], lambda: str(rep["mismatch"] or rep["basic"] or rep["compatibility"]))
    return col.results()


def suite_algebra_hom(cfg: SuiteConfig) -> List[Result]:
    col = _Collector("algebra-hom")
    rng = random.Random(cfg.seed + 6)
    for name in ("rotation-plane", "hopf"):
        X = ActionSpace(get_action(name))
        for _ in range(_n(cfg, 10)):
            w1, w2 = random_dupont_form(X, rng), random_dupont_form(X, rng)
            bad = w1.degeneracy_defects() + w2.degeneracy_defects()
            col.check(f"samples compatible with degeneracies [{name}]", not bad, lambda: _first(bad))
            rep = algebra_hom_check(w1, w2)
            col.check(f"pr0 J int is multiplicative [{name}]", rep["ok"], lambda: str(rep["mismatch"]))
    # the degeneracy hypothesis cannot be dropped
    X = ActionSpace(get_action("rotation-plane"))
    w1, w2 = degeneracy_counterexample(X)
    rep = algebra_hom_check(w1, w2)
    col.check("face-only compatible pair is a counterexample", not rep["ok"] and w1.is_compatible(), lambda: "product was multiplicative")
    return col.results()


def suite_moment_map(cfg: SuiteConfig) -> List[Result]:
    col = _Collector("moment-map")
    for name in line_bundle_names():
        L = get_line_bundle(name)
        B, conn = L.principal()
        rep = compare_pb_vb(conn, L)
        col.check(f"curvature: d theta + theta^theta = R [{name}]", rep["curvature"], lambda: _first(rep["mismatch"]))
        col.check(f"mu^theta = mu^nabla [{name}]", rep["moment"], lambda: _first(rep["mismatch"]))
        # the comparison must notice a perturbed connection
        bent = type(conn)(B, [conn.components[0] + parse_expr("x*y*dx", B.total, forms=True)])
        rep2 = compare_pb_vb(bent, L)
        col.check(f"perturbation detected [{name}]", not rep2["ok"], lambda: "perturbed connection passed")
    return col.results()


def suite_universal(cfg: SuiteConfig) -> List[Result]:
    col = _Collector("universal")
    for P in ("id", "X^2"):
        rep = universal_inverse_check(polynomial(P), max(cfg.p_max, 3))
        col.check(f"pr0 J int omega_P(theta-bar) = P [{P}]", rep["ok"], lambda: str(rep["mismatch"] or rep["identification"]))
    return col.results()


def suite_numeric(cfg: SuiteConfig) -> List[Result]:
    from .numeric import curvature_oracle

    col = _Collector("numeric")
    for b, a, i in (("trivial-r2", "rotation-plane", 0), ("trivial-r2", "trivial", 0), ("hopf", "hopf", 0), ("hopf", "hopf", 1)):
        if cfg.example and b != cfg.example:
            continue
        rep = curvature_oracle(get_connection(b, a, i), samples=_n(cfg, 50), seed=cfg.seed)
        col.check(f"finite differences agree to 1e-6 [{b}/{a}#{i}]", rep["ok"], lambda: _first(rep["failures"]))
    return col.results()


SUITES: Dict[str, Callable[[SuiteConfig], List[Result]]] = {
    "algebra-hom": suite_algebra_hom,
    "cartan": suite_cartan,
    "chain-map": suite_chain_map,
    "chern-weil": suite_chern_weil,
    "double-complex": suite_double_complex,
    "exterior": suite_exterior,
    "getzler": suite_getzler,
    "main-theorem": suite_main_theorem,
    "moment-map": suite_moment_map,
    "numeric": suite_numeric,
    "simplex": suite_simplex,
    "universal": suite_universal,
}


def resolve_suites(names) -> List[str]:
    out = []
    for n in names:
        if n == "all":
            out.extend(SUITES)
        elif n in SUITES:
            out.append(n)
        else:
            raise KeyError(n)
    return sorted(set(out))


def run_suites(cfg: SuiteConfig) -> List[Result]:
    results = []
    for name in resolve_suites(cfg.suites):
        results.extend(SUITES[name](cfg))
    return results

"""Verification suites bundling the module invariants for one parameter
triple.  Used by the command-line ``verify`` subcommand and by the acceptance
tests; every check is deterministic given the seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import affine_flag, flatness, gkm, linear_geometry as lg, order
from .core import (
    DEFAULT_MAX_SIZE,
    Params,
    component_fixed_point,
    component_subsets,
    enumerate_length_tuples,
    lengths_to_jug,
    lengths_to_perm,
    perm_length,
    shift_sum,
)
from .moment_graph import MomentGraph, build_graph, check_rotation_equivariance


@dataclass
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def __str__(self) -> str:
        status = "ok" if self.ok else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"[{self.suite}] {self.name}: {status}{tail}"


def _result(suite, name, ok, detail=""):
    return CheckResult(suite, name, bool(ok), detail)


# ---------------------------------------------------------------------------
# orders


def suite_orders(p: Params, max_size: int = DEFAULT_MAX_SIZE,
                 graph: MomentGraph | None = None) -> list[CheckResult]:
    out = []
    g = graph if graph is not None else build_graph(p, max_size)
    # the relation comparison generates every Bruhat cover and raises if one
    # escapes the bounded set, so it doubles as the lower-ideal check
    try:
        report = order.verify_order_equivalence(p, max_size, graph=g)
    except AssertionError as exc:
        out.append(_result("orders", "three orders coincide", False, "aborted"))
        out.append(_result("orders", "covers stay bounded", False, str(exc)))
        return out
    out.append(_result("orders", "three orders coincide", report.ok, str(report)))
    out.append(_result("orders", "covers stay bounded", True))

    coeffs = order.poincare_polynomial(p, max_size)
    dim = p.omega * p.k * (p.n - p.k)
    top = math.comb(p.n, p.k)
    out.append(
        _result(
            "orders",
            "cell-count polynomial shape",
            len(coeffs) - 1 == dim and coeffs[-1] == top and sum(coeffs) == len(g.vertices),
            f"{order.poincare_str(coeffs)}; degree {len(coeffs) - 1}, top {coeffs[-1]}",
        )
    )

    lengths = [perm_length(lengths_to_perm(p, v)) for v in g.vertices]
    out.append(
        _result(
            "orders",
            "out-degree equals cell dimension",
            all(len(g.out_edges[i]) == l for i, l in enumerate(lengths)),
        )
    )
    out.append(
        _result(
            "orders",
            "edge count equals weighted cell count",
            len(g.edges) == sum(d * c for d, c in enumerate(coeffs)),
            f"{len(g.edges)} edges",
        )
    )
    return out


# ---------------------------------------------------------------------------
# gkm


def suite_gkm(p: Params, max_size: int = DEFAULT_MAX_SIZE,
              graph: MomentGraph | None = None, point_limit: int = 3) -> list[CheckResult]:
    out = []
    g = graph if graph is not None else build_graph(p, max_size)

    rot = check_rotation_equivariance(g)
    out.append(_result("gkm", "rotation equivariance of the graph", rot.ok,
                       rot.violation or f"{rot.checked} rotated edges"))

    moment = gkm.moment_class(g)
    classes = [gkm.constant_class(g), moment, {v: poly * poly for v, poly in moment.items()}]
    # point classes stay cheap at sources (no in-edges)
    indeg = {v: 0 for v in g.vertices}
    for e in g.edges:
        indeg[g.vertices[e.target]] += 1
    sources = [v for v in g.vertices if indeg[v] == 0]
    classes.extend(gkm.point_class(g, v) for v in sources[:point_limit])
    all_ok, detail = True, f"{len(classes)} classes"
    for cls in classes:
        if not gkm.check_gkm_class(cls, g).ok:
            all_ok, detail = False, "a generated class fails the congruences"
            break
        # the generator suffices: the action of m is the m-th iterate
        if not gkm.check_gkm_class(gkm.zn_act_class(1, cls, p), g).ok:
            all_ok, detail = False, "the generator rotation breaks the congruences"
            break
        acted = cls
        for _ in range(p.n):
            acted = gkm.zn_act_class(1, acted, p)
        if acted != cls:
            all_ok, detail = False, "n-fold rotation is not the identity"
            break
        for m in range(p.n):
            it = cls
            for _ in range(m):
                it = gkm.zn_act_class(1, it, p)
            if it != gkm.zn_act_class(m, cls, p):
                all_ok, detail = False, f"rotation by {m} is not the {m}-th iterate"
                break
        if not all_ok:
            break
    out.append(_result("gkm", "rotations preserve the congruence classes", all_ok, detail))

    if (p.k, p.n, p.omega) == (1, 2, 2):
        refs = gkm.reference_classes_1_2_2()
        ok = all(gkm.check_gkm_class(cls, g).ok for cls in refs.values())
        out.append(_result("gkm", "reference classes satisfy the congruences", ok))
        ok = all(gkm.kt_shape_check(cls, v, g).ok for v, cls in refs.items())
        out.append(_result("gkm", "reference classes have normalized shape", ok))
        sigma = {
            (3, 1): (1, 3), (1, 3): (3, 1), (4, 0): (0, 4), (0, 4): (4, 0), (2, 2): (2, 2),
        }
        ok = all(gkm.zn_act_class(1, refs[v], p) == refs[w] for v, w in sigma.items())
        out.append(_result("gkm", "generator swaps the reference classes", ok))
    return out


# ---------------------------------------------------------------------------
# aut


def suite_aut(p: Params, seed: int = 0, samples: int = 50,
              max_size: int = DEFAULT_MAX_SIZE) -> list[CheckResult]:
    out = []
    rng = random.Random(seed)
    tau = lg.shift_matrix(p.nw)

    auts = [lg.random_aut(p, rng) for _ in range(min(samples, 10))]
    inter_ok = all(
        lg.aut_matrix(A, i + 1) @ tau == tau @ lg.aut_matrix(A, i)
        for A in auts
        for i in range(1, p.n + 1)
    )
    out.append(_result("aut", "matrices intertwine the shift", inter_ok))

    tuples = enumerate_length_tuples(p, max_size)
    attract_ok, detail = True, f"{len(tuples)} fixed points x {samples} samples"
    orbit_ok = True
    for ell in tuples:
        jug = lengths_to_jug(p, ell)
        base = lg.coordinate_point(p, jug).canonical()
        if not lg.is_subrep(base):
            attract_ok, detail = False, f"coordinate point of {ell} is not shift-stable"
            break
        images = set()
        for s in range(samples):
            A = lg.random_aut(p, rng)
            moved = lg.aut_act(A, base)
            images.add(moved.mats)
            if s < 5 and not lg.is_subrep(moved):
                attract_ok, detail = False, f"orbit of {ell} leaves the shift-stable locus"
                break
            if lg.bb_limit(moved) != jug:
                attract_ok, detail = False, f"orbit of {ell} attracts to the wrong fixed point"
                break
        if not attract_ok:
            break
        cell_dim = perm_length(lengths_to_perm(p, ell))
        if (len(images) == 1) != (cell_dim == 0):
            orbit_ok = False
    out.append(_result("aut", "orbits stay in the attracting cell", attract_ok, detail))
    out.append(_result("aut", "orbit is a point exactly for dimension-0 cells", orbit_ok))

    base = lg.coordinate_point(p, lengths_to_jug(p, tuples[0])).canonical()
    comp_ok = True
    for _ in range(min(samples, 10)):
        A, B = lg.random_aut(p, rng), lg.random_aut(p, rng)
        if lg.aut_act(A, lg.aut_act(B, base)) != lg.aut_act(lg.aut_compose(A, B), base):
            comp_ok = False
            break
    out.append(_result("aut", "action respects composition", comp_ok))
    return out


# ---------------------------------------------------------------------------
# embedding


def suite_embedding(p: Params, max_size: int = DEFAULT_MAX_SIZE,
                    graph: MomentGraph | None = None) -> list[CheckResult]:
    out = []
    g = graph if graph is not None else build_graph(p, max_size)

    flags_ok, lengths_ok = True, True
    for i, ell in enumerate(g.vertices):
        fp = affine_flag.embed_fixed_point(p, lengths_to_jug(p, ell))
        if not affine_flag.check_flag_point(fp).ok:
            flags_ok = False
            break
        w = affine_flag.sato_weyl(fp)
        if perm_length(w) != len(g.out_edges[i]):
            lengths_ok = False
    out.append(_result("embedding", "embedded points are valid flag points", flags_ok))
    out.append(_result("embedding", "window length equals cell dimension", lengths_ok))

    comp_ok = True
    for subset in component_subsets(p):
        jug = component_fixed_point(p, subset)
        w = affine_flag.sato_weyl(affine_flag.embed_fixed_point(p, jug))
        expected = affine_flag.w_of_subset(p, subset)
        if w != expected or shift_sum(w) != 0:
            comp_ok = False
            break
    out.append(_result("embedding", "component windows match the subset formula", comp_ok))

    report = affine_flag.schubert_union_check(p, max_size, graph=g)
    out.append(_result("embedding", "image is the union of the lower intervals",
                       report.ok, str(report)))
    return out


# ---------------------------------------------------------------------------
# flatness


def suite_flatness() -> list[CheckResult]:
    out = []
    rank = flatness.degree111_rank()
    out.append(_result("flatness", "multilinear slice has rank 10", rank == 10, f"rank = {rank}"))
    out.append(_result("flatness", "listed monomials are independent", flatness.basis_is_independent()))
    classes = flatness.classify_monomials()
    out.append(
        _result(
            "flatness",
            "every monomial is zero or matches a listed one",
            "UNMATCHED" not in classes.values(),
        )
    )

    a1, b1 = flatness._var("a1"), flatness._var("b1")
    a2, b2 = flatness._var("a2"), flatness._var("b2")
    a3, b3 = flatness._var("a3"), flatness._var("b3")
    zero = flatness._const(0)
    checks = [
        ("y1y2z3", (a1, zero, zero)),
        ("x1x2z3", (zero, zero, zero)),
        ("z1z2z3", (a1 * b1, a2 * b2, a3 * b3)),
        ("x1z2z3", flatness.eval_monomial((1, 1, 2))),  # coincides with y1y2z3
    ]
    by_name = {flatness.monomial_name(m): m for m in flatness.all_monomials()}
    ok = all(flatness.eval_monomial(by_name[name]) == tuple(value) for name, value in checks)
    out.append(_result("flatness", "quoted evaluation identities hold", ok))
    return out


# ---------------------------------------------------------------------------
# dispatcher

SUITES = ("orders", "gkm", "aut", "embedding", "flatness")


def run_suites(names, p: Params, seed: int = 0, samples: int = 50,
               max_size: int = DEFAULT_MAX_SIZE) -> list[CheckResult]:
    requested = list(SUITES) if "all" in names else list(names)
    unknown = [s for s in requested if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites {unknown}; choose from {SUITES + ('all',)}")
    graph = None
    if any(s in requested for s in ("orders", "gkm", "embedding")):
        graph = build_graph(p, max_size)
    results = []
    for s in requested:
        if s == "orders":
            results.extend(suite_orders(p, max_size, graph))
        elif s == "gkm":
            results.extend(suite_gkm(p, max_size, graph))
        elif s == "aut":
            results.extend(suite_aut(p, seed, samples, max_size))
        elif s == "embedding":
            results.extend(suite_embedding(p, max_size, graph))
        elif s == "flatness":
            results.extend(suite_flatness())
    return results

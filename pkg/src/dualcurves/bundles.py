"""Self-contained regression bundles run by ``dualcurves verify``."""

from __future__ import annotations

from . import fixtures as fx
from .combinat import (
    connectivity_bounds,
    dual_graph_of_complex,
    enumerate_realizations,
    make_star_windmill,
    vertex_connectivity,
)
from .graphcurve import GraphCurveJob, build_graph_curve, certify_graph_curve, veronese_certificate
from .ideals import Ideal, ideal_intersection, kernel_of_ring_map, pfaffian_ideal
from .invariants import homological_profile
from .ring import FieldSpec
from .schemes import (
    ComponentSet,
    PreconditionError,
    dual_graph_of_components,
    gorenstein_bounds,
    hartshorne_check,
    search_line_arrangement,
    subadditivity_check,
)


def _result(name: str, checks: dict, data: dict, optional: dict | None = None) -> dict:
    return {
        "bundle": name,
        "checks": checks,
        "optional": optional or {},
        "data": data,
        "pass": all(checks.values()),
    }


def diamond_curve(field: FieldSpec, seed: int = 0) -> dict:
    """Curve with dual graph K4 minus an edge from four plane lines, forms of degree 2."""
    job = GraphCurveJob(fx.DIAMOND_GRAPH, d=fx.DIAMOND_DEGREE, e=2, field=field, seed=seed, forms=fx.DIAMOND_FORMS)
    model = build_graph_curve(job)
    expected = fx.diamond_ideal(field)
    prof = homological_profile(model.presentation, seed=seed)
    cs = model.component_set()
    arr = dual_graph_of_components(cs, with_profiles=False)
    arr.union_profile = prof
    v1 = veronese_certificate(model, 1, seed=seed)
    v2 = veronese_certificate(model, 2, seed=seed)
    cert = certify_graph_curve(job)
    checks = {
        "presentation_matches_quadrics": model.presentation.equals(expected),
        "reg_quotient_is_2": prof.reg_quotient == 2,
        "acm": prof.is_ACM,
        "not_gorenstein": not prof.is_Gorenstein,
        "dual_graph_is_diamond": arr.dual_graph == fx.DIAMOND_GRAPH,
        "veronese_1_cm": v1.is_CM,
        "veronese_2_cm": v2.is_CM,
        "certification_items": all(cert["items"].values()),
        "hartshorne": hartshorne_check(cs, arr)["consistent"],
    }
    data = {
        "field": str(field),
        "generators": [str(g) for g in model.presentation.gens],
        "profile": prof.as_json(),
        "dual_graph": arr.dual_graph.as_json(),
        "component_degrees": [c["degree"] for c in cert["components"]],
        "certification": cert["items"],
    }
    return _result("example-3.3", checks, data)


def monomial_surface(field: FieldSpec, seed: int = 0) -> dict:
    """Monomial surface: reg 5, its union with a plane has reg 7 and is not ACM."""
    phi = fx.surface_map(field)
    p = kernel_of_ring_map(phi)
    plane = Ideal.parse(phi.source, fx.SURFACE_PLANE)
    union = ideal_intersection(p, plane)
    pp = homological_profile(p, seed=seed)
    pu = homological_profile(union, seed=seed)
    plane_reg = homological_profile(plane).reg_ideal
    try:
        subadditivity_check(ComponentSet(phi.source, [p, plane], union))
        refused = False
    except PreconditionError:
        refused = True
    checks = {
        "surface_reg_ideal_is_5": pp.reg_ideal == 5,
        "union_reg_ideal_is_7": pu.reg_ideal == 7,
        "union_exceeds_sum": pu.reg_ideal > pp.reg_ideal + plane_reg,
        "union_not_acm": not pu.is_ACM,
        "subadditivity_refused_for_surfaces": refused,
    }
    data = {
        "field": str(field),
        "surface_generators": [str(g) for g in p.gens],
        "surface_profile": pp.as_json(),
        "union_profile": pu.as_json(),
        "plane_reg_ideal": plane_reg,
    }
    return _result("example-4.3", checks, data)


def pfaffian_curve(variant: str, field: FieldSpec, seed: int = 0) -> dict:
    """Gorenstein curve cut out by the submaximal Pfaffians of a 5x5 skew matrix of quadrics."""
    M = fx.pfaffian_matrix(variant, field)
    I = pfaffian_ideal(M)
    prof = homological_profile(I, seed=seed)
    graph = fx.PFAFFIAN_GRAPHS[variant]
    regs = fx.PFAFFIAN_COMPONENT_REGS[variant]
    bounds = gorenstein_bounds(prof.reg_quotient, regs, graph)
    expected_bound = 2 if variant == "A" else 1
    checks = {
        "five_generators": len(I.gens) == 5,
        "height_3": prof.height == 3,
        "gorenstein": prof.is_Gorenstein,
        "reg_quotient_is_7": prof.reg_quotient == 7,
        "betti_1_5_5_1": prof.betti.totals() == [1, 5, 5, 1],
        "top_twist_10": prof.betti.twists(3) == [10],
        "floor_bound": bounds["floor_bound"] == expected_bound,
        "connectivity": vertex_connectivity(graph) == expected_bound,
        "bounds_hold": bounds["pass"],
    }
    data = {
        "field": str(field),
        "pfaffians": [str(g) for g in I.gens],
        "profile": prof.as_json(),
        "bounds": bounds,
    }
    return _result("example-5.1" if variant == "A" else "example-5.2", checks, data)


def realizability(seed: int = 0, dims=(1, 2, 3)) -> dict:
    """Pure complexes with dual graph K3, K4 minus an edge, and the forbidden graph."""
    checks = {}
    counts = {}
    for d in dims:
        k3 = enumerate_realizations(fx.TRIANGLE, d)
        dia = enumerate_realizations(fx.DIAMOND, d)
        bad = enumerate_realizations(fx.FORBIDDEN_GRAPH, d)
        counts[str(d)] = {"triangle": len(k3), "diamond": len(dia), "forbidden": len(bad)}
        checks[f"triangle_d{d}"] = len(k3) == 2
        checks[f"diamond_d{d}"] = len(dia) == 1
        checks[f"forbidden_d{d}"] = len(bad) == 0
        known = {make_star_windmill(kind, d).canonical_form(fx.TRIANGLE.automorphisms()) for kind in ("star", "windmill")}
        found = {C.canonical_form(fx.TRIANGLE.automorphisms()) for C in k3}
        checks[f"star_windmill_d{d}"] = known == found and all(
            dual_graph_of_complex(make_star_windmill(kind, d)) == fx.TRIANGLE for kind in ("star", "windmill")
        )
    lines = search_line_arrangement(fx.FORBIDDEN_GRAPH, 3, seed=seed)
    return _result("appendix", checks, {"counts": counts}, {"forbidden_graph_lines_in_P3": lines.success})


BUNDLES = {
    "example-3.3": lambda field, seed: diamond_curve(field, seed),
    "example-4.3": lambda field, seed: monomial_surface(field, seed),
    "example-5.1": lambda field, seed: pfaffian_curve("A", field, seed),
    "example-5.2": lambda field, seed: pfaffian_curve("B", field, seed),
    "appendix": lambda field, seed: realizability(seed),
}


def bound_arithmetic() -> dict:
    a = connectivity_bounds(7, 6)
    b = connectivity_bounds(7, 7)
    c = connectivity_bounds(5, 1)
    d = connectivity_bounds(1, 1, degrees_n=([1] * 27, 3))
    return {
        "floor_7_6": a.floor_bound,
        "floor_7_7": b.floor_bound,
        "floor_5_1": c.floor_bound,
        "ci_N_27_lines": d.ci_N,
        "ci_bound_27_lines": d.ci_bound,
    }

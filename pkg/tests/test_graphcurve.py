import pytest

from dualcurves import fixtures as fx
from dualcurves.combinat import Graph, complete_graph, cycle_graph, path_graph, star_graph
from dualcurves.graphcurve import (
    GraphCurveJob,
    build_graph_curve,
    certify_graph_curve,
    combinatorial_predictions,
    default_degree,
    draw_forms,
    forms_in_general_position,
)
from dualcurves.invariants import homological_profile

from conftest import GF

PAW = Graph.from_digits(4, "12,13,23,34")
FOUR_VERTEX_GRAPHS = [
    ("P4", path_graph(4), 2),
    ("K13", star_graph(4), 2),
    ("C4", cycle_graph(4), 3),
    ("diamond", fx.DIAMOND, 3),
    ("K4", complete_graph(4), 3),
    ("paw", PAW, 3),
]


@pytest.mark.parametrize("name, G, proj_reg", FOUR_VERTEX_GRAPHS, ids=[g[0] for g in FOUR_VERTEX_GRAPHS])
def test_certification_on_four_vertices(name, G, proj_reg):
    rep = certify_graph_curve(GraphCurveJob(G, d=3, field=GF))
    assert all(rep["items"].values()), rep["items"]
    assert all(rep["checks"].values()), rep["checks"]
    assert rep["veronese"]["proj_reg"] == proj_reg
    assert rep["pass"]


@pytest.mark.parametrize(
    "G, d", [(fx.DIAMOND, 2), (fx.TRIANGLE, 1), (fx.TRIANGLE, 2)], ids=["diamond-2", "triangle-1", "triangle-2"]
)
def test_explicit_veronese_agrees(G, d):
    rep = certify_graph_curve(GraphCurveJob(G, d=d), explicit_veronese=True)
    assert rep["checks"]["veronese_routes_agree"]
    assert rep["checks"]["veronese_dual_graph"]


def test_diamond_fixture_presentation(field):
    job = GraphCurveJob(fx.DIAMOND_GRAPH, d=2, field=field, forms=fx.DIAMOND_FORMS)
    model = build_graph_curve(job)
    assert model.N == 5
    assert model.presentation.equals(fx.diamond_ideal(field))
    prof = homological_profile(model.presentation)
    assert prof.reg_quotient == 2 and prof.is_ACM and not prof.is_Gorenstein
    assert prof.betti.totals() == [1, 4, 5, 2]


@pytest.mark.parametrize(
    "G, d, degree, genus",
    [(path_graph(4), 3, 6, 0), (cycle_graph(4), 3, 8, 1), (complete_graph(4), 3, 12, 3), (fx.DIAMOND, 2, 6, 2)],
    ids=["P4", "C4", "K4", "diamond"],
)
def test_predictions(G, d, degree, genus):
    p = combinatorial_predictions(G, d)
    assert (p.degree, p.genus) == (degree, genus)
    assert p.proj_reg == (2 if G.is_tree() else 3)


@pytest.mark.parametrize("s, d", [(2, 1), (3, 1), (4, 3), (5, 6), (6, 10)])
def test_default_degree(s, d):
    assert default_degree(s) == d


def test_degree_too_small_rejected():
    # the point ideal of C4 needs degree 2 generators
    with pytest.raises(ValueError):
        build_graph_curve(GraphCurveJob(cycle_graph(4), d=1))


def test_job_validation():
    with pytest.raises(ValueError):
        GraphCurveJob(Graph.from_edges(3, [(1, 2)]))
    with pytest.raises(ValueError):
        GraphCurveJob(Graph.from_edges(1, []))
    with pytest.raises(ValueError):
        build_graph_curve(GraphCurveJob(fx.TRIANGLE, d=1, forms=[(1, 0, 0), (0, 1, 0), (1, 1, 0)]))


def test_drawn_forms_are_general(field):
    forms = draw_forms(6, field, seed=3)
    assert len(forms) == 6 and forms_in_general_position(forms, field)
    assert draw_forms(6, field, seed=3) == forms
    assert not forms_in_general_position([(1, 0, 0), (0, 1, 0), (1, 1, 0)], field)


def test_certification_is_deterministic():
    job = GraphCurveJob(PAW, d=3, seed=7)
    assert certify_graph_curve(job) == certify_graph_curve(job)

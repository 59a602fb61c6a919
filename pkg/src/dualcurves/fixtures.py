"""Embedded data for the regression bundles."""

from __future__ import annotations

from .combinat import Graph, complete_graph
from .ideals import Ideal, RingMap, SkewPolyMatrix, parse_skew_matrix
from .ring import FieldSpec, PolyRing

# curve whose dual graph is K4 minus the edge 12, built from four plane lines
DIAMOND_GRAPH = Graph.from_digits(4, "13,14,23,24,34")
DIAMOND_FORMS = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]  # x, y, z, x+y+z
DIAMOND_DEGREE = 2
DIAMOND_QUADRICS = [
    "y0*y3 - y1^2",
    "y0*y4 - y1*y2",
    "y1*y4 - y2*y3",
    "y1*y2 + y2*y3 + y2*y4",
]
DIAMOND_VARS = ("y0", "y1", "y2", "y3", "y4")


def diamond_ideal(field: FieldSpec) -> Ideal:
    return Ideal.parse(PolyRing(field, DIAMOND_VARS), DIAMOND_QUADRICS)


# monomial surface in P^4 and its union with a plane (regularity jumps from 5 to 7)
SURFACE_SOURCE = ("x0", "x1", "x2", "x3", "x4")
SURFACE_TARGET = ("a", "b", "c")
SURFACE_IMAGES = ["a^3*b", "b^4", "a^3*c", "a*b*c^2", "b^2*c^2"]
SURFACE_PLANE = ["x1", "x2"]


def surface_map(field: FieldSpec) -> RingMap:
    src = PolyRing(field, SURFACE_SOURCE)
    tgt = PolyRing(field, SURFACE_TARGET)
    return RingMap(src, tgt, [tgt.parse(t) for t in SURFACE_IMAGES])


# skew-symmetric 5x5 matrices of quadrics whose Pfaffians define Gorenstein curves
PFAFFIAN_VARS = ("x1", "x2", "x3", "x4", "x5")
_PFAFFIAN_ROWS = [
    ["x1^2 + x4*x3", "0", "0", "x3*x5 + x1^2 + x3*x4"],
    ["x5*x4 - x2^2", "0", None],
    ["x3^2 + x5*x1", "x5^2 + x3*x1 - x2*x4"],
    ["x5*x2 - x3^2"],
]
PFAFFIAN_ENTRY_25 = {"A": "x1*x3 - x4^2", "B": "x1*x3 + x4^2"}

# dual graphs and component regularities of the two Pfaffian curves, stored as data
# because computing them needs a primary decomposition
PFAFFIAN_GRAPH_A = Graph.from_digits(
    8, "12,14,23,24,27,34,35,36,37,38,45,46,47,48,56,57,58,67,68,78"
)
PFAFFIAN_GRAPH_B = PFAFFIAN_GRAPH_A.without_edge(1, 2)
PFAFFIAN_COMPONENT_REGS = {"A": [3, 2, 2, 6, 3, 4, 4, 3], "B": [3, 2, 2, 7, 3, 4, 4, 3]}
PFAFFIAN_GRAPHS = {"A": PFAFFIAN_GRAPH_A, "B": PFAFFIAN_GRAPH_B}


def pfaffian_rows(variant: str) -> list[list[str]]:
    rows = [list(r) for r in _PFAFFIAN_ROWS]
    rows[1][2] = PFAFFIAN_ENTRY_25[variant]
    return rows


def pfaffian_matrix(variant: str, field: FieldSpec) -> SkewPolyMatrix:
    return parse_skew_matrix(PolyRing(field, PFAFFIAN_VARS), 5, pfaffian_rows(variant))


# graphs for the realizability lemmas
TRIANGLE = complete_graph(3)
DIAMOND = DIAMOND_GRAPH
FORBIDDEN_GRAPH = Graph.from_digits(5, "12,13,15,23,24,34,45")

# a binomial with a huge exponent gap, used to exercise parsing and degree bookkeeping
HIGH_DEGREE_BINOMIAL = "x0*x1^2000 - x4*x2^2000"

SKEW_LINES = (("x0", "x1"), ("x2", "x3"))

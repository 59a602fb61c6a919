"""Readers for the text input formats (ideal, component-set, skew-matrix, graph, complex files)."""

from __future__ import annotations

import re

from .combinat import Graph, PureComplex
from .ideals import Ideal, SkewPolyMatrix
from .ring import FieldSpec, ParseError, PolyRing
from .schemes import ComponentSet, parse_ring_header


def _content_lines(text: str) -> list[str]:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    return [ln for ln in lines if ln]


def _with_field(ring: PolyRing, field: FieldSpec | None) -> PolyRing:
    return ring if field is None else PolyRing(field, ring.names)


def read_ideal(text: str, field: FieldSpec | None = None) -> Ideal:
    """``ring <Q|prime> vars...`` followed by one polynomial per line."""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty ideal file")
    ring = _with_field(parse_ring_header(lines[0]), field)
    return Ideal.parse(ring, lines[1:])


def read_components(text: str, field: FieldSpec | None = None) -> ComponentSet:
    cs = ComponentSet.parse(text)
    if field is None:
        return cs
    ring = _with_field(cs.ring, field)
    comps = [Ideal.parse(ring, [str(g) for g in I.gens]) for I in cs.components]
    union = None if cs.union is None else Ideal.parse(ring, [str(g) for g in cs.union.gens])
    return ComponentSet(ring, comps, union)


_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def read_skew_matrix(text: str, field: FieldSpec | None = None) -> SkewPolyMatrix:
    """Optional ring header, then ``pfaffian n`` and the ``n(n-1)/2`` upper entries row by row.

    Without a ring header the variables are the names occurring in the entries,
    in natural order (``x2`` before ``x10``), over ``field`` (default GF(32003)).
    """
    lines = _content_lines(text)
    ring = None
    if lines and lines[0].startswith("ring"):
        ring = _with_field(parse_ring_header(lines[0]), field)
        lines = lines[1:]
    if not lines or not lines[0].startswith("pfaffian"):
        raise ParseError("skew-matrix file needs a 'pfaffian n' header")
    head = lines[0].split()
    if len(head) != 2 or not head[1].isdigit():
        raise ParseError(f"malformed header {lines[0]!r}")
    n = int(head[1])
    entries = lines[1:]
    if len(entries) != n * (n - 1) // 2:
        raise ParseError(f"expected {n * (n - 1) // 2} upper entries, got {len(entries)}")
    if ring is None:
        names = sorted({m for e in entries for m in _NAME.findall(e)}, key=_natural_key)
        if not names:
            names = ["x"]
        ring = PolyRing(field or FieldSpec.prime(32003), tuple(names))
    upper = {}
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            upper[(i, j)] = ring.parse(entries[k])
            k += 1
    return SkewPolyMatrix(ring, n, upper)


def read_graph(text: str) -> Graph:
    return Graph.parse(text)


def read_complex(text: str) -> PureComplex:
    return PureComplex.parse(text)

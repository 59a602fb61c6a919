"""Seeded random arrangements of lines and conics in P^3."""

from __future__ import annotations

import random

from dualcurves.ideals import Ideal, ideal_sum
from dualcurves.invariants import hilbert_data
from dualcurves.linalg import nullspace
from dualcurves.ring import FieldSpec, PolyRing
from dualcurves.schemes import ComponentSet

NAMES = ("x0", "x1", "x2", "x3")


def _form(ring, coeffs):
    f = ring.zero()
    for k, c in enumerate(coeffs):
        if c:
            f = f + ring.var(k).scale(c)
    return f


def _forms_through(ring, points, rng, count):
    """``count`` random linear forms vanishing at all ``points``."""
    field = ring.field
    basis = nullspace(points, field) if points else [[int(i == j) for j in range(4)] for i in range(4)]
    out = []
    for _ in range(count):
        coeffs = [0] * 4
        for b in basis:
            c = field.random_element(rng, nonzero=True, bound=5)
            coeffs = [field(a + c * x) for a, x in zip(coeffs, b)]
        out.append(_form(ring, coeffs))
    return out


def _point(field, rng):
    return [field.random_element(rng, bound=5) for _ in range(4)]


def _line(ring, rng, through):
    pts = list(through) + [_point(ring.field, rng) for _ in range(2 - len(through))]
    return Ideal(ring, _forms_through(ring, pts, rng, 2))


def _conic(ring, rng, through):
    plane = _forms_through(ring, through, rng, 1)[0]
    l1, l2 = _forms_through(ring, through, rng, 2)
    m1, m2 = _forms_through(ring, [], rng, 2)
    return Ideal(ring, [plane, l1 * m1 + l2 * m2])


def random_curve_arrangement(seed: int, field: FieldSpec | None = None, max_tries: int = 50) -> ComponentSet:
    """Two or three lines/conics sharing some points, with pairwise finite intersections."""
    field = field or FieldSpec.prime(32003)
    ring = PolyRing(field, NAMES)
    rng = random.Random(seed)
    for _ in range(max_tries):
        pool = [_point(field, rng) for _ in range(3)]
        comps = []
        for _ in range(rng.choice([2, 3])):
            through = rng.sample(pool, rng.choice([0, 1, 1, 2]))
            if rng.random() < 0.5:
                comps.append(_line(ring, rng, through))
            else:
                comps.append(_conic(ring, rng, through[:2]))
        curves = all(hilbert_data(I).krull_dim == 2 for I in comps)
        finite = all(
            hilbert_data(ideal_sum(comps[i], comps[j])).krull_dim <= 1
            for i in range(len(comps))
            for j in range(i + 1, len(comps))
        )
        if curves and finite:
            return ComponentSet(ring, comps)
    raise RuntimeError("no admissible arrangement found")

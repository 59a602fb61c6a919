import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from dualcurves.ideals import (
    Ideal,
    RingMap,
    SkewPolyMatrix,
    ideal_colon,
    ideal_combine,
    ideal_intersection,
    ideal_product,
    ideal_saturate,
    ideal_sum,
    independent_subset,
    kernel_of_ring_map,
    monomials_of_degree,
    pfaffian,
    pfaffian_ideal,
    submaximal_pfaffians,
    veronese_presentation,
)
from dualcurves.invariants import homological_profile
from dualcurves.linalg import det
from dualcurves.ring import PolyRing

from conftest import GF

monomial_exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)).filter(any)
monomial_gens = st.lists(monomial_exps, min_size=1, max_size=4)


def _monomial_ideal(R, exps):
    return Ideal(R, [R.monomial(e) for e in exps])


@settings(max_examples=40, deadline=None)
@given(monomial_gens, monomial_gens)
def test_monomial_intersection_is_lcm_ideal(a, b):
    R = PolyRing(GF, ("x", "y", "z"))
    lcms = [tuple(max(u, v) for u, v in zip(m, n)) for m in a for n in b]
    got = ideal_intersection(_monomial_ideal(R, a), _monomial_ideal(R, b))
    assert got.equals(_monomial_ideal(R, lcms))


@settings(max_examples=40, deadline=None)
@given(monomial_gens, monomial_exps)
def test_monomial_colon_by_monomial(a, n):
    R = PolyRing(GF, ("x", "y", "z"))
    quotients = [tuple(max(u - v, 0) for u, v in zip(m, n)) for m in a]
    got = ideal_colon(_monomial_ideal(R, a), _monomial_ideal(R, [n]))
    assert got.equals(_monomial_ideal(R, quotients) if all(any(q) for q in quotients) else Ideal.unit(R))


def test_operation_containments(xyz):
    I = Ideal.parse(xyz, ["x^2 - y*z", "x*y"])
    J = Ideal.parse(xyz, ["y^2", "x + z"])
    inter = ideal_intersection(I, J)
    prod = ideal_product(I, J)
    total = ideal_sum(I, J)
    assert prod.issubset(inter)
    assert inter.issubset(I) and inter.issubset(J)
    assert I.issubset(total) and J.issubset(total)
    assert ideal_colon(inter, J).issubset(ideal_colon(I, J))
    assert I.issubset(ideal_colon(I, J))


def test_saturation(field, xyz):
    # in two variables (x^2, xy) has an irrelevant embedded component; in three it is a point
    R = PolyRing(field, ("x", "y"))
    assert ideal_saturate(Ideal.parse(R, ["x^2", "x*y"]), Ideal.parse(R, ["x", "y"])).equals(Ideal.parse(R, ["x"]))
    I = Ideal.parse(xyz, ["x^2", "x*y"])
    assert ideal_saturate(I, Ideal.parse(xyz, ["x", "y", "z"])).equals(I)
    assert ideal_saturate(I, Ideal.parse(xyz, ["y"])).equals(Ideal.parse(xyz, ["x"]))


@pytest.mark.parametrize("op", ["sum", "product", "intersect", "colon"])
def test_combine_dispatch(xyz, op):
    I = Ideal.parse(xyz, ["x*y", "z^2"])
    J = Ideal.parse(xyz, ["x", "z"])
    direct = {"sum": ideal_sum, "product": ideal_product, "intersect": ideal_intersection, "colon": ideal_colon}[op]
    assert ideal_combine(op, I, J).equals(direct(I, J))


def test_combine_rejects_unknown_op(xyz):
    with pytest.raises(ValueError):
        ideal_combine("quotient", Ideal(xyz, []), Ideal(xyz, []))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_rational_normal_curve_kernel(field, m):
    src = PolyRing(field, tuple(f"y{i}" for i in range(m + 1)))
    tgt = PolyRing(field, ("s", "t"))
    s, t = tgt.gens()
    P = kernel_of_ring_map(RingMap(src, tgt, [s ** (m - i) * t**i for i in range(m + 1)]))
    prof = homological_profile(P)
    # quadrics, ACM of degree m, regularity 2
    assert set(P.generator_degrees()) == {2}
    assert len(P.minimal_generators()) == math.comb(m, 2)
    assert prof.degree == m and prof.is_ACM and prof.reg_ideal == 2


def test_kernel_with_clashing_names(field):
    R = PolyRing(field, ("x", "y"))
    x, y = R.gens()
    P = kernel_of_ring_map(RingMap(R, R, [x**2, y**2]))
    assert P.is_zero()


def test_veronese_of_the_plane_line(field):
    R = PolyRing(field, ("a", "b"))
    phi, K = veronese_presentation(Ideal(R, []), 2, var_prefix="w")
    assert phi.source.nvars == 3
    assert len(K.minimal_generators()) == 1 and K.generator_degrees() == [2]
    for g in K.gens:
        assert phi(g).is_zero()


def test_degree_part_dimension(xyz):
    I = Ideal.parse(xyz, ["x^2 - y*z", "y^3"])
    for d in range(5):
        part = I.degree_part(d)
        assert all(f in I and (f.is_zero() or f.degree == d) for f in part)
        assert len(independent_subset(part)) == len(part)
        assert len(part) <= len(monomials_of_degree(3, d))


def _evaluate(f, point):
    T = PolyRing(f.ring.field, ("t",))
    return f.substitute([T.const(v) for v in point]).as_dict().get((0,), 0)


def _generic_skew(field, n):
    names = [f"a{i}{j}" for i in range(n) for j in range(i + 1, n)]
    R = PolyRing(field, tuple(names))
    upper = {(i, j): R.var(f"a{i}{j}") for i in range(n) for j in range(i + 1, n)}
    return SkewPolyMatrix(R, n, upper)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_pfaffian_squares_to_determinant(field, n):
    M = _generic_skew(field, n)
    pf = pfaffian(M)
    rng = random.Random(n)
    for _ in range(3):
        pt = [field.random_element(rng, bound=9) for _ in M.ring.names]
        num = [[_evaluate(M[i, j], pt) for j in range(n)] for i in range(n)]
        value = _evaluate(pf, pt)
        assert field(value * value) == det(num, field)


def test_grassmannian_pfaffians():
    M = _generic_skew(GF, 5)
    pfs = submaximal_pfaffians(M)
    assert len(pfs) == 5 and all(f.degree == 2 for f in pfs)
    prof = homological_profile(pfaffian_ideal(M))
    assert prof.height == 3 and prof.is_Gorenstein
    assert prof.betti.totals() == [1, 5, 5, 1] and prof.betti.twists(3) == [5]


def test_skew_matrix_validation(xyz):
    with pytest.raises(ValueError):
        SkewPolyMatrix(xyz, 3, {(1, 0): xyz.var("x")})
    M = SkewPolyMatrix(xyz, 3, {(0, 1): xyz.var("x")})
    assert M[1, 0] == -xyz.var("x") and M[2, 2].is_zero()

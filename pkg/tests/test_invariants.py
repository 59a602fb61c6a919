import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from dualcurves.ideals import Ideal, ideal_intersection, veronese_presentation
from dualcurves.invariants import (
    BettiTable,
    HilbertData,
    cm_certificate,
    count_standard_monomials,
    hilbert_data,
    homological_profile,
    minimal_free_resolution,
    monomial_numerator,
    regular_linear_reduction,
    veronese_data,
)
from dualcurves.ring import LEX, PolyRing

from conftest import GF

TWISTED_CUBIC = ["x*z - y^2", "y*w - z^2", "x*w - y*z"]
SKEW_LINES = [["x", "y"], ["z", "w"]]


def _ring(field, n=4):
    return PolyRing(field, ("x", "y", "z", "w", "v", "u")[:n])


def _random_ideal(seed, n=3, ngens=3, maxdeg=3):
    rng = random.Random(seed)
    R = PolyRing(GF, ("x", "y", "z", "w")[:n])
    return Ideal(R, [oracles.random_homogeneous(R, rng.randint(1, maxdeg), rng, 0.5) for _ in range(ngens)])


@pytest.mark.parametrize(
    "gens, numerator",
    [
        ([], [1]),
        ([(1, 0)], [1, -1]),
        ([(2, 0), (0, 2)], [1, 0, -2, 0, 1]),
        ([(1, 1)], [1, 0, -1]),
        ([(2, 0), (1, 1)], [1, 0, -2, 1]),
    ],
)
def test_monomial_numerator(gens, numerator):
    assert monomial_numerator(gens) == numerator


def test_from_numerator_reduces():
    hd = HilbertData.from_numerator([1, 0, -3, 2], 4)
    assert (hd.krull_dim, hd.degree, hd.h_vector) == (2, 3, (1, 2))
    assert [hd.hf(d) for d in range(4)] == [1, 4, 7, 10]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_hilbert_function_matches_linear_algebra(seed):
    I = _random_ideal(seed)
    hd = hilbert_data(I)
    for d in range(6):
        assert hd.hf(d) == oracles.hilbert_function(I.gens, I.ring, d)
        assert hd.hf(d) == count_standard_monomials(I, d)


@pytest.mark.parametrize("seed", range(6))
def test_hilbert_data_independent_of_order(seed):
    I = _random_ideal(seed, n=4, ngens=3, maxdeg=2)
    assert hilbert_data(I) == hilbert_data(I, LEX)


@pytest.mark.parametrize(
    "gens, dim, degree",
    [
        (TWISTED_CUBIC, 2, 3),
        (["x", "y"], 2, 1),
        (["x^2", "y^3"], 2, 6),
        (["x*y", "x*z", "y*z"], 2, 3),
        (["x", "y", "z", "w"], 0, 1),
    ],
)
def test_dimension_and_degree(field, gens, dim, degree):
    hd = hilbert_data(Ideal.parse(_ring(field), gens))
    assert (hd.krull_dim, hd.degree) == (dim, degree)


@pytest.mark.parametrize("seed", range(6))
def test_koszul_and_schreyer_agree(seed):
    I = _random_ideal(seed, n=3, ngens=3, maxdeg=2)
    assert minimal_free_resolution(I, "koszul") == minimal_free_resolution(I, "schreyer")


@pytest.mark.parametrize("seed", range(8))
def test_betti_numbers_give_hilbert_numerator(seed):
    # Euler characteristic of the resolution equals the Hilbert numerator
    I = _random_ideal(seed, n=4, ngens=3, maxdeg=2)
    B = minimal_free_resolution(I, "schreyer")
    assert B.hilbert_numerator() == list(hilbert_data(I).hilbert_numerator)
    assert B == minimal_free_resolution(I)


@pytest.mark.parametrize("degrees", [(2,), (2, 2), (2, 3), (1, 2, 3), (3, 3, 2)])
def test_complete_intersection_regularity(degrees):
    rng = random.Random(sum(degrees))
    R = _ring(GF, 4)
    I = Ideal(R, [oracles.random_homogeneous(R, d, rng, 0.9) for d in degrees])
    prof = homological_profile(I)
    c = len(degrees)
    assert prof.reg_ideal == sum(degrees) - c + 1
    assert prof.is_ACM and prof.is_Gorenstein and prof.height == c
    assert prof.betti.totals() == [1] + [len(s) for s in _subsets_by_size(c)]


def _subsets_by_size(c):
    from itertools import combinations

    return [list(combinations(range(c), k)) for k in range(1, c + 1)]


def test_twisted_cubic_profile(field):
    prof = homological_profile(Ideal.parse(_ring(field), TWISTED_CUBIC))
    assert prof.betti.as_dict() == {(0, 0): 1, (1, 2): 3, (2, 3): 2}
    assert (prof.reg_ideal, prof.reg_quotient, prof.depth, prof.pd) == (2, 1, 2, 2)
    assert prof.is_ACM and not prof.is_Gorenstein


def test_skew_lines_not_acm(field):
    R = _ring(field)
    I = ideal_intersection(*[Ideal.parse(R, g) for g in SKEW_LINES])
    prof = homological_profile(I)
    assert prof.betti.totals() == [1, 4, 4, 1]
    assert prof.depth == 1 and prof.krull_dim == 2 and not prof.is_ACM
    assert prof.reg_ideal == 2
    cert = cm_certificate(I)
    assert not cert.is_CM and cert.depth == 1


def test_regular_reduction_preserves_betti():
    I = Ideal.parse(_ring(GF), TWISTED_CUBIC)
    J, cuts = regular_linear_reduction(I, random.Random(0))
    assert cuts == 2 and J.ring.nvars == 2
    assert minimal_free_resolution(J, "schreyer").entries == minimal_free_resolution(I, "schreyer").entries


def test_cm_certificate_matches_profile():
    I = Ideal.parse(_ring(GF), TWISTED_CUBIC)
    cert = cm_certificate(I)
    prof = homological_profile(I)
    assert cert.is_CM and cert.depth == prof.depth and cert.reg == prof.reg_quotient


@pytest.mark.parametrize("e", [1, 2, 3])
def test_veronese_routes_agree(e):
    P = Ideal.parse(_ring(GF), TWISTED_CUBIC)
    param = veronese_data(P, e)
    _, K = veronese_presentation(P, e)
    explicit = cm_certificate(K)
    assert param.is_CM == explicit.is_CM
    assert param.reg == explicit.reg


def test_betti_table_format():
    B = BettiTable.from_dict({(0, 0): 1, (1, 2): 3, (2, 3): 2}, 4)
    assert B.rows() == [[1, 0, 0], [0, 3, 2]]
    assert B.format().splitlines()[1].split() == ["total", "1", "3", "2"]
    assert B.as_json()[1] == {"i": 1, "j": 2, "b": 3}
    assert (B.pd, B.reg, B.twists(2)) == (2, 1, [3, 3])


def test_resolution_rejects_bad_input(xyz):
    with pytest.raises(ValueError):
        minimal_free_resolution(Ideal.parse(xyz, ["x^2 + y"]))
    with pytest.raises(ValueError):
        minimal_free_resolution(Ideal.parse(xyz, ["x^2"]), method="fastest")

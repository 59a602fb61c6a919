"""Ideals and the operations built on Gröbner bases: sums, products,
intersections, colons, saturation, kernels of ring maps, Veronese
presentations and Pfaffians of skew-symmetric matrices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

from .groebner import (
    GroebnerBasis,
    eliminate,
    groebner_basis,
    normal_form,
)
from .linalg import echelon
from .ring import GREVLEX, MonomialOrder, ParseError, Poly, PolyRing, format_poly

MAX_SATURATION_STEPS = 50


class Ideal:
    """An ideal of a polynomial ring given by generators (zero generators dropped)."""

    def __init__(self, ring: PolyRing, gens: Iterable[Poly] = ()):
        gens = list(gens)
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator lives in a different ring")
        self.ring = ring
        self.gens: tuple = tuple(g for g in gens if g)
        self._gb: dict = {}

    @classmethod
    def parse(cls, ring: PolyRing, lines: Iterable[str]) -> "Ideal":
        return cls(ring, [ring.parse(s) for s in lines])

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [ring.one()])

    def __repr__(self):
        return f"Ideal({', '.join(map(format_poly, self.gens)) or '0'})"

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def gb(self, order: MonomialOrder = GREVLEX, weights=None) -> GroebnerBasis:
        if order not in self._gb:
            self._gb[order] = groebner_basis(self.gens, order, ring=self.ring, weights=weights)
        return self._gb[order]

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return bool(self.gens) and self.gb().is_unit()

    def __contains__(self, f: Poly) -> bool:
        if self.is_zero():
            return not f
        return not normal_form(f, self.gb())

    def issubset(self, other: "Ideal") -> bool:
        return all(g in other for g in self.gens)

    def equals(self, other: "Ideal") -> bool:
        if self.ring != other.ring:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.gb() == other.gb()

    def reduce(self, f: Poly) -> Poly:
        return f if self.is_zero() else normal_form(f, self.gb())

    def minimal_generators(self) -> list[Poly]:
        """A minimal homogeneous generating set (graded Nakayama, degree by degree)."""
        if not self.is_homogeneous:
            raise ValueError("minimal generators need a homogeneous ideal")
        out: list = []
        current: GroebnerBasis | None = None
        for g in sorted(self.gb().elements, key=lambda f: f.degree):
            if current is not None and not normal_form(g, current):
                continue
            out.append(g)
            current = groebner_basis(out, ring=self.ring)
        return out

    def generator_degrees(self) -> list[int]:
        return sorted(g.degree for g in self.minimal_generators())

    def degree_part(self, d: int) -> list[Poly]:
        """Basis of the degree-``d`` component: ``u - NF(u)`` for standard-complement monomials ``u``."""
        if not self.is_homogeneous:
            raise ValueError("graded pieces need a homogeneous ideal")
        if self.is_zero():
            return []
        gb = self.gb()
        lms = gb.leading_monomials()
        out = []
        for u in monomials_of_degree(self.ring.nvars, d):
            if any(all(a <= b for a, b in zip(m, u)) for m in lms):
                m = self.ring.monomial(u)
                out.append(m - normal_form(m, gb))
        return out


def monomials_of_degree(n: int, d: int) -> list[tuple]:
    """All exponent vectors of total degree ``d`` in ``n`` variables, lex-descending."""
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - a):
            out.append((a,) + rest)
    return out


# ---------------------------------------------------------------------------
# sums, products, intersections, colons


def _same_ring(I: Ideal, J: Ideal) -> PolyRing:
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    return I.ring


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(_same_ring(I, J), I.gens + J.gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(_same_ring(I, J), [f * g for f in I.gens for g in J.gens])


def _fresh_name(ring: PolyRing, base: str = "t") -> str:
    name = base
    k = 0
    while name in ring.index:
        k += 1
        name = f"{base}{k}"
    return name


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` as ``(t I + (1-t) J) ∩ S``."""
    ring = _same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    t = _fresh_name(ring)
    big = ring.with_names(list(ring.names) + [t])
    n = ring.nvars
    perm = list(range(n))
    tv = big.var(n)
    gens = [tv * f.change_ring(big, perm) for f in I.gens]
    gens += [(big.one() - tv) * g.change_ring(big, perm) for g in J.gens]
    _, polys = eliminate(gens, [t], ring=big, weights=[1] * n + [0])
    return Ideal(ring, [ring.from_dict(dict(p.terms)) for p in polys])


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    if not ideals:
        raise ValueError("need at least one ideal")
    out = ideals[0]
    for J in ideals[1:]:
        out = ideal_intersection(out, J)
    return out


def ideal_colon(I: Ideal, J: Ideal) -> Ideal:
    """``I : J = ∩_g (I ∩ (g)) / g`` over the generators ``g`` of ``J``."""
    ring = _same_ring(I, J)
    if J.is_zero():
        return Ideal.unit(ring)
    parts = []
    for g in J.gens:
        inter = ideal_intersection(I, Ideal(ring, [g]))
        parts.append(Ideal(ring, [h.exact_div(g) for h in inter.gens]))
    return intersect_all(parts)


def ideal_saturate(I: Ideal, J: Ideal, max_steps: int = MAX_SATURATION_STEPS) -> Ideal:
    """``I : J^∞`` by iterated colons until the ideal stabilizes."""
    cur = I
    for _ in range(max_steps):
        nxt = ideal_colon(cur, J)
        if nxt.equals(cur):
            return cur
        cur = nxt
    raise RuntimeError(f"saturation did not stabilize within {max_steps} steps")


def ideal_combine(op: str, I: Ideal, J: Ideal, saturate: bool = False) -> Ideal:
    """Dispatch for the binary ideal operations ``sum``, ``product``, ``intersect``, ``colon``."""
    if op == "sum":
        return ideal_sum(I, J)
    if op == "product":
        return ideal_product(I, J)
    if op == "intersect":
        return ideal_intersection(I, J)
    if op == "colon":
        return ideal_saturate(I, J) if saturate else ideal_colon(I, J)
    raise ValueError(f"unknown ideal operation {op!r}")


# ---------------------------------------------------------------------------
# ring maps


@dataclass
class RingMap:
    """Graded map ``source -> target / quotient`` sending source variables to ``images``."""

    source: PolyRing
    target: PolyRing
    images: Sequence[Poly]
    quotient: Ideal | None = None

    def __post_init__(self):
        if len(self.images) != self.source.nvars:
            raise ValueError("need one image per source variable")
        if self.source.field != self.target.field:
            raise ValueError("source and target must share the coefficient field")
        for f in self.images:
            if f.ring != self.target:
                raise ValueError("image lives outside the target ring")

    def __call__(self, f: Poly) -> Poly:
        g = f.substitute(list(self.images))
        return self.quotient.reduce(g) if self.quotient is not None else g


def kernel_of_ring_map(phi: RingMap) -> Ideal:
    """Kernel of ``phi`` by eliminating the target variables from the graph ideal."""
    src, tgt = phi.source, phi.target
    tnames = list(tgt.names)
    taken = set(src.names)
    renamed = []
    for nm in tnames:
        new = nm
        while new in taken:
            new = "_" + new
        taken.add(new)
        renamed.append(new)
    big = src.with_names(renamed + list(src.names))
    m = tgt.nvars
    tperm = list(range(m))
    gens = []
    for i, f in enumerate(phi.images):
        gens.append(big.var(m + i) - f.change_ring(big, tperm))
    if phi.quotient is not None:
        gens += [g.change_ring(big, tperm) for g in phi.quotient.gens]
    weights = [1] * m + [max(f.degree, 1) for f in phi.images]
    _, polys = eliminate(gens, renamed, ring=big, weights=weights)
    return Ideal(src, [src.from_dict(dict(p.terms)) for p in polys])


def veronese_presentation(P: Ideal, e: int, var_prefix: str = "z") -> tuple[RingMap, Ideal]:
    """Presentation of the ``e``-th Veronese subring of ``S/P``.

    The new variables map to a basis of ``(S/P)_e`` given by standard monomials.
    Returns the map and its kernel.
    """
    if e < 1:
        raise ValueError("Veronese degree must be positive")
    if not P.is_homogeneous:
        raise ValueError("Veronese subrings need a homogeneous ideal")
    ring = P.ring
    if P.is_zero():
        std = monomials_of_degree(ring.nvars, e)
    else:
        lms = P.gb().leading_monomials()
        std = [
            u for u in monomials_of_degree(ring.nvars, e)
            if not any(all(a <= b for a, b in zip(m, u)) for m in lms)
        ]
    if not std:
        raise ValueError("the quotient vanishes in the requested degree")
    names = [f"{var_prefix}{i}" for i in range(len(std))]
    src = ring.with_names(names)
    phi = RingMap(src, ring, [ring.monomial(u) for u in std], None if P.is_zero() else P)
    return phi, kernel_of_ring_map(phi)


# ---------------------------------------------------------------------------
# skew-symmetric matrices


@dataclass
class SkewPolyMatrix:
    """Skew-symmetric matrix stored by its strictly upper entries (0-based ``(i, j)``, ``i < j``)."""

    ring: PolyRing
    size: int
    upper: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), f in self.upper.items():
            if not (0 <= i < j < self.size):
                raise ValueError(f"entry ({i}, {j}) is not strictly upper triangular")
            if f.ring != self.ring:
                raise ValueError("entry lives in a different ring")
            if f:
                clean[(i, j)] = f
        self.upper = clean

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        if i == j:
            return self.ring.zero()
        if i < j:
            return self.upper.get((i, j), self.ring.zero())
        return -self.upper.get((j, i), self.ring.zero())

    def dense(self) -> list[list[Poly]]:
        return [[self[i, j] for j in range(self.size)] for i in range(self.size)]

    def entry_degree(self) -> int | None:
        """Common degree of the nonzero entries (None if they are not homogeneous of one degree)."""
        degs = {f.degree for f in self.upper.values()}
        if len(degs) != 1 or not all(f.is_homogeneous() for f in self.upper.values()):
            return None
        return degs.pop()


def pfaffian(M: SkewPolyMatrix, indices: Sequence[int] | None = None) -> Poly:
    """Pfaffian of the principal submatrix on ``indices`` by first-row expansion."""
    idx = tuple(range(M.size)) if indices is None else tuple(indices)
    if len(idx) % 2:
        return M.ring.zero()

    @lru_cache(maxsize=None)
    def pf(sub: tuple) -> Poly:
        if not sub:
            return M.ring.one()
        a = sub[0]
        total = M.ring.zero()
        for k in range(1, len(sub)):
            entry = M[a, sub[k]]
            if not entry:
                continue
            rest = sub[1:k] + sub[k + 1:]
            term = entry * pf(rest)
            total = total + term if k % 2 else total - term
        return total

    return pf(idx)


def submaximal_pfaffians(M: SkewPolyMatrix) -> list[Poly]:
    """Pfaffians of the matrices obtained by deleting row and column ``i``, for each ``i``."""
    if M.size % 2 == 0:
        raise ValueError("submaximal Pfaffians need an odd-size matrix")
    out = []
    for i in range(M.size):
        out.append(pfaffian(M, [j for j in range(M.size) if j != i]))
    return out


def pfaffian_ideal(M: SkewPolyMatrix) -> Ideal:
    return Ideal(M.ring, submaximal_pfaffians(M))


def parse_skew_matrix(ring: PolyRing, size: int, rows: Sequence[Sequence[str]]) -> SkewPolyMatrix:
    """Build from rows of strictly upper entries: row ``i`` lists entries ``(i, i+1), ..., (i, size-1)``."""
    if len(rows) != size - 1:
        raise ParseError(f"expected {size - 1} rows of upper entries, got {len(rows)}")
    upper = {}
    for i, row in enumerate(rows):
        if len(row) != size - 1 - i:
            raise ParseError(f"row {i + 1} should have {size - 1 - i} entries, got {len(row)}")
        for k, text in enumerate(row):
            upper[(i, i + 1 + k)] = ring.parse(text)
    return SkewPolyMatrix(ring, size, upper)


# ---------------------------------------------------------------------------
# linear helpers


def independent_subset(polys: Sequence[Poly], modulo: Ideal | None = None) -> list[int]:
    """Indices of a greedy maximal subset of ``polys`` linearly independent modulo ``modulo``."""
    if not polys:
        return []
    ring = polys[0].ring
    vecs = []
    cols: dict = {}
    for f in polys:
        g = modulo.reduce(f) if modulo is not None and not modulo.is_zero() else f
        v = {}
        for m, c in g.terms:
            v[cols.setdefault(m, len(cols))] = c
        vecs.append(v)
    keep = []
    basis: list = []
    for i, v in enumerate(vecs):
        if len(echelon(basis + [v], ring.field)) > len(basis):
            basis = echelon(basis + [v], ring.field)
            keep.append(i)
    return keep


def linear_forms_span(forms: Sequence[Poly]) -> int:
    """Dimension of the span of the given polynomials."""
    return len(independent_subset(forms))


def product_of(polys: Iterable[Poly], ring: PolyRing) -> Poly:
    out = ring.one()
    for f in polys:
        out = out * f
    return out


def combinations(n: int, k: int):
    return itertools.combinations(range(n), k)

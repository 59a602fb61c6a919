"""Hilbert data, Betti tables, regularity, depth and the ACM / Gorenstein predicates."""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .groebner import GroebnerBasis, SchreyerFrame, normal_form
from .ideals import Ideal, monomials_of_degree
from .linalg import rank
from .ring import GREVLEX, MonomialOrder

log = logging.getLogger(__name__)


def initial_ideal(I: Ideal, order: MonomialOrder = GREVLEX) -> Ideal:
    """Ideal of leading monomials of the reduced Gröbner basis."""
    if I.is_zero():
        return Ideal(I.ring)
    gb = I.gb(order)
    return Ideal(I.ring, [I.ring.monomial(m) for m in gb.leading_monomials()])


# ---------------------------------------------------------------------------
# Hilbert series of monomial quotients


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimalize(gens: list) -> list:
    gens = sorted(set(gens), key=sum)
    out: list = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def _pmul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a: list, b: list, shift: int = 0) -> list:
    out = list(a) + [0] * max(0, len(b) + shift - len(a))
    for i, y in enumerate(b):
        out[i + shift] += y
    return out


def _trim(a: list) -> list:
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


def monomial_numerator(gens: Sequence[tuple]) -> list[int]:
    """Numerator ``N(t)`` with ``HS(S/I) = N(t)/(1-t)^n`` for a monomial ideal.

    Pivot recursion ``N(I) = N(I + x^a) + t^|a| N(I : x^a)``; pairwise coprime
    generators give the product of ``(1 - t^deg)``.
    """
    gens = _minimalize([tuple(g) for g in gens])
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    n = len(gens[0])
    counts = [0] * n
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    if max(counts) <= 1:
        out = [1]
        for g in gens:
            f = [0] * (sum(g) + 1)
            f[0], f[-1] = 1, -1
            out = _pmul(out, f)
        return _trim(out)
    v = max(range(n), key=lambda i: counts[i])
    # exponents from mixed generators keep the pivot outside the ideal
    exps = sorted(g[v] for g in gens if g[v] and sum(g) > g[v])
    e = exps[len(exps) // 2]
    pivot = tuple(e if i == v else 0 for i in range(n))
    plus = monomial_numerator(gens + [pivot])
    colon = monomial_numerator([tuple(max(0, a - b) for a, b in zip(g, pivot)) for g in gens])
    return _trim(_padd(plus, colon, e))


@dataclass(frozen=True)
class HilbertData:
    """Hilbert series data of ``S/I``; ``h_vector`` is the reduced numerator."""

    nvars: int
    hilbert_numerator: tuple
    krull_dim: int
    degree: int
    h_vector: tuple

    @classmethod
    def from_numerator(cls, numerator: Sequence[int], nvars: int) -> "HilbertData":
        num = _trim(list(numerator))
        if not any(num):
            return cls(nvars, (0,), -1, 0, (0,))
        h = list(num)
        dim = nvars
        while sum(h) == 0:
            # divide by (1 - t)
            q = []
            acc = 0
            for c in h[:-1]:
                acc += c
                q.append(acc)
            h = _trim(q)
            dim -= 1
        return cls(nvars, tuple(num), dim, sum(h), tuple(h))

    def hf(self, d: int) -> int:
        """Hilbert function value ``dim_K (S/I)_d``."""
        if d < 0 or self.krull_dim < 0:
            return 0
        if self.krull_dim == 0:
            return self.h_vector[d] if d < len(self.h_vector) else 0
        k = self.krull_dim
        return sum(c * comb(d - i + k - 1, k - 1) for i, c in enumerate(self.h_vector) if i <= d)

    def hilbert_polynomial_agrees_from(self) -> int:
        """First degree from which the Hilbert function is polynomial."""
        return max(0, len(self.h_vector) - self.krull_dim)

    def as_dict(self) -> dict:
        return {
            "krull_dim": self.krull_dim,
            "degree": self.degree,
            "hilbert_numerator": list(self.hilbert_numerator),
            "h_vector": list(self.h_vector),
        }


def hilbert_data(I: Ideal, order: MonomialOrder = GREVLEX) -> HilbertData:
    if not I.is_homogeneous:
        raise ValueError("Hilbert data needs a homogeneous ideal")
    n = I.ring.nvars
    if I.is_zero():
        return HilbertData.from_numerator([1], n)
    return HilbertData.from_numerator(monomial_numerator(I.gb(order).leading_monomials()), n)


def count_standard_monomials(I: Ideal, d: int, order: MonomialOrder = GREVLEX) -> int:
    """Direct count of degree-``d`` monomials outside the initial ideal."""
    lms = [] if I.is_zero() else I.gb(order).leading_monomials()
    return sum(1 for u in monomials_of_degree(I.ring.nvars, d) if not any(_divides(m, u) for m in lms))


# ---------------------------------------------------------------------------
# Betti tables


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers ``β_{i,j}`` of ``S/I`` over a ring with ``nvars`` variables."""

    entries: tuple  # sorted ((i, j), b) with b > 0
    nvars: int

    @classmethod
    def from_dict(cls, d: dict, nvars: int) -> "BettiTable":
        return cls(tuple(sorted((k, v) for k, v in d.items() if v)), nvars)

    def as_dict(self) -> dict:
        return dict(self.entries)

    def __getitem__(self, ij) -> int:
        return self.as_dict().get(tuple(ij), 0)

    @property
    def pd(self) -> int:
        return max(i for (i, _), _ in self.entries)

    @property
    def reg(self) -> int:
        """Regularity of the quotient, ``max(j - i)``."""
        return max(j - i for (i, j), _ in self.entries)

    def total(self, i: int) -> int:
        return sum(b for (k, _), b in self.entries if k == i)

    def totals(self) -> list[int]:
        return [self.total(i) for i in range(self.pd + 1)]

    def twists(self, i: int) -> list[int]:
        return sorted(j for (k, j), b in self.entries for _ in range(b) if k == i)

    def hilbert_numerator(self) -> list[int]:
        """``Σ (-1)^i β_{i,j} t^j``, which must equal the Hilbert-series numerator."""
        top = max(j for (_, j), _ in self.entries)
        out = [0] * (top + 1)
        for (i, j), b in self.entries:
            out[j] += (-1) ** i * b
        return _trim(out)

    def rows(self) -> list[list[int]]:
        """Classical display: row ``r`` holds ``β_{i, i+r}``."""
        return [[self[i, i + r] for i in range(self.pd + 1)] for r in range(self.reg + 1)]

    def format(self) -> str:
        rows = self.rows()
        width = max(len(str(b)) for row in rows for b in row) + 1
        head = "     " + "".join(f"{i:>{width}}" for i in range(self.pd + 1))
        lines = [head, "total" + "".join(f"{t:>{width}}" for t in self.totals())]
        for r, row in enumerate(rows):
            lines.append(f"{r:>3}: " + "".join(f"{(b if b else '.'):>{width}}" for b in row))
        return "\n".join(lines)

    def as_json(self) -> list:
        return [{"i": i, "j": j, "b": b} for (i, j), b in self.entries]


def _schreyer_betti(gb: GroebnerBasis) -> dict:
    """Betti numbers from a (non-minimal) Schreyer frame via ranks of its constant parts."""
    frame = SchreyerFrame(gb).run()
    field = gb.ring.field
    levels = frame.levels
    degs = frame.degrees
    f: dict = {(0, 0): 1}
    for i, ds in enumerate(degs, start=1):
        for d in ds:
            f[(i, d)] = f.get((i, d), 0) + 1
    r: dict = {}
    for lev in range(2, len(levels) + 1):
        elems = levels[lev - 1]
        units = frame.unit_keys(lev - 1)
        prev_deg = degs[lev - 2]
        by_deg: dict = {}
        for a, terms in enumerate(elems):
            row = {units[k]: c for k, c in terms if k in units}
            if row:
                by_deg.setdefault(degs[lev - 1][a], []).append(row)
        for j, rows in by_deg.items():
            cols = sorted({c for row in rows for c in row})
            assert all(prev_deg[c] == j for c in cols)
            pos = {c: k for k, c in enumerate(cols)}
            r[(lev, j)] = rank([{pos[c]: v for c, v in row.items()} for row in rows], field, len(cols))
    betti = {}
    for (i, j), fij in f.items():
        b = fij - r.get((i, j), 0) - r.get((i + 1, j), 0)
        if b < 0:
            raise AssertionError("negative Betti number from frame ranks")
        if b:
            betti[(i, j)] = b
    return betti


def _standard_basis(gb: GroebnerBasis) -> list[list[tuple]]:
    """Standard monomials of an Artinian quotient grouped by degree."""
    n = gb.ring.nvars
    lms = gb.leading_monomials()
    out = []
    d = 0
    while True:
        layer = [u for u in monomials_of_degree(n, d) if not any(_divides(m, u) for m in lms)]
        if not layer:
            return out
        out.append(layer)
        d += 1
        if d > 10_000:
            raise ValueError("quotient is not Artinian")


def _koszul_betti(gb: GroebnerBasis) -> dict:
    """Betti numbers of an Artinian ``S/I`` as Koszul homology ``H(K(x) ⊗ S/I)``."""
    ring = gb.ring
    field = ring.field
    n = ring.nvars
    B = _standard_basis(gb)
    top = len(B) - 1
    index = [{u: k for k, u in enumerate(layer)} for layer in B]
    # multiplication tables: mult[v][q][k] = sparse vector in B_{q+1}
    mult = [[None] * (top + 1) for _ in range(n)]
    for v in range(n):
        for q in range(top + 1):
            rows = []
            for u in B[q]:
                w = tuple(e + (1 if i == v else 0) for i, e in enumerate(u))
                if q + 1 > top:
                    rows.append({})
                    continue
                k = index[q + 1].get(w)
                if k is not None:
                    rows.append({k: field.one})
                else:
                    nf = normal_form(ring.monomial(w), gb)
                    rows.append({index[q + 1][m]: c for m, c in nf.terms})
            mult[v][q] = rows
    subsets = [list(itertools.combinations(range(n), i)) for i in range(n + 1)]
    sub_index = [{F: k for k, F in enumerate(fs)} for fs in subsets]
    p = field.characteristic

    def d_rank(i: int, q: int) -> int:
        # ∂: ∧^i ⊗ B_q -> ∧^{i-1} ⊗ B_{q+1}
        if i <= 0 or i > n or q < 0 or q + 1 > top:
            return 0
        width = len(B[q + 1])
        rows = []
        for F in subsets[i]:
            for k in range(len(B[q])):
                row: dict = {}
                for t, v in enumerate(F):
                    G = F[:t] + F[t + 1:]
                    base = sub_index[i - 1][G] * width
                    for col, c in mult[v][q][k].items():
                        val = c if t % 2 == 0 else -c
                        key = base + col
                        nv = row.get(key, 0) + val
                        if p:
                            nv %= p
                        if nv:
                            row[key] = nv
                        else:
                            row.pop(key, None)
                rows.append(row)
        return rank(rows, field, len(subsets[i - 1]) * width)

    ranks = {}
    betti = {}
    for i in range(n + 1):
        for q in range(top + 1):
            dim = comb(n, i) * len(B[q])
            if (i, q) not in ranks:
                ranks[(i, q)] = d_rank(i, q)
            if (i + 1, q - 1) not in ranks:
                ranks[(i + 1, q - 1)] = d_rank(i + 1, q - 1)
            b = dim - ranks[(i, q)] - ranks[(i + 1, q - 1)]
            if b:
                betti[(i, i + q)] = b
    return betti


def regular_linear_reduction(I: Ideal, rng: random.Random, tries: int = 2) -> tuple[Ideal, int]:
    """Cut by generic linear forms while they stay regular on ``S/I``.

    Each step substitutes the last variable by a random combination of the
    others and keeps the result only if the Hilbert numerator is unchanged,
    which holds exactly when the form is a nonzerodivisor.  Graded Betti
    numbers are preserved.  Returns the reduced ideal and the number of cuts.
    """
    cur = I
    cuts = 0
    hd = hilbert_data(cur)
    while cur.ring.nvars > 1 and hd.krull_dim > 0:
        ring = cur.ring
        n = ring.nvars
        sub = ring.with_names(ring.names[:-1])
        ok = False
        for _ in range(tries):
            coeffs = [ring.field.random_element(rng, bound=30) for _ in range(n - 1)]
            lin = sub.zero()
            for k, c in enumerate(coeffs):
                lin = lin + sub.var(k).scale(c)
            images = sub.gens() + [lin]
            cand = Ideal(sub, [g.substitute(images) for g in cur.gens])
            hd2 = hilbert_data(cand)
            if list(hd2.hilbert_numerator) == list(hd.hilbert_numerator):
                ok = True
                break
        if not ok:
            break
        cur, hd = cand, hd2
        cuts += 1
    return cur, cuts


@dataclass(frozen=True)
class CMCertificate:
    """Depth and regularity read off from generic regular linear cuts."""

    krull_dim: int
    depth: int
    is_CM: bool
    reg: int | None  # regularity of S/I when Cohen-Macaulay (top degree of the h-vector)


def cm_certificate(I: Ideal, seed: int = 0) -> CMCertificate:
    """Cohen-Macaulayness without a resolution.

    Generic linear forms are cut while they stay regular; their number is the
    depth (a random draw may undercount only with negligible probability).
    For a CM quotient the regularity is the top degree of the final Artinian
    quotient.
    """
    hd = hilbert_data(I)
    J, cuts = regular_linear_reduction(I, random.Random(seed))
    cm = cuts == hd.krull_dim
    reg = len(hilbert_data(J).h_vector) - 1 if cm else None
    return CMCertificate(hd.krull_dim, cuts, cm, reg)


def minimal_free_resolution(I: Ideal, method: str = "auto", seed: int = 0) -> BettiTable:
    """Graded Betti numbers of ``S/I``.

    ``method`` is ``schreyer`` (frame on ``I`` itself), ``koszul`` (requires an
    Artinian quotient after generic cuts) or ``auto`` (cut by regular linear
    forms, then Koszul homology if Artinian, Schreyer frame otherwise).
    """
    if not I.is_homogeneous:
        raise ValueError("resolutions need a homogeneous ideal")
    n = I.ring.nvars
    if I.is_zero():
        return BettiTable.from_dict({(0, 0): 1}, n)
    if I.is_unit():
        raise ValueError("the unit ideal has an empty quotient")
    if method == "schreyer":
        return BettiTable.from_dict(_schreyer_betti(I.gb()), n)
    if method not in ("auto", "koszul"):
        raise ValueError(f"unknown resolution method {method!r}")
    J, cuts = regular_linear_reduction(I, random.Random(seed))
    log.debug("resolution: %d regular cuts, %d variables left", cuts, J.ring.nvars)
    if hilbert_data(J).krull_dim == 0:
        return BettiTable.from_dict(_koszul_betti(J.gb()), n)
    if method == "koszul":
        raise ValueError("quotient is not Cohen-Macaulay; Koszul route needs an Artinian reduction")
    return BettiTable.from_dict(_schreyer_betti(J.gb()), n)


@dataclass(frozen=True)
class HomologicalProfile:
    reg_ideal: int
    reg_quotient: int
    pd: int
    depth: int
    krull_dim: int
    degree: int
    is_ACM: bool
    is_Gorenstein: bool
    nvars: int
    betti: BettiTable

    @property
    def height(self) -> int:
        return self.nvars - self.krull_dim

    def as_json(self) -> dict:
        return {
            "dim": self.krull_dim,
            "degree": self.degree,
            "pd": self.pd,
            "depth": self.depth,
            "reg_ideal": self.reg_ideal,
            "reg_quotient": self.reg_quotient,
            "acm": self.is_ACM,
            "gorenstein": self.is_Gorenstein,
            "betti": self.betti.as_json(),
            "height": self.height,
            "nvars": self.nvars,
        }


def homological_profile(I: Ideal, method: str = "auto", seed: int = 0) -> HomologicalProfile:
    """Regularity, depth, projective dimension and CM/Gorenstein predicates of ``S/I``."""
    if I.is_unit():
        raise ValueError("the unit ideal has no homological profile")
    hd = hilbert_data(I)
    bt = minimal_free_resolution(I, method=method, seed=seed)
    n = I.ring.nvars
    pd = bt.pd
    depth = n - pd
    acm = depth == hd.krull_dim
    gor = acm and bt.total(pd) == 1
    return HomologicalProfile(
        reg_ideal=bt.reg + 1,
        reg_quotient=bt.reg,
        pd=pd,
        depth=depth,
        krull_dim=hd.krull_dim,
        degree=hd.degree,
        is_ACM=acm,
        is_Gorenstein=gor,
        nvars=n,
        betti=bt,
    )


# ---------------------------------------------------------------------------
# Veronese subrings


@dataclass(frozen=True)
class VeroneseData:
    """Depth and regularity data of the Veronese subring ``(S/P)^(e)``."""

    e: int
    is_CM: bool
    reg: int | None  # regularity of the Veronese ring (as a quotient), when CM
    hf_reduction: tuple  # Hilbert function of S/(P + h1 + h2) in degrees 0, e, 2e, ...

    @property
    def proj_reg(self) -> int | None:
        return None if self.reg is None else self.reg + 1


def veronese_data(P: Ideal, e: int, seed: int = 0, tries: int = 3) -> VeroneseData:
    """Cohen-Macaulayness and regularity of ``(S/P)^(e)`` for a two-dimensional ``S/P``.

    With ``h1, h2`` generic forms of degree ``e``, their images form a system of
    parameters of the Veronese ring ``V``; ``V/(h1,h2)V`` is the Veronese of
    ``S/(P + h1 + h2)`` and ``V`` is CM exactly when its length equals
    ``e · deg(S/P)`` (the multiplicity of ``V`` with respect to the parameters).
    The regularity of a CM ``V`` is then the top degree of that Artinian quotient.
    """
    hd = hilbert_data(P)
    if hd.krull_dim != 2:
        raise ValueError("Veronese certification expects a two-dimensional quotient (a projective curve)")
    ring = P.ring
    rng = random.Random(seed)
    mons = monomials_of_degree(ring.nvars, e)
    target = e * hd.degree
    best = None
    for _ in range(tries):
        hs = []
        for _ in range(2):
            hs.append(ring.from_dict({m: ring.field.random_element(rng, bound=30) for m in mons}))
        Q = Ideal(ring, list(P.gens) + hs)
        hq = hilbert_data(Q)
        if hq.krull_dim != 0:
            continue
        vals = []
        k = 0
        while k * e < len(hq.h_vector):
            vals.append(hq.hf(k * e))
            k += 1
        while vals and vals[-1] == 0:
            vals.pop()
        length = sum(vals)
        if best is None or length < sum(best):
            best = vals
        if length == target:
            break
    if best is None:
        raise RuntimeError("could not find a system of parameters of the Veronese ring")
    cm = sum(best) == target
    reg = len(best) - 1 if cm else None
    return VeroneseData(e, cm, reg, tuple(best))

"""Buchberger engine, normal forms, Schreyer syzygies and elimination.

Internally a monomial is one Python integer: the values of the order's weight rows
packed above the raw exponent fields.  Integer comparison is the monomial order,
integer addition is monomial multiplication, and each exponent field carries a guard
bit so that divisibility is a single subtraction and mask.
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from .ring import GREVLEX, MonomialOrder, Poly, PolyRing

log = logging.getLogger(__name__)

__all__ = [
    "ResourceCaps",
    "ResourceLimitError",
    "resource_caps",
    "current_caps",
    "GroebnerBasis",
    "FreeModuleElement",
    "groebner_basis",
    "normal_form",
    "syzygy_basis",
    "eliminate",
    "SchreyerFrame",
]

_WBITS = 16
_MAX_EXP = (1 << (_WBITS - 1)) - 1


class ResourceLimitError(RuntimeError):
    """A configured resource cap was exceeded; ``diagnostics`` holds partial counts."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


@dataclass(frozen=True)
class ResourceCaps:
    max_pairs: int = 2_000_000
    max_degree: int = 60

    def __post_init__(self):
        if not 1 <= self.max_degree <= _MAX_EXP:
            raise ValueError(f"max_degree must lie in 1..{_MAX_EXP}")


_CAPS: contextvars.ContextVar = contextvars.ContextVar("dualcurves_caps", default=ResourceCaps())


def current_caps() -> ResourceCaps:
    return _CAPS.get()


@contextlib.contextmanager
def resource_caps(caps: ResourceCaps | None = None, **kw):
    """Temporarily replace the active caps (``max_pairs``, ``max_degree``)."""
    if caps is None:
        base = _CAPS.get()
        caps = ResourceCaps(kw.get("max_pairs", base.max_pairs), kw.get("max_degree", base.max_degree))
    token = _CAPS.set(caps)
    try:
        yield caps
    finally:
        _CAPS.reset(token)


# ---------------------------------------------------------------------------
# packed monomials


class _Codec:
    def __init__(self, n: int, order: MonomialOrder):
        order.check(n)
        w = _WBITS
        rows = order.weight_rows(n)
        self.n = n
        self.ebits = n * w
        self.shifts = [w * (n - 1 - i) for i in range(n)]
        nr = len(rows)
        ks = []
        for i in range(n):
            k = 1 << self.shifts[i]
            for r, row in enumerate(rows):
                if row[i]:
                    k += row[i] << (self.ebits + w * (nr - 1 - r))
            ks.append(k)
        self.K = ks
        self.guard = sum(1 << (s + w - 1) for s in self.shifts)
        self.fmask = (1 << w) - 1

    def encode(self, exps) -> int:
        k = 0
        for e, kk in zip(exps, self.K):
            if e:
                if e > _MAX_EXP:
                    raise ResourceLimitError(f"exponent {e} exceeds the packed limit {_MAX_EXP}")
                k += e * kk
        return k

    def decode(self, key: int) -> tuple:
        fm = self.fmask
        return tuple((key >> s) & fm for s in self.shifts)

    def degree(self, key: int) -> int:
        return sum(self.decode(key))

    def lcm(self, a: int, b: int) -> int:
        return self.encode([max(x, y) for x, y in zip(self.decode(a), self.decode(b))])

    def divides(self, a: int, b: int) -> bool:
        return not ((b - a) & self.guard)


def _to_terms(f: Poly, codec: _Codec) -> list:
    terms = [(codec.encode(m), c) for m, c in f.terms]
    terms.sort(reverse=True, key=lambda t: t[0])
    return terms


def _from_terms(ring: PolyRing, terms, codec: _Codec) -> Poly:
    return ring.from_dict({codec.decode(k): c for k, c in terms})


class _Reducers:
    """Leading monomials and tails of the current reducer set."""

    __slots__ = ("lms", "tails", "guard", "_hit")

    def __init__(self, guard: int):
        self.lms: list[int] = []
        self.tails: list[list] = []
        self.guard = guard
        self._hit: dict = {}

    def add(self, terms: list) -> int:
        self.lms.append(terms[0][0])
        self.tails.append(terms[1:])
        return len(self.lms) - 1

    def find(self, k: int) -> int:
        hit = self._hit.get(k)
        if hit is not None:
            return hit
        g = self.guard
        for i, lm in enumerate(self.lms):
            if lm <= k and not ((k - lm) & g):
                self._hit[k] = i
                return i
        return -1


class _FrameReducers:
    __slots__ = ("lms", "tails", "find")


def _reduce(terms: list, red, p: int, full: bool = True, quot: list | None = None) -> list:
    """Divide monic-reducer style; returns remainder terms (descending).

    With ``full=False`` only the leading term is reduced away.  If ``quot`` is a
    list, ``(reducer index, multiplier key, coefficient)`` triples are appended.
    """
    if not terms:
        return []
    acc = dict(terms)
    heap = [-k for k, _ in terms]
    heapq.heapify(heap)
    out = []
    find = red.find
    lms, tails = red.lms, red.tails
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        k = -pop(heap)
        c = acc.pop(k, None)
        if c is None:
            continue
        i = find(k)
        if i < 0:
            out.append((k, c))
            if not full:
                rest = sorted(((kk, cc) for kk, cc in acc.items()), key=lambda t: t[0], reverse=True)
                return out + rest
            continue
        shift = k - lms[i]
        if quot is not None:
            quot.append((i, shift, c))
        if p:
            for gk, gc in tails[i]:
                nk = gk + shift
                old = acc.get(nk)
                if old is None:
                    acc[nk] = (-c * gc) % p
                    push(heap, -nk)
                else:
                    v = (old - c * gc) % p
                    if v:
                        acc[nk] = v
                    else:
                        del acc[nk]
        else:
            for gk, gc in tails[i]:
                nk = gk + shift
                old = acc.get(nk)
                if old is None:
                    acc[nk] = -c * gc
                    push(heap, -nk)
                else:
                    v = old - c * gc
                    if v:
                        acc[nk] = v
                    else:
                        del acc[nk]
    return out


def _monic(terms: list, p: int) -> list:
    c0 = terms[0][1]
    if c0 == 1:
        return terms
    if p:
        inv = pow(c0, -1, p)
        return [(k, c * inv % p) for k, c in terms]
    return [(k, c / c0) for k, c in terms]


def _shift_sub(a: list, sa: int, b: list, sb: int, p: int) -> list:
    """(x^sa * a) - (x^sb * b) for monic term lists, result descending."""
    acc: dict = {}
    for k, c in a:
        acc[k + sa] = c
    for k, c in b:
        nk = k + sb
        v = acc.get(nk, 0) - c
        if p:
            v %= p
        if v:
            acc[nk] = v
        else:
            acc.pop(nk, None)
    return sorted(acc.items(), key=lambda t: t[0], reverse=True)


# ---------------------------------------------------------------------------
# Buchberger


@dataclass
class _Diag:
    pairs_reduced: int = 0
    zero_reductions: int = 0
    max_sugar: int = 0
    basis_size: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _buchberger(inputs: list, codec: _Codec, p: int, weights: Sequence[int], caps: ResourceCaps, diag: _Diag) -> list:
    guard = codec.guard

    def wdeg(key):
        return sum(w * e for w, e in zip(weights, codec.decode(key)))

    red = _Reducers(guard)
    G: list = []  # term lists (monic)
    sugar: list = []
    active: list = []
    pairs: dict = {}  # (i, j) -> lcm key
    heap: list = []

    for idx, t in enumerate(inputs):
        if t:
            heapq.heappush(heap, (max(wdeg(k) for k, _ in t), -1, idx))

    def update(h: int):
        H = G[h][0][0]
        C = [(i, codec.lcm(G[i][0][0], H)) for i in range(h) if active[i]]
        D = []
        for idx, (i, L) in enumerate(C):
            coprime = L == G[i][0][0] + H
            if not coprime:
                if any(not ((L - L2) & guard) for _, L2 in C[idx + 1:]):
                    continue
                if any(not ((L - L2) & guard) for _, L2, _ in D):
                    continue
            D.append((i, L, coprime))
        for key in list(pairs):
            L = pairs[key]
            if not ((L - H) & guard):
                i, j = key
                if L != codec.lcm(G[i][0][0], H) and L != codec.lcm(G[j][0][0], H):
                    del pairs[key]
        for i, L, coprime in D:
            if coprime:
                continue
            s = max(sugar[i] + wdeg(L - G[i][0][0]), sugar[h] + wdeg(L - H))
            pairs[(i, h)] = L
            heapq.heappush(heap, (s, i, h))
        for i in range(h):
            if active[i] and not ((G[i][0][0] - H) & guard):
                active[i] = False

    while heap:
        s, i, j = heapq.heappop(heap)
        if i < 0:
            f = inputs[j]
        else:
            L = pairs.pop((i, j), None)
            if L is None:
                continue
            f = _shift_sub(G[i], L - G[i][0][0], G[j], L - G[j][0][0], p)
            diag.pairs_reduced += 1
            if diag.pairs_reduced > caps.max_pairs:
                raise ResourceLimitError(
                    f"S-pair cap {caps.max_pairs} exceeded", dict(diag.as_dict(), basis_size=len(G))
                )
        if s > caps.max_degree:
            raise ResourceLimitError(
                f"degree cap {caps.max_degree} exceeded (sugar {s})", dict(diag.as_dict(), basis_size=len(G))
            )
        diag.max_sugar = max(diag.max_sugar, s)
        r = _reduce(f, red, p, full=True)
        if not r:
            diag.zero_reductions += 1
            continue
        r = _monic(r, p)
        G.append(r)
        sugar.append(s)
        active.append(True)
        red.add(r)
        update(len(G) - 1)
    diag.basis_size = len(G)
    return G


def _reduced_basis(G: list, codec: _Codec, p: int) -> list:
    guard = codec.guard
    lms = [g[0][0] for g in G]
    keep = []
    for i, lm in enumerate(lms):
        redundant = False
        for j, lm2 in enumerate(lms):
            if j != i and not ((lm - lm2) & guard) and (lm2 != lm or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    minimal = [G[i] for i in keep]
    minimal.sort(key=lambda t: t[0][0])
    out = []
    for idx, g in enumerate(minimal):
        red = _Reducers(guard)
        for jdx, h in enumerate(minimal):
            if jdx != idx:
                red.add(h)
        tail = _reduce(g[1:], red, p, full=True)
        out.append([g[0]] + tail)
    out.sort(key=lambda t: t[0][0], reverse=True)
    return out


# ---------------------------------------------------------------------------
# public API


class GroebnerBasis:
    """Reduced Gröbner basis of an ideal of ``ring`` with respect to ``order``."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, terms: list, reduced: bool = True, diagnostics=None):
        self.ring = ring
        self.order = order
        self.codec = _Codec(ring.nvars, order)
        self._terms = terms
        self.reduced = reduced
        self.diagnostics = diagnostics or {}
        self._elements = None
        self._red = None

    @property
    def elements(self) -> tuple:
        if self._elements is None:
            self._elements = tuple(_from_terms(self.ring, t, self.codec) for t in self._terms)
        return self._elements

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.elements)

    def leading_monomials(self) -> list:
        return [self.codec.decode(t[0][0]) for t in self._terms]

    def is_unit(self) -> bool:
        return any(t[0][0] == 0 for t in self._terms)

    def reducers(self) -> _Reducers:
        if self._red is None:
            self._red = _Reducers(self.codec.guard)
            for t in self._terms:
                self._red.add(t)
        return self._red

    def reduce_terms(self, terms: list) -> list:
        return _reduce(terms, self.reducers(), self.ring.field.characteristic, full=True)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and self.order == other.order
            and self._terms == other._terms
        )

    def __repr__(self):
        return f"GroebnerBasis({len(self)} elements, {self.order})"


def _check_ring(polys: Sequence[Poly]) -> PolyRing:
    if not polys:
        raise ValueError("need at least one polynomial to determine the ring")
    ring = polys[0].ring
    for f in polys:
        if f.ring != ring:
            raise ValueError("generators live in different rings")
    return ring


def groebner_basis(
    gens: Sequence[Poly],
    order: MonomialOrder = GREVLEX,
    ring: PolyRing | None = None,
    weights: Sequence[int] | None = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    ``weights`` only steer pair selection (sugar degrees); the result does not
    depend on them.
    """
    gens = list(gens)
    if ring is None:
        ring = _check_ring(gens)
    elif any(f.ring != ring for f in gens):
        raise ValueError("generators live in different rings")
    codec = _Codec(ring.nvars, order)
    p = ring.field.characteristic
    inputs = [_to_terms(f, codec) for f in gens if f]
    caps = current_caps()
    diag = _Diag()
    w = list(weights) if weights is not None else [1] * ring.nvars
    G = _buchberger(inputs, codec, p, w, caps, diag)
    terms = _reduced_basis(G, codec, p)
    terms = [_monic(t, p) for t in terms]
    log.debug("groebner: %s", diag.as_dict())
    return GroebnerBasis(ring, order, terms, True, diag.as_dict())


def normal_form(f: Poly, basis: GroebnerBasis) -> Poly:
    """Remainder of ``f`` on division by ``basis``: no term is divisible by a leading monomial."""
    if f.ring != basis.ring:
        raise ValueError("polynomial and basis live in different rings")
    r = basis.reduce_terms(_to_terms(f, basis.codec))
    return _from_terms(basis.ring, r, basis.codec)


def eliminate(gens: Sequence[Poly], drop: Iterable[str], ring: PolyRing | None = None, weights=None):
    """Generators of ``(gens) ∩ K[remaining variables]``.

    Returns ``(subring, polys)`` with the remaining variables kept in their
    original relative order.
    """
    gens = list(gens)
    if ring is None:
        ring = _check_ring(gens)
    drop = list(drop)
    for nm in drop:
        if nm not in ring.index:
            raise ValueError(f"unknown variable {nm!r}")
    keep = [nm for nm in ring.names if nm not in drop]
    if not keep:
        raise ValueError("cannot eliminate every variable")
    drop = [nm for nm in ring.names if nm in drop]
    if not drop:
        return ring, list(gens)
    scratch = ring.with_names(drop + keep)
    perm = [scratch.index[nm] for nm in ring.names]
    moved = [f.change_ring(scratch, perm) for f in gens]
    w = None
    if weights is not None:
        w = [0] * len(perm)
        for i, j in enumerate(perm):
            w[j] = weights[i]
    gb = groebner_basis(moved, MonomialOrder.elimination(len(drop)), ring=scratch, weights=w)
    sub = ring.with_names(keep)
    k = len(drop)
    out = []
    for g in gb.elements:
        if all(m[i] == 0 for m, _ in g.terms for i in range(k)):
            out.append(sub.from_dict({m[k:]: c for m, c in g.terms}))
    return sub, out


# ---------------------------------------------------------------------------
# free modules and Schreyer syzygies


class FreeModuleElement:
    """Element of a graded free module ``⊕ S(-column_degrees[i])`` stored sparsely."""

    def __init__(self, ring: PolyRing, entries: dict, rank: int, column_degrees: Sequence[int] | None = None):
        self.ring = ring
        self.rank = rank
        self.entries = {i: f for i, f in entries.items() if f}
        if any(not 0 <= i < rank for i in self.entries):
            raise ValueError("position index out of range")
        self.column_degrees = tuple(column_degrees) if column_degrees is not None else (0,) * rank

    def __getitem__(self, i: int) -> Poly:
        return self.entries.get(i, self.ring.zero())

    def dense(self) -> list:
        return [self[i] for i in range(self.rank)]

    def degree(self) -> int | None:
        degs = {f.degree + self.column_degrees[i] for i, f in self.entries.items() if f.is_homogeneous()}
        return degs.pop() if len(degs) == 1 else None

    def apply(self, row: Sequence[Poly]) -> Poly:
        """Dot product with a row of polynomials (e.g. the basis it is a syzygy of)."""
        acc = self.ring.zero()
        for i, f in self.entries.items():
            acc = acc + f * row[i]
        return acc

    def __repr__(self):
        body = ", ".join(f"{i}: {f}" for i, f in sorted(self.entries.items()))
        return f"FreeModuleElement({{{body}}}, rank={self.rank})"


class SchreyerFrame:
    """Iterated Schreyer syzygies of a Gröbner basis.

    Level 1 holds the basis elements (vectors in ``F_0 = S``); level ``k+1`` holds
    syzygies of level ``k`` and is itself a Gröbner basis for the induced order.
    Elements are term lists keyed so that ``key_k(m e_a) = key_{k-1}(m LT(a)) * P + (P-1-a)``.
    """

    PBITS = 24

    def __init__(self, basis: GroebnerBasis):
        if basis.is_unit():
            raise ValueError("the unit ideal has no syzygy frame")
        self.basis = basis
        self.codec = basis.codec
        self.p = basis.ring.field.characteristic
        # Schreyer's length bound: same-position elements sorted lex-descending
        order = sorted(
            range(len(basis._terms)),
            key=lambda i: self.codec.decode(basis._terms[i][0][0]),
            reverse=True,
        )
        self.original_index = order
        self.levels: list[list] = [[basis._terms[i] for i in order]]
        self.degrees: list[list] = [[self.codec.degree(t[0][0]) for t in self.levels[0]]]
        self.pairs_done = 0

    @property
    def P(self) -> int:
        return 1 << self.PBITS

    def _under(self, key: int, level: int) -> int:
        """Underlying monomial (codec key) of a key in the term space of ``F_{level-1}``."""
        return key >> (self.PBITS * (level - 1))

    def _pos(self, key: int, level: int) -> int:
        return key & ((1 << (self.PBITS * (level - 1))) - 1)

    def unit_keys(self, level: int) -> dict:
        """Key of the basis vector ``e_a`` of ``F_level`` -> element index ``a``."""
        P = self.P
        return {t[0][0] * P + (P - 1 - a): a for a, t in enumerate(self.levels[level - 1])}

    def compute_next(self) -> bool:
        """Compute the next level; returns False when the last level is empty."""
        k = len(self.levels)
        elems = self.levels[-1]
        if not elems:
            return False
        codec, p, P, pb = self.codec, self.p, self.P, self.PBITS
        guard = codec.guard
        caps = current_caps()
        red = _FrameReducers()
        shift_bits = pb * (k - 1)
        posmask = (1 << shift_bits) - 1
        # reducers: same position and divisible underlying monomial
        lms = [t[0][0] for t in elems]
        bypos: dict = {}
        for a, lm in enumerate(lms):
            bypos.setdefault(lm & posmask, []).append(a)
        hit: dict = {}

        def find(key):
            h = hit.get(key)
            if h is not None:
                return h
            u = key >> shift_bits
            for a in bypos.get(key & posmask, ()):
                la = lms[a] >> shift_bits
                if la <= u and not ((u - la) & guard):
                    hit[key] = a
                    return a
            return -1

        red.find = find
        red.lms = lms
        red.tails = [t[1:] for t in elems]

        new = []
        for pos, members in bypos.items():
            for ai, a in enumerate(members):
                ua = lms[a] >> shift_bits
                cands = []
                for b in members[ai + 1:]:
                    ub = lms[b] >> shift_bits
                    L = codec.lcm(ua, ub)
                    cands.append((L - ua, L, b))
                chosen = []
                for idx, (q, L, b) in enumerate(cands):
                    dominated = False
                    for jdx, (q2, _, _) in enumerate(cands):
                        if jdx != idx and not ((q - q2) & guard) and (q2 != q or jdx < idx):
                            dominated = True
                            break
                    if not dominated:
                        chosen.append((L, b))
                for L, b in chosen:
                    self.pairs_done += 1
                    if self.pairs_done > caps.max_pairs:
                        raise ResourceLimitError(f"S-pair cap {caps.max_pairs} exceeded in syzygy frame")
                    sa = (L - ua) << shift_bits
                    sb = (L - (lms[b] >> shift_bits)) << shift_bits
                    v = _shift_sub(elems[a], sa, elems[b], sb, p)
                    quot: list = []
                    rem = _reduce(v, red, p, full=True, quot=quot)
                    if rem:
                        raise AssertionError("Schreyer S-vector did not reduce to zero")
                    lt = (L << shift_bits) | pos
                    acc = {lt * P + (P - 1 - a): 1}
                    kb = lt * P + (P - 1 - b)
                    acc[kb] = (p - 1) if p else -1
                    for c, shift, coef in quot:
                        key = (lms[c] + shift) * P + (P - 1 - c)
                        v0 = acc.get(key, 0) - coef
                        if p:
                            v0 %= p
                        if v0:
                            acc[key] = v0
                        else:
                            acc.pop(key, None)
                    terms = sorted(acc.items(), key=lambda t: t[0], reverse=True)
                    new.append(terms)
        # group by position, sort lex-descending within a position
        nb = pb * k
        pm = (1 << nb) - 1

        def sort_key(t):
            lt = t[0][0]
            return (lt & pm, tuple(-e for e in codec.decode(lt >> nb)))

        new.sort(key=sort_key)
        self.levels.append(new)
        self.degrees.append([codec.degree(t[0][0] >> nb) for t in new])
        return bool(new)

    def run(self) -> "SchreyerFrame":
        while self.compute_next():
            pass
        return self

    def to_module_elements(self, level: int) -> list[FreeModuleElement]:
        """Elements of ``level`` (>= 2) as vectors over the previous level's basis,
        positions of level 1 expressed in the original basis order."""
        if level < 2:
            raise ValueError("module elements start at level 2")
        ring = self.basis.ring
        codec, P, pb = self.codec, self.P, self.PBITS
        prev = self.levels[level - 2]
        rank = len(prev)
        remap = self.original_index if level == 2 else list(range(rank))
        col_deg = [0] * rank
        for a in range(rank):
            col_deg[remap[a]] = self.degrees[level - 2][a]
        out = []
        for terms in self.levels[level - 1]:
            entries: dict = {}
            for key, c in terms:
                a = P - 1 - (key & (P - 1))
                mono = (key >> pb) >> (pb * (level - 2))
                base = prev[a][0][0] >> (pb * (level - 2))
                entries.setdefault(remap[a], {})[codec.decode(mono - base)] = c
            out.append(
                FreeModuleElement(ring, {i: ring.from_dict(d) for i, d in entries.items()}, rank, col_deg)
            )
        return out


def syzygy_basis(basis: GroebnerBasis) -> list[FreeModuleElement]:
    """Schreyer generators of the syzygy module of the basis elements."""
    frame = SchreyerFrame(basis)
    frame.compute_next()
    return frame.to_module_elements(2)

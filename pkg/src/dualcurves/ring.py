"""Exact coefficient fields, polynomial rings, monomial orders and sparse polynomials.

Polynomials are immutable. Terms are kept as ``(exponent tuple, coefficient)`` pairs
sorted strictly descending in graded reverse lexicographic order; zero coefficients
are never stored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

Monomial = tuple  # tuple[int, ...] of exponents, one per ring variable

__all__ = [
    "FieldSpec",
    "PolyRing",
    "Poly",
    "MonomialOrder",
    "ParseError",
    "mk_ring",
    "monomial_compare",
    "GREVLEX",
    "LEX",
]


class ParseError(ValueError):
    """Raised for malformed polynomial, ring or file input."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (characteristic 0) or a prime field GF(p), p an odd prime."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not (p >= 3 and _is_prime(p)):
            raise ValueError(f"characteristic must be 0 or an odd prime, got {p}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls(0)
        if t.upper().startswith("GF(") and t.endswith(")"):
            t = t[3:-1]
        try:
            return cls(int(t))
        except ValueError as exc:
            raise ParseError(f"bad field specification {text!r}") from exc

    @property
    def kind(self) -> str:
        return "Rationals" if self.characteristic == 0 else "PrimeField"

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    # element arithmetic -------------------------------------------------
    def __call__(self, value) -> Union[int, Fraction]:
        """Canonical field element for an int, Fraction or field element."""
        p = self.characteristic
        if p == 0:
            v = Fraction(value)
            return v
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ValueError(f"{value} is not an element of GF({p})")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / Fraction(a)
        return pow(a, -1, self.characteristic)

    def neg(self, a):
        return (-a) % self.characteristic if self.characteristic else -a

    def symmetric(self, a) -> Union[int, Fraction]:
        """Representative closest to zero (used for printing only)."""
        p = self.characteristic
        if p and a > p // 2:
            return a - p
        return a

    def parse_coeff(self, text: str):
        m = re.fullmatch(r"(\d+)(?:/(\d+))?", text)
        if not m:
            raise ParseError(f"coefficient {text!r} is not in {self}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ParseError("zero denominator")
        try:
            return self(Fraction(num, den))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def random_element(self, rng, nonzero: bool = False, bound: int = 50):
        """Deterministic draw from ``rng`` (a ``random.Random``)."""
        p = self.characteristic
        while True:
            if p:
                v = rng.randrange(p)
            else:
                v = Fraction(rng.randint(-bound, bound))
            if v or not nonzero:
                return v


@dataclass(frozen=True)
class MonomialOrder:
    """Monomial order descriptor.

    ``kind`` is one of ``grevlex``, ``lex``, ``elim`` (block order: the first ``k``
    variables form a grevlex block that dominates a grevlex block of the rest) or
    ``top`` (term-over-position on free modules, ``base`` compares the monomials).
    """

    kind: str = "grevlex"
    k: int = 0
    base: "MonomialOrder | None" = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim", "top"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.k < 1:
            raise ValueError("elimination block must contain at least one variable")

    @classmethod
    def grevlex(cls) -> "MonomialOrder":
        return cls("grevlex")

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def elimination(cls, k: int) -> "MonomialOrder":
        return cls("elim", k)

    @classmethod
    def module_top(cls, base: "MonomialOrder | None" = None) -> "MonomialOrder":
        return cls("top", 0, base or cls("grevlex"))

    def check(self, nvars: int) -> None:
        if self.kind == "elim" and not (1 <= self.k < nvars):
            raise ValueError(f"elimination block size {self.k} invalid for {nvars} variables")

    def weight_rows(self, n: int) -> list[list[int]]:
        """Nonnegative integer matrix whose rows, compared lexicographically and
        completed by plain lex on exponents, realize this order."""
        if self.kind == "top":
            return self.base.weight_rows(n)
        if self.kind == "lex":
            return []
        if self.kind == "grevlex":
            return _grevlex_rows(0, n, n)
        self.check(n)
        return _grevlex_rows(0, self.k, n) + _grevlex_rows(self.k, n, n)

    def key(self, exps: Sequence[int]):
        """Sort key: larger key means larger monomial."""
        rows = self.weight_rows(len(exps))
        return tuple(sum(r * e for r, e in zip(row, exps)) for row in rows) + tuple(exps)

    def __str__(self) -> str:
        if self.kind == "elim":
            return f"elim({self.k})"
        if self.kind == "top":
            return f"top({self.base})"
        return self.kind


def _grevlex_rows(lo: int, hi: int, n: int) -> list[list[int]]:
    # degree of the block, then partial sums x_lo..x_j for j = hi-2 down to lo:
    # the monomial with the larger partial sum has the smaller trailing exponents
    rows = [[1 if lo <= i < hi else 0 for i in range(n)]]
    for j in range(hi - 2, lo - 1, -1):
        rows.append([1 if lo <= i <= j else 0 for i in range(n)])
    return rows


GREVLEX = MonomialOrder.grevlex()
LEX = MonomialOrder.lex()


def monomial_compare(a: Sequence[int], b: Sequence[int], order: MonomialOrder = GREVLEX) -> int:
    """Return 1, 0 or -1 as ``a`` is greater than, equal to or smaller than ``b``."""
    if len(a) != len(b):
        raise ValueError("monomials of different lengths")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def _grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True, eq=False)
class PolyRing:
    """Standard graded polynomial ring over ``field`` in the named variables."""

    field: FieldSpec
    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
                raise ValueError(f"invalid variable name {nm!r}")

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and self.names == other.names

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"PolyRing({self.field}, {list(self.names)})"

    @property
    def nvars(self) -> int:
        return len(self.names)

    @cached_property
    def index(self) -> dict:
        return {nm: i for i, nm in enumerate(self.names)}

    def zero(self) -> "Poly":
        return Poly(self, ())

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, (((0,) * self.nvars, c),) if c else ())

    def var(self, name_or_index) -> "Poly":
        i = name_or_index if isinstance(name_or_index, int) else self.index[name_or_index]
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, ((tuple(e), self.field.one),))

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        return self.from_dict({tuple(exps): coeff})

    def from_dict(self, d: Mapping) -> "Poly":
        f = self.field
        items = []
        for m, c in d.items():
            c = f(c)
            if c:
                if len(m) != self.nvars:
                    raise ValueError("exponent vector has wrong length")
                items.append((tuple(m), c))
        items.sort(key=lambda t: _grevlex_key(t[0]), reverse=True)
        return Poly(self, tuple(items))

    def parse(self, text: str) -> "Poly":
        return parse_poly(self, text)

    def with_names(self, names: Sequence[str]) -> "PolyRing":
        return PolyRing(self.field, tuple(names))

    def header(self) -> str:
        fld = "Q" if self.field.characteristic == 0 else str(self.field.characteristic)
        return "ring " + fld + " " + " ".join(self.names)


def mk_ring(field: FieldSpec, names: Iterable[str]) -> PolyRing:
    """Create a polynomial ring; raises ``ValueError`` on duplicate names."""
    return PolyRing(field, tuple(names))


class Poly:
    """Immutable sparse polynomial in a :class:`PolyRing`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: tuple):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic properties ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def as_dict(self) -> dict:
        return dict(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m, _ in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        d = sum(self.terms[0][0])
        return all(sum(m) == d for m, _ in self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def lm(self, order: MonomialOrder = GREVLEX):
        if order == GREVLEX:
            return self.terms[0][0]
        return max(self.terms, key=lambda t: order.key(t[0]))[0]

    def lc(self, order: MonomialOrder = GREVLEX):
        if order == GREVLEX:
            return self.terms[0][1]
        return max(self.terms, key=lambda t: order.key(t[0]))[1]

    def variables(self) -> set:
        return {i for m, _ in self.terms for i, e in enumerate(m) if e}

    # equality -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials belong to different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def _combine(self, other: "Poly", sign: int) -> "Poly":
        p = self.ring.field.characteristic
        acc = dict(self.terms)
        for m, c in other.terms:
            v = acc.get(m, 0) + sign * c
            if p:
                v %= p
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return self.ring.from_dict(acc) if p == 0 else _from_canonical(self.ring, acc)

    def __add__(self, other):
        return self._combine(self._coerce(other), 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(self._coerce(other), -1)

    def __rsub__(self, other):
        return self._coerce(other)._combine(self, -1)

    def __neg__(self):
        f = self.ring.field
        return Poly(self.ring, tuple((m, f.neg(c)) for m, c in self.terms))

    def scale(self, c) -> "Poly":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        p = f.characteristic
        if p:
            return Poly(self.ring, tuple((m, v * c % p) for m, v in self.terms))
        return Poly(self.ring, tuple((m, v * c) for m, v in self.terms))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        p = self.ring.field.characteristic
        acc: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        if p:
            acc = {m: c % p for m, c in acc.items() if c % p}
            return _from_canonical(self.ring, acc)
        return self.ring.from_dict(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a natural number")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        c = self.ring.field(coeff)
        p = self.ring.field.characteristic
        terms = []
        for m, v in self.terms:
            nv = v * c % p if p else v * c
            if nv:
                terms.append((tuple(a + b for a, b in zip(m, exps)), nv))
        # multiplying by a monomial preserves the order
        return Poly(self.ring, tuple(terms))

    def monic(self, order: MonomialOrder = GREVLEX) -> "Poly":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc(order)))

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, tuple(t for t in self.terms if sum(t[0]) == d))

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Evaluate at ``images`` (one polynomial per variable, any common ring)."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = images[0].ring
        result = target.zero()
        cache: dict = {}
        for m, c in self.terms:
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    term = term * cache[key]
            result = result + term
        return result

    def change_ring(self, ring: PolyRing, mapping: Sequence[int]) -> "Poly":
        """Re-embed: variable ``i`` of this ring becomes variable ``mapping[i]``."""
        n = ring.nvars
        d = {}
        for m, c in self.terms:
            e = [0] * n
            for i, k in enumerate(m):
                if k:
                    e[mapping[i]] += k
            d[tuple(e)] = c
        return ring.from_dict(d)

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises ``ValueError`` if not exact."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        f = self.ring.field
        lm, lc_inv = other.terms[0][0], f.inv(other.terms[0][1])
        rem = self
        q = self.ring.zero()
        while rem:
            m, c = rem.terms[0]
            if any(a < b for a, b in zip(m, lm)):
                raise ValueError("division is not exact")
            qm = tuple(a - b for a, b in zip(m, lm))
            qc = c * lc_inv
            q = q + self.ring.monomial(qm, qc)
            rem = rem - other.mul_monomial(qm, qc)
        return q

    # formatting -------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _from_canonical(ring: PolyRing, acc: dict) -> Poly:
    items = sorted(acc.items(), key=lambda t: _grevlex_key(t[0]), reverse=True)
    return Poly(ring, tuple(items))


# --------------------------------------------------------------------------
# text I/O

_TERM_SPLIT = re.compile(r"\s*([+-])\s*")


def parse_poly(ring: PolyRing, text: str) -> Poly:
    """Parse ``text`` in the ideal-file grammar: ``[coeff*]var^exp*...`` terms
    joined by ``+``/``-``. Whitespace is ignored."""
    s = text.split("#", 1)[0].strip()
    if not s:
        raise ParseError("empty polynomial")
    s = re.sub(r"\s+", "", s)
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"([+-])([^+-]*)", s)
    if "".join(sg + body for sg, body in pieces) != s:
        raise ParseError(f"malformed polynomial {text!r}")
    f = ring.field
    acc: dict = {}
    p = f.characteristic
    for sign, body in pieces:
        if not body:
            raise ParseError(f"empty term in {text!r}")
        coeff = f.one
        exps = [0] * ring.nvars
        for factor in body.split("*"):
            if not factor:
                raise ParseError(f"empty factor in {text!r}")
            if factor[0].isdigit():
                coeff = coeff * f.parse_coeff(factor)
                if p:
                    coeff %= p
                continue
            name, _, exp = factor.partition("^")
            if name not in ring.index:
                raise ParseError(f"unknown variable {name!r}")
            if _:
                if not exp.isdigit():
                    raise ParseError(f"malformed exponent in {factor!r}")
                e = int(exp)
            else:
                e = 1
            exps[ring.index[name]] += e
        if sign == "-":
            coeff = f.neg(coeff)
        m = tuple(exps)
        v = acc.get(m, 0) + coeff
        acc[m] = v % p if p else v
    return ring.from_dict({m: c for m, c in acc.items() if c})


def format_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    fld = f.ring.field
    out = []
    for m, c in f.terms:
        c = fld.symmetric(c)
        neg = c < 0
        c = -c if neg else c
        factors = []
        for nm, e in zip(f.ring.names, m):
            if e == 1:
                factors.append(nm)
            elif e:
                factors.append(f"{nm}^{e}")
        if c != 1 or not factors:
            factors.insert(0, str(c))
        body = "*".join(factors)
        if not out:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)

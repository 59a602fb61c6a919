"""Component-level analysis of unions of projective schemes: dual graphs,
Lyubeznik complexes, connectivity checks, regularity subadditivity and a
randomized realizer for line arrangements."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .combinat import Graph, f_general, floor_bound, vertex_connectivity
from .ideals import Ideal, ideal_sum, intersect_all
from .invariants import HomologicalProfile, hilbert_data, homological_profile
from .linalg import nullspace, rank
from .ring import FieldSpec, ParseError, PolyRing

MAX_LYUBEZNIK_COMPONENTS = 20


class PreconditionError(ValueError):
    """An operation was called on data violating its mathematical precondition."""


@dataclass
class ComponentSet:
    """Ideals ``I_1, ..., I_s`` of the components of a union, optionally with the union's ideal."""

    ring: PolyRing
    components: list
    union: Ideal | None = None
    _computed_union: Ideal | None = dc_field(default=None, repr=False)

    def __post_init__(self):
        if not self.components:
            raise ValueError("need at least one component")
        for I in self.components:
            if I.ring != self.ring:
                raise ValueError("components live in different rings")
            if not I.is_homogeneous:
                raise ValueError("components must be homogeneous")
        if self.union is not None and self.union.ring != self.ring:
            raise ValueError("union lives in a different ring")

    def __len__(self):
        return len(self.components)

    def check_proper(self) -> None:
        for k, I in enumerate(self.components, start=1):
            if I.is_unit():
                raise PreconditionError(f"component {k} is the unit ideal")

    def union_ideal(self) -> Ideal:
        if self.union is not None:
            return self.union
        if self._computed_union is None:
            self._computed_union = intersect_all(self.components)
        return self._computed_union

    def union_is_contained(self) -> bool:
        """The supplied union lies in every component."""
        U = self.union_ideal()
        return all(U.issubset(I) for I in self.components)

    def subset_union(self, B: Sequence[int]) -> Ideal:
        """Ideal of the union of the components with 0-based indices ``B``."""
        return intersect_all([self.components[i] for i in B])

    @classmethod
    def parse(cls, text: str) -> "ComponentSet":
        """Ring header, then ideal blocks separated by ``component`` lines; optional ``union`` block."""
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ParseError("empty component file")
        ring = parse_ring_header(lines[0])
        blocks: list = []
        union_lines = None
        current: list | None = None
        for ln in lines[1:]:
            if ln == "component":
                current = []
                blocks.append(current)
            elif ln == "union":
                union_lines = []
                current = union_lines
            else:
                if current is None:
                    current = []
                    blocks.append(current)
                current.append(ln)
        if not blocks:
            raise ParseError("no components given")
        comps = [Ideal.parse(ring, b) for b in blocks]
        union = Ideal.parse(ring, union_lines) if union_lines is not None else None
        return cls(ring, comps, union)

    def to_text(self) -> str:
        out = [self.ring.header()]
        for I in self.components:
            out.append("component")
            out.extend(str(g) for g in I.gens)
        if self.union is not None:
            out.append("union")
            out.extend(str(g) for g in self.union.gens)
        return "\n".join(out) + "\n"


def parse_ring_header(line: str) -> PolyRing:
    parts = line.split()
    if len(parts) < 3 or parts[0] != "ring":
        raise ParseError(f"expected 'ring <Q|prime> vars...', got {line!r}")
    try:
        field = FieldSpec.parse(parts[1])
        return PolyRing(field, tuple(parts[2:]))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def krull_dim(I: Ideal) -> int:
    return hilbert_data(I).krull_dim


@dataclass
class ArrangementReport:
    dual_graph: Graph
    dims: list  # dims[i][j] = Krull dim of S/(I_i + I_j); diagonal holds component dims
    union_dim: int
    union_profile: HomologicalProfile | None
    component_regs: list
    verdicts: dict

    def as_json(self) -> dict:
        return {
            "dual_graph": self.dual_graph.as_json(),
            "dims": self.dims,
            "union_dim": self.union_dim,
            "union_profile": None if self.union_profile is None else self.union_profile.as_json(),
            "component_regs": self.component_regs,
            "verdicts": self.verdicts,
        }


def dual_graph_of_components(cs: ComponentSet, with_profiles: bool = True) -> ArrangementReport:
    """Edge ``{i, j}`` exactly when ``dim S/(I_i + I_j)`` is one less than the union's dimension."""
    cs.check_proper()
    s = len(cs)
    comp_dims = [krull_dim(I) for I in cs.components]
    union_dim = max(comp_dims)
    dims = [[0] * s for _ in range(s)]
    edges = []
    for i in range(s):
        dims[i][i] = comp_dims[i]
    for i, j in itertools.combinations(range(s), 2):
        dij = krull_dim(ideal_sum(cs.components[i], cs.components[j]))
        dims[i][j] = dims[j][i] = dij
        if dij == union_dim - 1:
            edges.append((i + 1, j + 1))
    G = Graph.from_edges(s, edges)
    profile = None
    regs: list = []
    if with_profiles:
        profile = homological_profile(cs.union_ideal())
        regs = [homological_profile(I).reg_ideal for I in cs.components]
    verdicts = {"connected": G.is_connected(), "equidimensional": len(set(comp_dims)) == 1}
    return ArrangementReport(G, dims, union_dim, profile, regs, verdicts)


def lyubeznik_complex(cs: ComponentSet, cap: int = MAX_LYUBEZNIK_COMPONENTS) -> list[tuple]:
    """Faces: index sets (1-based) whose ideal sum has a positive-dimensional quotient."""
    if len(cs) > cap:
        raise PreconditionError(f"more than {cap} components")
    cs.check_proper()
    faces: list = []
    alive = [()]
    for k in range(1, len(cs) + 1):
        nxt = []
        for F in itertools.combinations(range(len(cs)), k):
            # faces are closed under subsets, so only extend surviving faces
            if k > 1 and any(tuple(x for x in F if x != y) not in set(alive) for y in F):
                continue
            I = cs.components[F[0]]
            for i in F[1:]:
                I = ideal_sum(I, cs.components[i])
            if krull_dim(I) > 0:
                nxt.append(F)
        if not nxt:
            break
        faces.extend(tuple(i + 1 for i in F) for F in nxt)
        alive = nxt
    return faces


def hartshorne_check(cs: ComponentSet, report: ArrangementReport | None = None) -> dict:
    """ACM unions must have connected dual graphs; ``consistent`` is false only on a counterexample."""
    if report is None:
        report = dual_graph_of_components(cs)
    acm = report.union_profile.is_ACM if report.union_profile else homological_profile(cs.union_ideal()).is_ACM
    connected = report.dual_graph.is_connected()
    return {"acm": acm, "connected": connected, "consistent": (not acm) or connected}


def gorenstein_bounds(
    r: int,
    component_regs: Sequence[int],
    graph: Graph,
    component_degrees: Sequence[int] | None = None,
) -> dict:
    """Connectivity bounds of a Gorenstein union from ``r = reg S/I`` and component ideal regularities."""
    r_prime = max(component_regs)
    kappa = vertex_connectivity(graph)
    fb = floor_bound(r, r_prime)
    fg = f_general(r, component_regs)
    out = {
        "r": r,
        "r_prime": r_prime,
        "kappa": kappa,
        "floor_bound": fb,
        "f_general": fg,
        "floor_ok": kappa >= fb,
        "f_general_ok": kappa >= fg,
        # f_general saturates at s + 1, where no graph on s vertices reaches anyway
        "f_dominates_floor": fg >= min(fb, len(component_regs) + 1),
    }
    if component_degrees is not None:
        D = max(component_degrees)
        out["degree_bound"] = floor_bound(r, D)
        out["degree_bound_ok"] = kappa >= out["degree_bound"]
    out["pass"] = all(v for k, v in out.items() if k.endswith("_ok") or k == "f_dominates_floor")
    return out


def gorenstein_connectivity_check(cs: ComponentSet, deep: bool = False) -> dict:
    """Compute the union's regularity, the component data and the dual graph, then check the bounds.

    ``deep`` additionally verifies ``reg(∪_{i∈B} X_i) <= r - 1`` for all ``B`` smaller than the bound.
    """
    union = homological_profile(cs.union_ideal())
    if not union.is_Gorenstein:
        raise PreconditionError("the union is not arithmetically Gorenstein")
    report = dual_graph_of_components(cs, with_profiles=False)
    profiles = [homological_profile(I) for I in cs.components]
    regs = [p.reg_ideal for p in profiles]
    degs = [p.degree for p in profiles]
    r = union.reg_quotient
    out = gorenstein_bounds(r, regs, report.dual_graph, degs)
    out["component_regs"] = regs
    out["component_degrees"] = degs
    out["dual_graph"] = report.dual_graph.as_json()
    if deep:
        bound = max(out["floor_bound"], out["f_general"])
        worst = []
        ok = True
        for k in range(1, min(bound - 1, len(cs)) + 1):
            for B in itertools.combinations(range(len(cs)), k):
                reg_B = homological_profile(cs.subset_union(B)).reg_ideal
                if reg_B > r - 1:
                    ok = False
                    worst.append({"B": [i + 1 for i in B], "reg": reg_B})
        out["deep_ok"] = ok
        out["deep_violations"] = worst
        out["pass"] = out["pass"] and ok
    return out


def subadditivity_check(cs: ComponentSet, reduced: bool = False) -> dict:
    """Regularity of unions of curves against the sum of component regularities (and degree if reduced)."""
    U = cs.union_ideal()
    if krull_dim(U) != 2 or any(krull_dim(I) != 2 for I in cs.components):
        raise PreconditionError("subadditivity is only claimed for curves (quotients of Krull dimension 2)")
    regs = [homological_profile(I).reg_ideal for I in cs.components]
    s = len(cs)
    subsets = [B for k in range(2, s + 1) for B in itertools.combinations(range(s), k)] if s <= 5 else [
        tuple(range(k)) for k in range(2, s + 1)
    ]
    rows = []
    ok_sum = ok_deg = True
    for B in subsets:
        I = U if len(B) == s and cs.union is not None else cs.subset_union(B)
        prof = homological_profile(I)
        bound = sum(regs[i] for i in B)
        row = {"B": [i + 1 for i in B], "reg": prof.reg_ideal, "sum_regs": bound, "degree": prof.degree}
        row["sum_ok"] = prof.reg_ideal <= bound
        ok_sum &= row["sum_ok"]
        if reduced:
            row["degree_ok"] = prof.reg_ideal <= prof.degree
            ok_deg &= row["degree_ok"]
        rows.append(row)
    return {"component_regs": regs, "unions": rows, "sum_ok": ok_sum, "degree_ok": ok_deg if reduced else None,
            "pass": ok_sum and (ok_deg or not reduced)}


# ---------------------------------------------------------------------------
# line arrangements


@dataclass
class LineSearchResult:
    success: bool
    attempts: int
    components: ComponentSet | None
    lines: list  # spanning vector pairs

    def as_json(self) -> dict:
        return {
            "success": self.success,
            "attempts": self.attempts,
            "lines": [[list(map(int, v)) for v in L] for L in self.lines] if self.success else [],
            "components": None if self.components is None else [
                [str(g) for g in I.gens] for I in self.components.components
            ],
        }


def line_ideal(ring: PolyRing, span: Sequence[Sequence]) -> Ideal:
    """Ideal of the projective line spanned by two vectors."""
    forms = []
    for v in nullspace([list(span[0]), list(span[1])], ring.field):
        f = ring.zero()
        for k, c in enumerate(v):
            if c:
                f = f + ring.var(k).scale(c)
        forms.append(f)
    return Ideal(ring, forms)


def _span_dim(vectors: Sequence[Sequence], field: FieldSpec) -> int:
    return rank([{k: field(c) for k, c in enumerate(v) if c} for v in vectors], field)


def _intersect_subspaces(bases: Sequence[list], n: int, field: FieldSpec) -> list:
    """Basis of the intersection of subspaces of ``K^n`` given by spanning lists."""
    # intersection = annihilator of the sum of annihilators
    ann_rows = []
    for B in bases:
        ann_rows.extend(nullspace(B, field))
    if not ann_rows:
        return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    return nullspace(ann_rows, field)


def search_line_arrangement(
    G: Graph,
    ambient_dim: int,
    seed: int = 0,
    tries: int = 200,
    field: FieldSpec | None = None,
) -> LineSearchResult:
    """Place lines in ``P^ambient_dim`` so that line ``i`` meets line ``j`` exactly when ``{i, j}`` is an edge.

    Lines are placed one at a time.  A new line passes through a point ``u``
    (random on a placed neighbor, or where two placed neighbors meet) and a
    random ``v`` in the intersection of the planes spanned by ``u`` and the
    placed neighbors not through ``u``.
    """
    if ambient_dim < 2:
        raise PreconditionError("ambient dimension must be at least 2")
    field = field or FieldSpec.prime(32003)
    n = ambient_dim + 1
    rng = random.Random(seed)
    adj = G.adjacency()

    def rand_vec():
        return [field.random_element(rng, bound=20) for _ in range(n)]

    def comb(vectors):
        coeffs = [field.random_element(rng, nonzero=True, bound=20) for _ in vectors]
        out = [field.zero] * n
        for c, v in zip(coeffs, vectors):
            out = [field(a + c * b) for a, b in zip(out, v)]
        return out

    attempts = 0
    for attempt in range(1, tries + 1):
        attempts = attempt
        lines: list = []
        ok = True
        for k in range(1, G.s + 1):
            placed_nbrs = [j for j in range(1, k) if j in adj[k]]
            others = [j for j in range(1, k) if j not in adj[k]]
            L = None
            # u is a random point of a neighbor or the meeting point of two neighbors
            options = [("line", j) for j in placed_nbrs]
            for a, b in itertools.combinations(placed_nbrs, 2):
                meet = _intersect_subspaces([lines[a - 1], lines[b - 1]], n, field)
                if len(meet) == 1:
                    options.append(("meet", meet[0]))
            for _ in range(20):
                if not placed_nbrs:
                    cand = [rand_vec(), rand_vec()]
                else:
                    kind, data = options[rng.randrange(len(options))]
                    u = comb(lines[data - 1]) if kind == "line" else list(data)
                    rest = [j for j in placed_nbrs if _span_dim(lines[j - 1] + [u], field) > 2]
                    planes = [[u] + lines[j - 1] for j in rest]
                    V = _intersect_subspaces(planes, n, field) if planes else None
                    v = comb(V) if V is not None else rand_vec()
                    cand = [u, v]
                if _span_dim(cand, field) != 2:
                    continue
                good = all(_span_dim(cand + lines[j - 1], field) == 3 for j in placed_nbrs)
                good = good and all(_span_dim(cand + lines[j - 1], field) == 4 for j in others)
                if good:
                    L = cand
                    break
            if L is None:
                ok = False
                break
            lines.append(L)
        if not ok:
            continue
        ring = PolyRing(field, tuple(f"x{i}" for i in range(n)))
        cs = ComponentSet(ring, [line_ideal(ring, L) for L in lines])
        report = dual_graph_of_components(cs, with_profiles=False)
        if report.dual_graph == G:
            return LineSearchResult(True, attempts, cs, lines)
    return LineSearchResult(False, attempts, None, [])


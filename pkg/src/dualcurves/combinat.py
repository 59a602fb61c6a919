"""Graphs, vertex connectivity, connectivity bounds and pure simplicial complexes."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .ring import ParseError


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``1..s``; edges are sorted pairs."""

    s: int
    edges: frozenset

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("vertex count must be nonnegative")
        clean = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (1 <= u <= self.s and 1 <= v <= self.s):
                raise ValueError(f"edge {e} has a vertex outside 1..{self.s}")
            clean.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_edges(cls, s: int, edges: Iterable) -> "Graph":
        return cls(s, frozenset(tuple(e) for e in edges))

    @classmethod
    def from_digits(cls, s: int, text: str) -> "Graph":
        """Edges written as digit pairs, e.g. ``"13,14,23"``."""
        return cls.from_edges(s, [(int(w[0]), int(w[1])) for w in text.replace(" ", "").split(",") if w])

    @classmethod
    def parse(cls, text: str) -> "Graph":
        """Graph file: ``vertices s`` then one ``u v`` edge per line (1-based)."""
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines or not lines[0].startswith("vertices"):
            raise ParseError("graph file must start with 'vertices s'")
        head = lines[0].split()
        if len(head) != 2 or not head[1].isdigit():
            raise ParseError(f"malformed header {lines[0]!r}")
        s = int(head[1])
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise ParseError(f"malformed edge line {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
        try:
            return cls.from_edges(s, edges)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def to_text(self) -> str:
        return "\n".join([f"vertices {self.s}"] + [f"{u} {v}" for u, v in sorted(self.edges)]) + "\n"

    @property
    def vertices(self) -> range:
        return range(1, self.s + 1)

    def neighbors(self, v: int) -> set:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}

    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def nonedges(self) -> list[tuple]:
        return [(u, v) for u, v in itertools.combinations(self.vertices, 2) if (u, v) not in self.edges]

    def is_connected(self, removed: Iterable[int] = ()) -> bool:
        removed = set(removed)
        left = [v for v in self.vertices if v not in removed]
        if len(left) <= 1:
            return True
        adj = self.adjacency()
        seen = {left[0]}
        todo = [left[0]]
        while todo:
            u = todo.pop()
            for w in adj[u]:
                if w not in seen and w not in removed:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(left)

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == self.s - 1

    def without_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.s, self.edges - {(min(u, v), max(u, v))})

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image under ``v -> perm[v-1]``."""
        return Graph.from_edges(self.s, [(perm[a - 1], perm[b - 1]) for a, b in self.edges])

    def automorphisms(self) -> list[tuple]:
        """All automorphisms as permutations ``perm[v-1]`` (brute force with degree pruning)."""
        adj = self.adjacency()
        deg = {v: len(adj[v]) for v in self.vertices}
        out = []
        order = list(self.vertices)

        def extend(assign: dict, used: set):
            if len(assign) == self.s:
                out.append(tuple(assign[v] for v in self.vertices))
                return
            v = order[len(assign)]
            for w in self.vertices:
                if w in used or deg[w] != deg[v]:
                    continue
                if all((u in adj[v]) == (assign[u] in adj[w]) for u in assign):
                    assign[v] = w
                    used.add(w)
                    extend(assign, used)
                    del assign[v]
                    used.discard(w)

        extend({}, set())
        return out

    def as_json(self) -> dict:
        return {"vertices": self.s, "edges": [list(e) for e in sorted(self.edges)]}


def complete_graph(s: int) -> Graph:
    return Graph.from_edges(s, itertools.combinations(range(1, s + 1), 2))


def path_graph(s: int) -> Graph:
    return Graph.from_edges(s, [(i, i + 1) for i in range(1, s)])


def cycle_graph(s: int) -> Graph:
    return Graph.from_edges(s, [(i, i + 1) for i in range(1, s)] + [(1, s)])


def star_graph(s: int) -> Graph:
    """``K_{1,s-1}`` with center 1."""
    return Graph.from_edges(s, [(1, i) for i in range(2, s + 1)])


# ---------------------------------------------------------------------------
# vertex connectivity


def _local_connectivity(adj: dict, s: int, t: int, limit: int) -> int:
    """Maximum number of internally vertex-disjoint ``s``-``t`` paths (capped at ``limit``)."""
    # split v into (v, 0) -> (v, 1) with capacity 1; edges (u,1) -> (v,0) with capacity 1
    cap: dict = {}

    def add(a, b):
        cap[(a, b)] = cap.get((a, b), 0) + 1
        cap.setdefault((b, a), 0)

    nbrs: dict = {}
    for v in adj:
        if v not in (s, t):
            add((v, 0), (v, 1))
            nbrs.setdefault((v, 0), set()).add((v, 1))
            nbrs.setdefault((v, 1), set()).add((v, 0))
        for w in adj[v]:
            a = (v, 1) if v not in (s, t) else (v, 0)
            b = (w, 0)
            add(a, b)
            nbrs.setdefault(a, set()).add(b)
            nbrs.setdefault(b, set()).add(a)
    src, snk = (s, 0), (t, 0)
    flow = 0
    while flow < limit:
        parent = {src: None}
        q = deque([src])
        while q and snk not in parent:
            u = q.popleft()
            for w in nbrs.get(u, ()):
                if w not in parent and cap.get((u, w), 0) > 0:
                    parent[w] = u
                    q.append(w)
        if snk not in parent:
            break
        w = snk
        while parent[w] is not None:
            u = parent[w]
            cap[(u, w)] -= 1
            cap[(w, u)] += 1
            w = u
        flow += 1
    return flow


def vertex_connectivity(G: Graph) -> int:
    """Largest ``k`` such that ``G`` is ``k``-connected; ``κ(K_s) = s - 1``."""
    if G.s <= 1:
        return 0
    if not G.is_connected():
        return 0
    adj = G.adjacency()
    best = G.s - 1
    for u, v in G.nonedges():
        best = min(best, _local_connectivity(adj, u, v, best))
    return best


def brute_force_connectivity(G: Graph) -> int:
    """Connectivity by trying every deletion set of increasing size."""
    if G.s <= 1:
        return 0
    for k in range(G.s - 1):
        for removed in itertools.combinations(G.vertices, k):
            if G.s - k >= 2 and not G.is_connected(removed):
                return k
    return G.s - 1


# ---------------------------------------------------------------------------
# connectivity bounds


@dataclass(frozen=True)
class ConnectivityBounds:
    floor_bound: int
    f_general: int | None = None
    ci_N: int | None = None
    ci_bound: int | None = None

    def as_json(self) -> dict:
        return {
            "floor_bound": self.floor_bound,
            "f_general": self.f_general,
            "ci_N": self.ci_N,
            "ci_bound": self.ci_bound,
        }


def floor_bound(r: int, r_prime: int) -> int:
    return (r + r_prime - 1) // r_prime


def f_general(r: int, regs: Sequence[int]) -> int:
    """Largest ``i`` such that any ``i - 1`` of the ``regs`` sum to at most ``r - 1``."""
    if not regs:
        raise ValueError("f_general needs the component regularities")
    big = sorted(regs, reverse=True)
    i = 1
    while i - 1 < len(big) and sum(big[:i]) <= r - 1:
        i += 1
    return i


def _factorizations(m: int, k: int, least: int = 1):
    """Nondecreasing tuples of ``k`` positive integers with product ``m``."""
    if k == 1:
        if m >= least:
            yield (m,)
        return
    d = least
    while d ** k <= m:
        if m % d == 0:
            for rest in _factorizations(m // d, k - 1, d):
                yield (d,) + rest
        d += 1


def complete_intersection_N(degrees: Sequence[int], n: int) -> int:
    """``min Σδ_k - n + 1`` over factorizations ``Π δ_k = Σ d_i`` into ``n - 1`` factors."""
    if n < 2:
        raise ValueError("ambient dimension must be at least 2")
    total = sum(degrees)
    return min(sum(f) - n + 1 for f in _factorizations(total, n - 1))


def connectivity_bounds(
    r: int,
    r_prime: int,
    regs: Sequence[int] | None = None,
    degrees_n: tuple | None = None,
) -> ConnectivityBounds:
    if r < 1 or r_prime < 1:
        raise ValueError("regularities must be positive")
    fg = f_general(r, regs) if regs is not None else None
    ci_n = ci_b = None
    if degrees_n is not None:
        degs, n = degrees_n
        ci_n = complete_intersection_N(degs, n)
        D = max(degs)
        ci_b = (ci_n + D - 1) // D
    return ConnectivityBounds(floor_bound(r, r_prime), fg, ci_n, ci_b)


# ---------------------------------------------------------------------------
# pure simplicial complexes


@dataclass(frozen=True)
class PureComplex:
    """Pure ``d``-complex given by an ordered tuple of facets (each a sorted tuple of labels)."""

    d: int
    facets: tuple

    def __post_init__(self):
        fs = tuple(tuple(sorted(f)) for f in self.facets)
        for f in fs:
            if len(f) != self.d + 1 or len(set(f)) != len(f):
                raise ValueError(f"facet {f} is not a {self.d}-simplex")
        if len(set(fs)) != len(fs):
            raise ValueError("repeated facet")
        object.__setattr__(self, "facets", fs)

    @classmethod
    def parse(cls, text: str) -> "PureComplex":
        facets = []
        for ln in text.splitlines():
            ln = ln.split("#", 1)[0].strip()
            if not ln:
                continue
            try:
                facets.append(tuple(int(w) for w in ln.split()))
            except ValueError as exc:
                raise ParseError(f"malformed facet line {ln!r}") from exc
        if not facets:
            raise ParseError("complex file has no facets")
        sizes = {len(f) for f in facets}
        if len(sizes) != 1:
            raise ParseError("complex is not pure")
        try:
            return cls(sizes.pop() - 1, tuple(facets))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    @property
    def vertex_pool(self) -> set:
        return set().union(*map(set, self.facets))

    def canonical_form(self, graph_automorphisms: Sequence[tuple] | None = None) -> tuple:
        """Invariant of the complex up to vertex relabeling and facet reordering.

        A vertex's signature is the set of facet positions containing it; the
        sorted signature list fixes the complex up to relabeling once the facet
        order is fixed, and facet orders are only permuted by automorphisms of
        the dual graph.
        """
        m = len(self.facets)
        perms = graph_automorphisms or list(itertools.permutations(range(1, m + 1)))
        best = None
        for perm in perms:
            sigs = []
            for v in self.vertex_pool:
                sigs.append(tuple(sorted(perm[i] for i, f in enumerate(self.facets) if v in f)))
            key = tuple(sorted(sigs))
            if best is None or key < best:
                best = key
        return (self.d, best)

    def as_json(self) -> dict:
        return {"d": self.d, "facets": [list(f) for f in self.facets]}


def dual_graph_of_complex(C: PureComplex) -> Graph:
    """Facet ``i`` (1-based, stored order) adjacent to ``j`` when they share ``d`` vertices."""
    edges = []
    for (i, f), (j, g) in itertools.combinations(enumerate(C.facets, start=1), 2):
        if len(set(f) & set(g)) == C.d:
            edges.append((i, j))
    return Graph.from_edges(len(C.facets), edges)


def make_star_windmill(kind: str, d: int) -> PureComplex:
    """Join of ``K3`` (star) or ``K_{1,3}`` (windmill) with a ``(d-2)``-simplex."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    if kind == "star":
        base = [(0, 1), (1, 2), (0, 2)]
        nbase = 3
    elif kind == "windmill":
        base = [(0, 1), (0, 2), (0, 3)]
        nbase = 4
    else:
        raise ValueError(f"unknown construction {kind!r}")
    cone = tuple(range(nbase, nbase + d - 1))
    return PureComplex(d, tuple(e + cone for e in base))


class SearchCapError(RuntimeError):
    def __init__(self, message: str, frontier: int):
        super().__init__(message)
        self.frontier = frontier


def enumerate_realizations(
    G: Graph,
    d: int,
    max_vertices: int | None = None,
    node_cap: int = 5_000_000,
) -> list[PureComplex]:
    """All pure ``d``-complexes with dual graph exactly ``G``, up to isomorphism.

    Facet ``i`` corresponds to vertex ``i`` of ``G``; the first facet is
    ``{0..d}`` and new vertices are introduced with consecutive labels, which is
    complete because unused labels are interchangeable.
    """
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    s = G.s
    if s == 0:
        return []
    pool_cap = s * (d + 1) if max_vertices is None else max_vertices
    if pool_cap < d + 1:
        return []
    adj = G.adjacency()
    auts = G.automorphisms()
    found: dict = {}
    nodes = 0
    facets: list = [tuple(range(d + 1))]

    def consistent(cand: frozenset, k: int) -> bool:
        v = k + 1
        for i, f in enumerate(facets, start=1):
            common = len(cand & f)
            if common == d + 1:
                return False
            if (common == d) != (i in adj[v]):
                return False
        return True

    def search(k: int, used: int):
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise SearchCapError(f"search exceeded {node_cap} nodes", len(facets))
        if k == s:
            C = PureComplex(d, tuple(tuple(sorted(f)) for f in facets))
            key = C.canonical_form(auts)
            found.setdefault(key, C)
            return
        for fresh in range(d + 2):
            if used + fresh > pool_cap:
                break
            for old in itertools.combinations(range(used), d + 1 - fresh):
                cand = frozenset(old + tuple(range(used, used + fresh)))
                if consistent(cand, k):
                    facets.append(cand)
                    search(k + 1, used + fresh)
                    facets.pop()

    facets = [frozenset(range(d + 1))]
    search(1, d + 1)
    out = [found[k] for k in sorted(found)]
    for C in out:
        if dual_graph_of_complex(C) != G:
            raise AssertionError("enumerated complex has the wrong dual graph")
    return out

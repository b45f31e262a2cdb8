"""Trivalent webs, Tait colorings and Kempe equivalence.

A web is stored as an abstract trivalent multigraph: loops, multiple edges
and vertexless circles are allowed, planar embedding data is not kept.
Every algorithm here walks vertices and edges in sorted identifier order so
that results are reproducible run to run.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

COLORS = (1, 2, 3)
PAIRS = ((1, 2), (1, 3), (2, 3))


class WebError(ValueError):
    """Malformed web data or an invalid argument to a web operation."""


class PreconditionError(WebError):
    """A web does not satisfy the precondition of an operation."""


@dataclass(frozen=True)
class Edge:
    id: str
    ends: tuple[str, ...] = ()

    @property
    def is_circle(self) -> bool:
        return not self.ends

    @property
    def is_loop(self) -> bool:
        return len(self.ends) == 2 and self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class Web:
    """Finite trivalent graph with optional free circles.

    ``vertices`` and ``edges`` keep the order in which they were given (this
    is what the JSON writer reproduces); algorithms use ``edge_ids`` and
    ``vertex_ids`` which are sorted.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    name: str = ""
    _incidence: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise WebError("duplicate vertex identifier")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise WebError("duplicate edge identifier")
        vset = set(self.vertices)
        incidence: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if len(e.ends) not in (0, 2):
                raise WebError(f"edge {e.id!r} must have 0 or 2 ends")
            for v in e.ends:
                if v not in vset:
                    raise WebError(f"edge {e.id!r} ends at unknown vertex {v!r}")
                incidence[v].append(e.id)
        for v, inc in incidence.items():
            if len(inc) != 3:
                raise WebError(f"vertex {v!r} has {len(inc)} edge-ends, expected 3")
        object.__setattr__(
            self, "_incidence", {v: tuple(sorted(inc)) for v, inc in incidence.items()}
        )

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, Sequence[str]]], name: str = "",
                   vertices: Sequence[str] | None = None) -> "Web":
        edge_objs = tuple(Edge(eid, tuple(ends)) for eid, ends in edges)
        if vertices is None:
            seen: dict[str, None] = {}
            for e in edge_objs:
                for v in e.ends:
                    seen.setdefault(v)
            vertices = tuple(seen)
        return cls(tuple(vertices), edge_objs, name)

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(sorted(e.id for e in self.edges))

    @property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.vertices))

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise WebError(f"unknown edge {eid!r}")

    def incident(self, v: str) -> tuple[str, ...]:
        """Edge-ends at ``v`` as sorted edge ids (a loop appears twice)."""
        try:
            return self._incidence[v]
        except KeyError:
            raise WebError(f"unknown vertex {v!r}") from None

    def circles(self) -> tuple[str, ...]:
        return tuple(sorted(e.id for e in self.edges if e.is_circle))

    def has_loop(self) -> bool:
        return any(e.is_loop for e in self.edges)

    def is_bipartite(self) -> bool:
        side: dict[str, int] = {}
        adj = self._adjacency()
        for start in self.vertex_ids:
            if start in side:
                continue
            side[start] = 0
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for w in adj[v]:
                    if w not in side:
                        side[w] = 1 - side[v]
                        queue.append(w)
                    elif side[w] == side[v]:
                        return False
        return True

    def _adjacency(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.ends:
                a, b = e.ends
                adj[a].append(b)
                adj[b].append(a)
        return adj

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True, order=True)
class TaitColoring:
    """Edge coloring in {1,2,3}, stored aligned with the sorted edge ids."""

    colors: tuple[int, ...]
    edges: tuple[str, ...] = field(compare=False)

    @classmethod
    def from_mapping(cls, web: Web, assignment: Mapping[str, int]) -> "TaitColoring":
        ids = web.edge_ids
        if set(assignment) != set(ids):
            raise WebError("coloring must assign every edge exactly once")
        return cls(tuple(int(assignment[e]) for e in ids), ids)

    def __getitem__(self, eid: str) -> int:
        return self.colors[self.edges.index(eid)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.edges, self.colors))

    def permuted(self, perm: Mapping[int, int]) -> "TaitColoring":
        return TaitColoring(tuple(perm[c] for c in self.colors), self.edges)

    def __hash__(self):
        return hash(self.colors)

    def __eq__(self, other):
        if not isinstance(other, TaitColoring):
            return NotImplemented
        return self.colors == other.colors and self.edges == other.edges


def is_tait_coloring(web: Web, coloring: TaitColoring) -> bool:
    if coloring.edges != web.edge_ids:
        return False
    if any(c not in COLORS for c in coloring.colors):
        return False
    col = coloring.as_dict()
    return all(len({col[e] for e in web.incident(v)}) == 3 for v in web.vertices)


def enumerate_tait_colorings(web: Web) -> list[TaitColoring]:
    """All Tait colorings, sorted lexicographically over sorted edge ids.

    Backtracks over the vertex edges in sorted order, checking every vertex
    whose three edge-ends are already colored; free circles are filled in
    last.  A loop at a vertex makes the list empty.
    """
    return list(_tait_colorings(web))


@lru_cache(maxsize=256)
def _tait_colorings(web: Web) -> tuple[TaitColoring, ...]:
    ids = web.edge_ids
    if web.has_loop():
        return ()
    circles = set(web.circles())
    graph_edges = [e for e in ids if e not in circles]
    # neighbours of each edge through its two endpoints
    touching: dict[str, set[str]] = {e: set() for e in graph_edges}
    for v in web.vertices:
        inc = web.incident(v)
        for e in inc:
            touching[e].update(f for f in inc if f != e)
    assigned: dict[str, int] = {}
    partial: list[dict[str, int]] = []

    def backtrack(k: int) -> None:
        if k == len(graph_edges):
            partial.append(dict(assigned))
            return
        e = graph_edges[k]
        used = {assigned[f] for f in touching[e] if f in assigned}
        for c in COLORS:
            if c not in used:
                assigned[e] = c
                backtrack(k + 1)
                del assigned[e]

    backtrack(0)
    circle_ids = sorted(circles)
    out = []
    for base in partial:
        for combo in product(COLORS, repeat=len(circle_ids)):
            col = dict(base)
            col.update(zip(circle_ids, combo))
            out.append(TaitColoring(tuple(col[e] for e in ids), ids))
    out.sort()
    return tuple(out)


def _check_pair(pair) -> tuple[int, int]:
    try:
        i, j = sorted(pair)
    except (TypeError, ValueError):
        raise WebError(f"color pair must be a 2-subset of {{1,2,3}}, got {pair!r}") from None
    if i == j or i not in COLORS or j not in COLORS:
        raise WebError(f"color pair must be a 2-subset of {{1,2,3}}, got {pair!r}")
    return i, j


@dataclass(frozen=True)
class BicoloredSubgraph:
    web: Web
    pair: tuple[int, int]
    components: tuple[frozenset, ...]

    @property
    def count(self) -> int:
        return len(self.components)


def bicolored_subgraph(web: Web, coloring: TaitColoring, pair) -> BicoloredSubgraph:
    """Connected components of the edges colored with one of ``pair``."""
    i, j = _check_pair(pair)
    col = coloring.as_dict()
    chosen = [e for e in web.edge_ids if col[e] in (i, j)]
    parent = {e: e for e in chosen}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in web.vertex_ids:
        inc = [e for e in web.incident(v) if col[e] in (i, j)]
        for a, b in zip(inc, inc[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[str, set[str]] = {}
    for e in chosen:
        groups.setdefault(find(e), set()).add(e)
    comps = tuple(sorted((frozenset(g) for g in groups.values()), key=min))
    return BicoloredSubgraph(web, (i, j), comps)


def bicolored_counts(web: Web, coloring: TaitColoring) -> dict[tuple[int, int], int]:
    """d_ij for the three color pairs."""
    return dict(zip(PAIRS, _counts(web, coloring)))


@lru_cache(maxsize=4096)
def _counts(web: Web, coloring: TaitColoring) -> tuple[int, int, int]:
    return tuple(bicolored_subgraph(web, coloring, p).count for p in PAIRS)


def coloring_degree(web: Web, coloring: TaitColoring) -> int:
    """d_12 + d_13 + d_23 for one coloring."""
    return sum(bicolored_counts(web, coloring).values())


def kempe_move(web: Web, coloring: TaitColoring, pair, component) -> TaitColoring:
    """Swap the two colors of ``pair`` on one component of the bicolored subgraph."""
    i, j = _check_pair(pair)
    component = frozenset(component)
    if component not in bicolored_subgraph(web, coloring, (i, j)).components:
        raise WebError("component is not a component of the bicolored subgraph")
    swap = {i: j, j: i}
    colors = tuple(swap[c] if e in component else c
                   for e, c in zip(coloring.edges, coloring.colors))
    return TaitColoring(colors, coloring.edges)


def kempe_neighbours(web: Web, coloring: TaitColoring) -> list[TaitColoring]:
    out = []
    for pair in PAIRS:
        for comp in bicolored_subgraph(web, coloring, pair).components:
            out.append(kempe_move(web, coloring, pair, comp))
    return out


@lru_cache(maxsize=1024)
def kempe_class(web: Web, coloring: TaitColoring) -> frozenset:
    """Kempe class of ``coloring`` by breadth-first search over moves."""
    seen = {coloring}
    queue = deque([coloring])
    while queue:
        c = queue.popleft()
        for n in kempe_neighbours(web, c):
            if n not in seen:
                seen.add(n)
                queue.append(n)
    return frozenset(seen)


@dataclass(frozen=True)
class KempePartition:
    classes: tuple[tuple[TaitColoring, ...], ...]
    degrees: tuple[tuple[int, ...], ...]
    weakly_homogeneous: bool
    semi_homogeneous: bool
    homogeneous: bool
    kempe_small: bool
    kempe_degree: int | None

    @property
    def class_degrees(self) -> tuple[int | None, ...]:
        """Degree of each class, or None for an inhomogeneous class."""
        return tuple(d[0] if len(set(d)) == 1 else None for d in self.degrees)

    def class_of(self, coloring: TaitColoring) -> int:
        for k, cls in enumerate(self.classes):
            if coloring in cls:
                return k
        raise WebError("coloring is not a Tait coloring of this web")


def kempe_partition(web: Web) -> KempePartition:
    colorings = enumerate_tait_colorings(web)
    remaining = set(colorings)
    classes = []
    for c in colorings:
        if c not in remaining:
            continue
        cls = kempe_class(web, c)
        remaining -= cls
        classes.append(tuple(sorted(cls)))
    counts = {c: bicolored_counts(web, c) for c in colorings}
    degrees = tuple(tuple(sum(counts[c].values()) for c in cls) for cls in classes)
    homog = [len(set(d)) == 1 for d in degrees]
    weakly = any(homog)
    semi = bool(classes) and all(homog)
    homogeneous = semi and len({d[0] for d in degrees}) == 1
    small = bool(colorings) and all(n <= 1 for cnt in counts.values() for n in cnt.values())
    return KempePartition(
        classes=tuple(classes),
        degrees=degrees,
        weakly_homogeneous=weakly,
        semi_homogeneous=semi,
        homogeneous=homogeneous,
        kempe_small=small,
        kempe_degree=degrees[0][0] if homogeneous else None,
    )


def is_kempe_small(web: Web) -> bool:
    colorings = enumerate_tait_colorings(web)
    if not colorings:
        return False
    # an empty bicolored subgraph (a circle colored i, pair {j,k}) is connected
    return all(bicolored_subgraph(web, c, p).count <= 1 for c in colorings for p in PAIRS)


def hamiltonian_cycles_from_colorings(web: Web) -> set[frozenset]:
    if not is_kempe_small(web):
        raise PreconditionError("web is not Kempe-small")
    cycles = set()
    for c in enumerate_tait_colorings(web):
        for p in PAIRS:
            cycles.update(bicolored_subgraph(web, c, p).components)
    return cycles


# -- transformations ---------------------------------------------------------

def blow_up_vertex(web: Web, vertex: str) -> tuple[Web, dict[TaitColoring, TaitColoring]]:
    """Replace ``vertex`` by a triangle.

    The edge-ends at the vertex are attached to three new vertices
    ``<vertex>/0..2`` (in sorted edge order); the triangle edge opposite to an
    original edge-end inherits that end's color, which is the unique way to
    extend a coloring.  Returns the new web and the coloring bijection.
    """
    if vertex not in web.vertices:
        raise WebError(f"unknown vertex {vertex!r}")
    ends = []  # (edge id, slot) in a fixed order
    for e in sorted(web.edges, key=lambda e: e.id):
        for k, v in enumerate(e.ends):
            if v == vertex:
                ends.append((e.id, k))
    corner = {end: f"{vertex}/{n}" for n, end in enumerate(ends)}
    new_edges = []
    for e in web.edges:
        if vertex in e.ends:
            slots = {k: corner[(e.id, k)] for k, v in enumerate(e.ends) if v == vertex}
            new_edges.append(Edge(e.id, tuple(slots.get(k, v) for k, v in enumerate(e.ends))))
        else:
            new_edges.append(e)
    tri = []
    for a, b in ((0, 1), (0, 2), (1, 2)):
        tri.append(Edge(f"{vertex}/t{a}{b}", (corner[ends[a]], corner[ends[b]])))
    new_vertices = [v for v in web.vertices if v != vertex] + [corner[x] for x in ends]
    new = Web(tuple(new_vertices), tuple(new_edges) + tuple(tri), web.name + "+blow")
    mapping = {}
    opposite = {(0, 1): 2, (0, 2): 1, (1, 2): 0}
    for c in enumerate_tait_colorings(web):
        col = c.as_dict()
        for (a, b), o in opposite.items():
            col[f"{vertex}/t{a}{b}"] = col[ends[o][0]]
        mapping[c] = TaitColoring.from_mapping(new, col)
    return new, mapping


def collapse_digon(web: Web, digon: Sequence[str]) -> tuple[Web, dict[TaitColoring, TaitColoring]]:
    """Collapse two parallel edges into nothing, merging the two outer legs.

    The merged leg keeps the id of the lexicographically smaller outer edge;
    when both outer legs are the same edge (the Θ-web) it becomes a free
    circle.  Returns the new web and the 2-to-1 coloring map.
    """
    try:
        e, f = (web.edge(x) for x in digon)
    except (TypeError, ValueError):
        raise WebError("digon must be a pair of edge ids") from None
    if e.id == f.id or e.is_circle or f.is_circle or e.is_loop or f.is_loop \
            or set(e.ends) != set(f.ends):
        raise WebError("edges do not form a digon")
    u, w = e.ends
    (g,) = [x for x in web.incident(u) if x not in (e.id, f.id)]
    (h,) = [x for x in web.incident(w) if x not in (e.id, f.id)]
    kept = min(g, h)
    edges = []
    if g == h:
        edges = [x for x in web.edges if x.id not in (e.id, f.id, g)]
        edges.append(Edge(g, ()))
    else:
        ge, he = web.edge(g), web.edge(h)
        (x,) = [v for v in ge.ends if v != u]
        (y,) = [v for v in he.ends if v != w]
        merged = Edge(kept, (x, y))
        for x in web.edges:
            if x.id in (e.id, f.id, g, h):
                if x.id == kept:
                    edges.append(merged)
                continue
            edges.append(x)
    vertices = tuple(v for v in web.vertices if v not in (u, w))
    new = Web(vertices, tuple(edges), web.name + "-digon")
    mapping = {}
    for c in enumerate_tait_colorings(web):
        col = c.as_dict()
        out = {k: col[k] for k in new.edge_ids}
        out[kept] = col[g]
        mapping[c] = TaitColoring.from_mapping(new, out)
    return new, mapping


def vertex_connected_sum(w1: Web, v1: str, w2: Web, v2: str,
                         matching: Sequence[tuple[str, str]]) -> Web:
    """Remove ``v1`` and ``v2`` and join their legs along ``matching``.

    ``matching`` pairs edge ids at ``v1`` with edge ids at ``v2``.  Vertices
    and edges are renamed with ``1:``/``2:`` prefixes; a joined leg is named
    ``1:a+2:b``.
    """
    if v1 not in w1.vertices or v2 not in w2.vertices:
        raise WebError("unknown vertex")
    legs1, legs2 = w1.incident(v1), w2.incident(v2)
    if len(set(legs1)) != 3 or len(set(legs2)) != 3:
        raise WebError("connected sum needs vertices without loops")
    matching = [tuple(p) for p in matching]
    if len(matching) != 3 or sorted(a for a, _ in matching) != sorted(legs1) \
            or sorted(b for _, b in matching) != sorted(legs2):
        raise WebError("matching must pair the three legs at v1 with the three at v2")
    ren1 = {v: f"1:{v}" for v in w1.vertices if v != v1}
    ren2 = {v: f"2:{v}" for v in w2.vertices if v != v2}
    edges = []
    for e in w1.edges:
        if e.id not in legs1:
            edges.append(Edge(f"1:{e.id}", tuple(ren1[v] for v in e.ends)))
    for e in w2.edges:
        if e.id not in legs2:
            edges.append(Edge(f"2:{e.id}", tuple(ren2[v] for v in e.ends)))
    for a, b in matching:
        ea, eb = w1.edge(a), w2.edge(b)
        (x,) = [v for v in ea.ends if v != v1] or [None]
        (y,) = [v for v in eb.ends if v != v2] or [None]
        if x is None or y is None:
            raise WebError("connected sum leg ends at the removed vertex twice")
        edges.append(Edge(f"1:{a}+2:{b}", (ren1[x], ren2[y])))
    vertices = tuple(ren1.values()) + tuple(ren2.values())
    return Web(vertices, tuple(edges), f"{w1.name}#{w2.name}")


def permute_colors(coloring: TaitColoring, perm: Sequence[int]) -> TaitColoring:
    """Apply the color permutation ``k -> perm[k-1]``."""
    return coloring.permuted({k + 1: perm[k] for k in range(3)})

"""Finite multigraphs with stable edge identities, plus the structural
machinery used throughout the toolkit: line graphs, block decomposition,
minor containment, cycle enumeration, degeneracy orders and exact chromatic
index.

Graphs are immutable after construction; subgraph operations return new
graphs and preserve the ids of surviving edges, so results about an edge can
be traced through reductions.  Loops are rejected; parallel edges are
allowed but several operations require simple inputs and say so.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    id: int

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)

    def other(self, vertex: int) -> int:
        if vertex == self.u:
            return self.v
        if vertex == self.v:
            return self.u
        raise GraphError(f"vertex {vertex} not an endpoint of edge {self.id}")


class Graph:
    """Undirected multigraph on integer vertex ids, loops forbidden."""

    __slots__ = ("_vertices", "_edges", "_adj", "_by_id", "_hash")

    def __init__(self, vertices: Iterable[int], edges: Iterable = ()):
        vs = tuple(sorted(set(int(v) for v in vertices)))
        es = []
        used_ids = set()
        for item in edges:
            if len(item) == 2:
                u, v = item
                eid = len(es)
            else:
                u, v, eid = item
            u, v, eid = int(u), int(v), int(eid)
            if u == v:
                raise GraphError(f"loop at vertex {u} rejected")
            if eid in used_ids:
                raise GraphError(f"duplicate edge id {eid}")
            used_ids.add(eid)
            es.append(Edge(min(u, v), max(u, v), eid))
        self._vertices = vs
        self._edges = tuple(es)
        vset = set(vs)
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in vs}
        for e in es:
            if e.u not in vset or e.v not in vset:
                raise GraphError(f"edge {e.id} endpoint not a vertex")
            adj[e.u].append((e.v, e.id))
            adj[e.v].append((e.u, e.id))
        self._adj = {v: tuple(sorted(pairs)) for v, pairs in adj.items()}
        self._by_id = {e.id: e for e in es}
        self._hash = None

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def edge(self, eid: int) -> Edge:
        return self._by_id[eid]

    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e.id for e in self._edges)

    def incidences(self, v: int) -> tuple[tuple[int, int], ...]:
        """(neighbor, edge id) pairs at v, sorted; parallels appear once each."""
        return self._adj[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted({w for w, _ in self._adj[v]}))

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self._vertices), default=0)

    def min_degree(self) -> int:
        return min((self.degree(v) for v in self._vertices), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return any(w == v for w, _ in self._adj.get(u, ()))

    def edge_between(self, u: int, v: int) -> Optional[int]:
        for w, eid in self._adj.get(u, ()):
            if w == v:
                return eid
        return None

    def is_simple(self) -> bool:
        seen = set()
        for e in self._edges:
            key = (e.u, e.v)
            if key in seen:
                return False
            seen.add(key)
        return True

    # -- connectivity ----------------------------------------------------

    def components(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        comps = []
        for root in self._vertices:
            if root in seen:
                continue
            stack = [root]
            comp = {root}
            seen.add(root)
            while stack:
                x = stack.pop()
                for y, _ in self._adj[x]:
                    if y not in comp:
                        comp.add(y)
                        seen.add(y)
                        stack.append(y)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # -- subgraphs (edge ids survive) -------------------------------------

    def without_edge(self, eid: int) -> "Graph":
        return Graph(self._vertices, [e.endpoints + (e.id,) for e in self._edges if e.id != eid])

    def without_vertex(self, v: int) -> "Graph":
        return Graph(
            (w for w in self._vertices if w != v),
            [e.endpoints + (e.id,) for e in self._edges if v not in e.endpoints],
        )

    def induced(self, vs: Iterable[int]) -> "Graph":
        keep = set(vs)
        return Graph(
            keep,
            [
                e.endpoints + (e.id,)
                for e in self._edges
                if e.u in keep and e.v in keep
            ],
        )

    def with_edge(self, u: int, v: int) -> "Graph":
        new_id = max((e.id for e in self._edges), default=-1) + 1
        return Graph(
            set(self._vertices) | {u, v},
            [e.endpoints + (e.id,) for e in self._edges] + [(u, v, new_id)],
        )

    def relabeled(self, mapping: dict[int, int]) -> "Graph":
        return Graph(
            (mapping[v] for v in self._vertices),
            [(mapping[e.u], mapping[e.v], e.id) for e in self._edges],
        )

    # -- equality ----------------------------------------------------------

    def _key(self):
        return (self._vertices, tuple(sorted((e.u, e.v, e.id) for e in self._edges)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- standard builders ----------------------------------------------------


def path_graph(n: int) -> Graph:
    """Path on n vertices (length n-1)."""
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(range(n), list(itertools.combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(range(a + b), [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return Graph(range(leaves + 1), [(0, i + 1) for i in range(leaves)])


def k23_plus() -> Graph:
    """K_{2,3} with an extra edge joining two of its degree-2 vertices."""
    g = complete_bipartite(2, 3)
    return g.with_edge(2, 3)


# -- line graph -------------------------------------------------------------


def line_graph(g: Graph) -> Graph:
    """Simple graph on the edge ids of g; ids adjacent iff the edges share
    an endpoint.  Parallel edges of g share both endpoints and so become
    adjacent vertices."""
    if g.m == 0:
        raise GraphError("line graph of an edgeless graph is undefined here")
    pairs = set()
    for v in g.vertices:
        ids = [eid for _, eid in g.incidences(v)]
        for a, b in itertools.combinations(sorted(ids), 2):
            pairs.add((a, b))
    return Graph(g.edge_ids(), sorted(pairs))


# -- blocks -----------------------------------------------------------------


def blocks(g: Graph) -> tuple[list[frozenset[int]], frozenset[int]]:
    """Block-cut decomposition: (vertex sets of blocks, cut vertices).

    Every edge lies in exactly one block; cut vertices are the vertices in
    two or more blocks.  Isolated vertices belong to no block.  Only the
    tree edge into a vertex is skipped during DFS, so parallel edges form
    their own 2-vertex blocks correctly.
    """
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    entry_edge: dict[int, int] = {}
    timer = itertools.count()
    out_blocks: list[frozenset[int]] = []
    edge_stack: list[tuple[int, int]] = []

    for root in g.vertices:
        if root in disc or g.degree(root) == 0:
            continue
        entry_edge[root] = -1
        disc[root] = low[root] = next(timer)
        stack = [(root, iter(g.incidences(root)))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w, eid in it:
                if eid == entry_edge[v]:
                    continue
                if w not in disc:
                    entry_edge[w] = eid
                    edge_stack.append((v, w))
                    disc[w] = low[w] = next(timer)
                    stack.append((w, iter(g.incidences(w))))
                    advanced = True
                    break
                elif disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    comp = set()
                    while edge_stack:
                        a, b = edge_stack.pop()
                        comp.add(a)
                        comp.add(b)
                        if (a, b) == (u, v):
                            break
                    out_blocks.append(frozenset(comp))
    counts: dict[int, int] = {}
    for b in out_blocks:
        for v in b:
            counts[v] = counts.get(v, 0) + 1
    cuts = frozenset(v for v, c in counts.items() if c >= 2)
    return out_blocks, cuts


def blocks_all_complete_or_cycle(g: Graph) -> bool:
    """True iff every block of connected g induces a complete graph (K2
    counts) or a chordless cycle."""
    if not g.is_connected():
        raise GraphError("block shape test requires a connected graph")
    if not g.is_simple():
        raise GraphError("block shape test requires a simple graph")
    blks, _ = blocks(g)
    for b in blks:
        sub = g.induced(b)
        k = len(b)
        if sub.m == k * (k - 1) // 2:
            continue  # complete
        if k >= 3 and sub.m == k and all(sub.degree(v) == 2 for v in b):
            continue  # chordless cycle
        return False
    return True


# -- parallel-edge / multigraph handling note: minors and cycles below assume
# simple inputs; callers reduce multigraphs first where that matters.


MINOR_PATTERNS = {
    "K4": complete_graph(4),
    "K23": complete_bipartite(2, 3),
    "K23_PLUS": k23_plus(),
}

MINOR_TEST_CAP = 16


def has_minor(g: Graph, h, cap: int = MINOR_TEST_CAP) -> bool:
    """Exhaustive branch-set search for h as a minor of g.

    h may be a Graph or one of the names "K4", "K23", "K23_PLUS".  Capped
    because the search is exponential; the catalogs this serves stay small.
    """
    if isinstance(h, str):
        try:
            h = MINOR_PATTERNS[h]
        except KeyError:
            raise GraphError(f"unknown minor name {h!r}") from None
    if g.n > cap:
        raise GraphError(f"instance too large for minor test (n={g.n} > cap={cap})")
    hp = h.vertices
    if g.n < len(hp) or g.m < h.m:
        return False
    gverts = g.vertices
    adj = {v: set(g.neighbors(v)) for v in gverts}
    need = {
        (a, b): True for a, b in itertools.combinations(hp, 2) if h.has_edge(a, b)
    }

    # order pattern vertices by degree, densest first
    order = sorted(hp, key=lambda p: -h.degree(p))

    def connected_supersets(seed: frozenset[int], allowed: frozenset[int]):
        """All connected sets S with seed <= S <= seed|allowed, grown greedily."""
        # BFS over set-growth; seed itself must be connected already
        seen = {seed}
        queue = [seed]
        while queue:
            s = queue.pop()
            yield s
            boundary = set()
            for v in s:
                boundary |= adj[v] & allowed
            boundary -= s
            for v in sorted(boundary):
                t = s | {v}
                if t not in seen:
                    seen.add(t)
                    queue.append(t)

    def rec(i: int, assigned: dict[int, frozenset[int]], free: frozenset[int]) -> bool:
        if i == len(order):
            return True
        p = order[i]
        # candidate branch sets: connected subsets of free vertices that touch
        # every already-placed neighbor of p; each set is seeded at its
        # minimum vertex so it is enumerated once
        needed = [q for q in order[:i] if h.has_edge(p, q)]
        for v in sorted(free):
            for s in connected_supersets(frozenset([v]), frozenset(w for w in free if w > v)):
                if len(s) > len(free) - (len(order) - i - 1):
                    continue
                ok = True
                for q in needed:
                    if not any(adj[x] & assigned[q] for x in s):
                        ok = False
                        break
                if not ok:
                    continue
                assigned[p] = s
                if rec(i + 1, assigned, free - s):
                    return True
                del assigned[p]
        return False

    return rec(0, {}, frozenset(gverts))


# -- cycles ------------------------------------------------------------------


def simple_cycles_up_to(g: Graph, max_len: int):
    """Yield each simple cycle of length 3..max_len exactly once, as a vertex
    tuple starting at its smallest vertex, second vertex smaller than last."""
    adj = {v: g.neighbors(v) for v in g.vertices}
    for root in g.vertices:
        # paths start at root, use only vertices > root
        stack = [(root, (root,), {root})]
        while stack:
            v, path, used = stack.pop()
            for w in adj[v]:
                if w == root and len(path) >= 3:
                    if path[1] < path[-1]:
                        yield path
                elif w > root and w not in used and len(path) < max_len:
                    stack.append((w, path + (w,), used | {w}))


def cycle_spectrum(g: Graph, max_len: int) -> frozenset[int]:
    """Set of cycle lengths k <= max_len present in g.

    Parallel edge pairs count as 2-cycles for multigraph inputs.
    """
    if max_len > g.n:
        raise GraphError("max_len exceeds vertex count")
    lengths = set()
    if not g.is_simple():
        lengths.add(2)
    remaining = set(range(3, max_len + 1))
    for cyc in simple_cycles_up_to(g, max_len):
        lengths.add(len(cyc))
        remaining.discard(len(cyc))
        if not remaining:
            break
    return frozenset(lengths)


def find_2_alternating_cycle(g: Graph):
    """An even cycle whose alternate vertices all have degree 2 in g, if any.

    Returns a ConfigurationMatch (pattern vertices c0..c_{2n-1}, degree-2
    class at even positions) or None.
    """
    from .match import ConfigurationMatch

    for cyc in sorted(simple_cycles_up_to(g, g.n), key=lambda c: (len(c), c)):
        if len(cyc) % 2:
            continue
        for offset in (0, 1):
            if all(g.degree(cyc[i]) == 2 for i in range(offset, len(cyc), 2)):
                rotated = cyc[offset:] + cyc[:offset]
                return ConfigurationMatch(
                    config="ALT2CYCLE",
                    vertex_map={f"c{i}": v for i, v in enumerate(rotated)},
                )
    return None


# -- degree machinery ---------------------------------------------------------


def min_degree_sum_edge(g: Graph) -> tuple[int, int]:
    """Edge minimizing d(u)+d(v), with the value; ties broken by edge id."""
    if g.m == 0:
        raise GraphError("graph has no edges")
    best = min(g.edges, key=lambda e: (g.degree(e.u) + g.degree(e.v), e.id))
    return best.id, g.degree(best.u) + g.degree(best.v)


def degeneracy_order(g: Graph) -> tuple[list[int], int]:
    """Repeated minimum-degree elimination order and the degeneracy.

    Greedy coloring along the reverse order succeeds whenever every list has
    size >= degeneracy+1: each vertex sees at most `degeneracy` colored
    neighbors when its turn comes, and each neighbor forbids one value.
    """
    deg = {v: g.degree(v) for v in g.vertices}
    alive = set(g.vertices)
    order = []
    degeneracy = 0
    for _ in range(g.n):
        v = min(alive, key=lambda x: (deg[x], x))
        degeneracy = max(degeneracy, deg[v])
        order.append(v)
        alive.remove(v)
        for w, _ in g.incidences(v):
            if w in alive:
                deg[w] -= 1
    return order, degeneracy


def chromatic_index(g: Graph, cap: int = 20) -> int:
    """Exact chromatic index by branch-and-bound proper edge coloring."""
    if g.m > cap:
        raise GraphError(f"instance too large for exact chromatic index (m={g.m} > {cap})")
    if g.m == 0:
        return 0
    lg = line_graph(g)
    lower = g.max_degree()
    for k in itertools.count(lower):
        if _vertex_colorable(lg, k):
            if g.is_simple():
                assert lower <= k <= lower + 1, "chromatic index out of the expected range"
            return k
    raise AssertionError("unreachable")


def _vertex_colorable(g: Graph, k: int) -> bool:
    if k <= 0:
        return g.n == 0
    vs = list(g.vertices)
    nbrs = {v: g.neighbors(v) for v in vs}
    color: dict[int, int] = {}

    def rec(used_colors: int) -> bool:
        if len(color) == len(vs):
            return True
        # most-constrained vertex first
        best, best_free = None, None
        for v in vs:
            if v in color:
                continue
            taken = {color[w] for w in nbrs[v] if w in color}
            free = k - len(taken)
            if free <= 0:
                return False
            if best_free is None or free < best_free:
                best, best_free, best_taken = v, free, taken
        v, taken = best, best_taken
        # symmetry cap: allow at most one brand-new color
        for c in range(min(used_colors + 1, k)):
            if c not in taken:
                color[v] = c
                if rec(max(used_colors, c + 1)):
                    return True
                del color[v]
        return False

    return rec(0)

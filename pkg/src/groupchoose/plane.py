"""Plane graphs as rotation systems: faces, boundary multiplicities,
outerplanarity, chord classification of cycles, and triangle clusters.

A rotation system lists the clockwise neighbor order at each vertex.
Faces are the orbits of the next-dart permutation: the successor of dart
(u, v) is (v, w) where w follows u in the rotation at v.  Validity is the
per-component genus check V - E + F = 2; there is no geometric drawing
and no distinguished outer face.  Instances are immutable and face lists
are computed once.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .graphs import Graph, GraphError, has_minor, simple_cycles_up_to


class PlanarityError(ValueError):
    pass


class RotationParseError(ValueError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass(frozen=True)
class Face:
    """One face: its boundary darts in traversal order, anchored at the
    smallest dart so equal orbits compare equal.  Edgeless components
    contribute a degenerate face anchored at the isolated vertex."""

    darts: tuple[tuple[int, int], ...]
    anchor: Optional[int] = None

    @property
    def degree(self) -> int:
        return len(self.darts)

    def boundary(self) -> tuple[int, ...]:
        """Vertices in walk order (tails of the darts)."""
        return tuple(u for u, _ in self.darts)

    def vertex_set(self) -> frozenset[int]:
        if self.anchor is not None:
            return frozenset([self.anchor])
        return frozenset(u for u, _ in self.darts)

    def edge_set(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(d) for d in self.darts)

    def passes_through(self, v: int) -> int:
        return sum(1 for u, _ in self.darts if u == v)

    def __repr__(self) -> str:
        if self.anchor is not None:
            return f"Face(isolated {self.anchor})"
        return f"Face({'-'.join(str(u) for u, _ in self.darts)})"


def _anchored(darts: list[tuple[int, int]]) -> Face:
    k = darts.index(min(darts))
    return Face(tuple(darts[k:] + darts[:k]))


def _trace_faces(rotation: dict[int, tuple[int, ...]]) -> list[Face]:
    """Orbits of the next-dart permutation over all darts of the rotation."""
    succ_pos = {v: {u: i for i, u in enumerate(nbrs)} for v, nbrs in rotation.items()}
    darts = [(u, v) for u, nbrs in rotation.items() for v in nbrs]
    seen: set[tuple[int, int]] = set()
    faces = []
    for start in sorted(darts):
        if start in seen:
            continue
        orbit = []
        d = start
        while d not in seen:
            seen.add(d)
            orbit.append(d)
            u, v = d
            nbrs = rotation[v]
            w = nbrs[(succ_pos[v][u] + 1) % len(nbrs)]
            d = (v, w)
        if d != start:
            raise PlanarityError("rotation system darts do not close into orbits")
        faces.append(_anchored(orbit))
    return faces


class PlaneGraph:
    """A simple graph together with a clockwise rotation system."""

    def __init__(self, graph: Graph, rotation: dict[int, Iterable[int]]):
        if not graph.is_simple():
            raise PlanarityError("plane graphs require simple underlying graphs")
        rot = {v: tuple(rotation.get(v, ())) for v in graph.vertices}
        if set(rotation) - set(graph.vertices):
            raise PlanarityError("rotation mentions unknown vertices")
        for v in graph.vertices:
            expected = sorted(graph.neighbors(v))
            if sorted(rot[v]) != expected:
                raise PlanarityError(
                    f"rotation at {v} must list exactly its neighbors {expected}, got {list(rot[v])}"
                )
        self.graph = graph
        self.rotation = rot
        self._validate_euler()

    def _validate_euler(self) -> None:
        for comp in self.graph.components():
            sub_rot = {v: self.rotation[v] for v in comp}
            nedges = sum(len(nbrs) for nbrs in sub_rot.values()) // 2
            if nedges == 0:
                continue  # isolated vertex: one degenerate face, V-E+F = 2
            nfaces = len(_trace_faces(sub_rot))
            if len(comp) - nedges + nfaces != 2:
                raise PlanarityError(
                    f"not a planar embedding: component has V={len(comp)} E={nedges} F={nfaces}"
                )

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        traced = _trace_faces({v: n for v, n in self.rotation.items() if n})
        isolated = [Face((), anchor=v) for v in self.graph.vertices if self.graph.degree(v) == 0]
        return tuple(traced + isolated)

    def faces_of_degree(self, k: int) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if f.degree == k)

    def faces_at(self, v: int) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if f.passes_through(v) or f.anchor == v)

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.graph.n}, m={self.graph.m}, f={len(self.faces)})"


def faces(pg: PlaneGraph) -> tuple[Face, ...]:
    return pg.faces


def m_v(pg: PlaneGraph, v: int, face: Face) -> int:
    """Number of times the clockwise boundary walk of the face passes
    through v; 0 when v is not on the face."""
    return face.passes_through(v)


# ---------------------------------------------------------------------------
# rotation-system text format


def parse_rotation_system(text: str) -> PlaneGraph:
    """Parse lines of the form `v: u1 u2 ... uk` (clockwise order at v).

    `#` starts a comment; blank lines are skipped; every vertex that
    appears must have its own line and adjacency must be symmetric.
    """
    rotation: dict[int, tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise RotationParseError("expected `v: u1 u2 ...`", lineno)
        head, _, tail = line.partition(":")
        try:
            v = int(head.strip())
            nbrs = tuple(int(tok) for tok in tail.split())
        except ValueError:
            raise RotationParseError("vertex ids must be integers", lineno) from None
        if v in rotation:
            raise RotationParseError(f"vertex {v} listed twice", lineno)
        if len(set(nbrs)) != len(nbrs):
            raise RotationParseError(f"repeated neighbor in rotation at {v}", lineno)
        if v in nbrs:
            raise RotationParseError(f"loop at vertex {v}", lineno)
        rotation[v] = nbrs
    if not rotation:
        raise RotationParseError("no rotation lines found", 1)
    for v, nbrs in rotation.items():
        for u in nbrs:
            if u not in rotation:
                raise RotationParseError(f"neighbor {u} of {v} has no rotation line", 1)
            if v not in rotation[u]:
                raise RotationParseError(f"edge {v}-{u} is not symmetric", 1)
    edges = sorted({(min(u, v), max(u, v)) for v, nbrs in rotation.items() for u in nbrs})
    g = Graph(rotation.keys(), edges)
    return PlaneGraph(g, rotation)


def format_rotation_system(pg: PlaneGraph) -> str:
    lines = [f"{v}: {' '.join(str(u) for u in pg.rotation[v])}" for v in pg.graph.vertices]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# embedding search for small graphs


EMBED_CAP = 10


def _component_order(g: Graph, comp: frozenset[int]):
    """BFS vertex order with tree edges, then the chord list, deterministic."""
    root = min(comp)
    seen = {root}
    order = [(root, None)]
    queue = [root]
    tree_pairs = set()
    while queue:
        v = queue.pop(0)
        for w, _ in g.incidences(v):
            if w not in seen:
                seen.add(w)
                order.append((w, v))
                tree_pairs.add(frozenset((v, w)))
                queue.append(w)
    chords = sorted(
        (min(e.u, e.v), max(e.u, e.v))
        for e in g.edges
        if e.u in comp and frozenset((e.u, e.v)) not in tree_pairs
    )
    return order, chords


def _euler_ok(rotation: dict[int, list[int]]) -> bool:
    nverts = len(rotation)
    nedges = sum(len(nbrs) for nbrs in rotation.values()) // 2
    nfaces = len(_trace_faces({v: tuple(n) for v, n in rotation.items()}))
    return nverts - nedges + nfaces == 2

def _has_all_vertex_face(rotation: dict[int, list[int]]) -> bool:
    allv = set(rotation)
    for f in _trace_faces({v: tuple(n) for v, n in rotation.items()}):
        if f.vertex_set() >= allv:
            return True
    return False


def _component_rotations(g: Graph, comp: frozenset[int], all_vertex_face: bool):
    """DFS over planar rotation systems of one connected component.

    Vertices enter along a BFS tree (every insertion position is planar),
    then chords are inserted one by one, keeping only position pairs that
    preserve V - E + F = 2.  With all_vertex_face, branches where no face
    contains every vertex are cut: chords only ever split faces, so a lost
    all-vertex face never comes back.
    """
    order, chords = _component_order(g, comp)
    rotation: dict[int, list[int]] = {}

    def place_vertices(i: int):
        if i == len(order):
            yield from place_chords(0)
            return
        v, parent = order[i]
        if parent is None:
            rotation[v] = []
            yield from place_vertices(i + 1)
            del rotation[v]
            return
        positions = range(max(1, len(rotation[parent])))
        for pos in positions:
            rotation[parent].insert(pos, v)
            rotation[v] = [parent]
            yield from place_vertices(i + 1)
            del rotation[v]
            rotation[parent].pop(pos)

    def place_chords(j: int):
        if all_vertex_face and not _has_all_vertex_face(rotation):
            return
        if j == len(chords):
            yield {v: tuple(nbrs) for v, nbrs in rotation.items()}
            return
        u, w = chords[j]
        for pu in range(len(rotation[u])):
            for pw in range(len(rotation[w])):
                rotation[u].insert(pu, w)
                rotation[w].insert(pw, u)
                if _euler_ok(rotation):
                    yield from place_chords(j + 1)
                rotation[w].pop(pw)
                rotation[u].pop(pu)

    yield from place_vertices(0)


def all_embeddings(g: Graph, cap: int = EMBED_CAP):
    """All rotation systems passing the genus check, as PlaneGraphs."""
    if g.n > cap:
        raise GraphError(
            f"embedding search capped at {cap} vertices; supply a rotation system instead"
        )
    if not g.is_simple():
        raise GraphError("embedding search requires a simple graph")
    comps = g.components()

    def rec(i: int, rotation: dict[int, tuple[int, ...]]):
        if i == len(comps):
            yield PlaneGraph(g, dict(rotation))
            return
        sub = g.induced(comps[i])
        for comp_rot in _component_rotations(sub, comps[i], False):
            rotation.update(comp_rot)
            yield from rec(i + 1, rotation)

    yield from rec(0, {})


def embed_small(g: Graph, cap: int = EMBED_CAP) -> Optional[PlaneGraph]:
    """Some planar embedding if one exists; None certifies non-planarity
    (the rotation search is exhaustive at this size)."""
    if 2 * g.n >= 6 and g.m > 3 * g.n - 6 and g.is_simple():
        return None  # edge count already rules out planarity
    for pg in all_embeddings(g, cap):
        return pg
    return None


def has_outerplanar_embedding(g: Graph, cap: int = EMBED_CAP) -> bool:
    """Embedding-based criterion: some embedding has a face whose boundary
    visits every vertex.  Exhaustive at this size; used to cross-validate
    the minor-based test."""
    if g.n > cap:
        raise GraphError(f"embedding search capped at {cap} vertices")
    if not g.is_connected():
        raise GraphError("outerplanar embedding criterion expects a connected graph")
    if g.n == 1:
        return True  # a lone vertex lies on its only face
    if g.m > 2 * g.n - 3:
        return False  # above the outerplanar edge bound
    comp = frozenset(g.vertices)
    for _ in _component_rotations(g, comp, True):
        return True
    return False


def is_outerplanar(g: Graph) -> bool:
    """Minor-based test: no K4 minor and no K_{2,3} minor."""
    return not has_minor(g, "K4") and not has_minor(g, "K23")


# ---------------------------------------------------------------------------
# cycles with/without chords, clusters


def find_k_net_or_hole(g: Graph, k: int) -> list[tuple[tuple[int, ...], str]]:
    """Every k-cycle labeled "hole" (chordless) or "net" (has a chord)."""
    if k > g.n:
        raise GraphError("cycle length exceeds vertex count")
    out = []
    for cyc in simple_cycles_up_to(g, k):
        if len(cyc) != k:
            continue
        chord = False
        on_cycle = set(cyc)
        consecutive = {frozenset((cyc[i], cyc[(i + 1) % k])) for i in range(k)}
        for a, b in itertools.combinations(sorted(on_cycle), 2):
            if g.has_edge(a, b) and frozenset((a, b)) not in consecutive:
                chord = True
                break
        out.append((cyc, "net" if chord else "hole"))
    return out


def clusters(pg: PlaneGraph) -> list[frozenset[Face]]:
    """Connected components of triangle-face adjacency (sharing an edge)."""
    tri = list(pg.faces_of_degree(3))
    by_edge: dict[frozenset[int], list[int]] = {}
    for i, f in enumerate(tri):
        for e in f.edge_set():
            by_edge.setdefault(e, []).append(i)
    parent = list(range(len(tri)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for members in by_edge.values():
        for a, b in zip(members, members[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    groups: dict[int, set[Face]] = {}
    for i, f in enumerate(tri):
        groups.setdefault(find(i), set()).add(f)
    return sorted((frozenset(s) for s in groups.values()), key=lambda s: sorted(f.darts for f in s))


# ---------------------------------------------------------------------------
# seeded random plane graphs (test substrate)


def random_plane_graph(seed: int, n: int, extra_edges: int = 0) -> PlaneGraph:
    """A random plane graph grown by pendant insertions then chord
    insertions that keep the genus check; deterministic in the seed."""
    rng = random.Random(seed)
    rotation: dict[int, list[int]] = {0: []}
    for v in range(1, n):
        u = rng.randrange(v)
        pos = rng.randrange(max(1, len(rotation[u])))
        rotation[u].insert(pos, v)
        rotation[v] = [u]
    added = 0
    attempts = 0
    while added < extra_edges and attempts < 50 * (extra_edges + 1):
        attempts += 1
        u, w = rng.sample(range(n), 2)
        if w in rotation[u]:
            continue
        pu = rng.randrange(len(rotation[u]))
        pw = rng.randrange(len(rotation[w]))
        rotation[u].insert(pu, w)
        rotation[w].insert(pw, u)
        if _euler_ok(rotation):
            added += 1
        else:
            rotation[w].pop(pw)
            rotation[u].pop(pu)
    edges = sorted({(min(u, v), max(u, v)) for u, nbrs in rotation.items() for v in nbrs})
    g = Graph(range(n), edges)
    return PlaneGraph(g, {v: tuple(nbrs) for v, nbrs in rotation.items()})

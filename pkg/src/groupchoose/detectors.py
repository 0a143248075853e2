"""Pattern detectors for the structural configurations used by the
verification harness: light edges, alternating cycles, and the named
triangle/face gadgets, all driven by one declarative ConfigSpec table.

Each catalog entry can be matched two ways: find_config (anchored search
with pruning) and find_config_bruteforce (plain enumeration over all
candidate tuples).  Both share the same canonicalization, so their match
sets are comparable; the brute-force path doubles as the validator for
single matches.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .graph6 import encode_graph6
from .graphs import Graph, simple_cycles_up_to
from .match import ConfigurationMatch
from .plane import Face, PlaneGraph, clusters, format_rotation_system, is_outerplanar


class DetectorError(ValueError):
    pass


Host = Union[Graph, PlaneGraph]


class _HostView:
    def __init__(self, host: Host):
        if isinstance(host, PlaneGraph):
            self.plane: Optional[PlaneGraph] = host
            self.g = host.graph
        else:
            self.plane = None
            self.g = host
        self.delta = self.g.max_degree()
        self.deg = {v: self.g.degree(v) for v in self.g.vertices}

    def simple_faces(self, degree: int) -> list[Face]:
        """Faces of the given degree whose boundary walks are injective."""
        assert self.plane is not None
        out = []
        for f in self.plane.faces_of_degree(degree):
            b = f.boundary()
            if len(set(b)) == len(b):
                out.append(f)
        return out


# ---------------------------------------------------------------------------
# declarative specs


@dataclass(frozen=True)
class DegreeBound:
    op: str  # "=", "<=", ">="
    value: Union[int, str]  # int or "DELTA"

    def resolve(self, view: _HostView) -> int:
        return view.delta if self.value == "DELTA" else int(self.value)

    def check(self, d: int, view: _HostView) -> bool:
        t = self.resolve(view)
        if self.op == "=":
            return d == t
        if self.op == "<=":
            return d <= t
        if self.op == ">=":
            return d >= t
        raise DetectorError(f"unknown degree op {self.op!r}")


@dataclass(frozen=True)
class ConfigSpec:
    """One named configuration.

    kind "edge": pattern vertices x, y joined by an edge, with optional
    degree-sum bound.  kind "cycle4": a 4-cycle u-v-w-x.  kinds
    "alt2cycle"/"even3delta": even cycles with alternating degree
    constraints (variable length).  kind "faces": face templates over
    named vertices with explicit extra edges, face non-adjacency, and
    distinctness rules; needs an embedding.
    """

    name: str
    kind: str
    doc: str
    degrees: tuple[tuple[str, DegreeBound], ...] = ()
    edge_sum: Optional[tuple] = None  # ("const", k) | ("max", k) meaning max(k, DELTA+2)
    face_templates: tuple[tuple[str, ...], ...] = ()
    extra_edges: tuple[tuple[str, str], ...] = ()
    nonadjacent_faces: tuple[tuple[int, int], ...] = ()
    all_distinct: bool = False
    predicate: Optional[str] = None

    @property
    def needs_plane(self) -> bool:
        return self.kind == "faces"

    def vertex_names(self) -> tuple[str, ...]:
        if self.kind == "edge":
            return ("x", "y")
        if self.kind == "cycle4":
            return ("u", "v", "w", "x")
        names: list[str] = []
        for t in self.face_templates:
            for a in t:
                if a not in names:
                    names.append(a)
        for a, b in self.extra_edges:
            for c in (a, b):
                if c not in names:
                    names.append(c)
        return tuple(names)

    def degree_map(self) -> dict[str, DegreeBound]:
        return dict(self.degrees)

    def edge_sum_bound(self, view: _HostView) -> Optional[int]:
        if self.edge_sum is None:
            return None
        tag, k = self.edge_sum
        return k if tag == "const" else max(k, view.delta + 2)

    def distinct_pairs(self) -> frozenset[frozenset[str]]:
        names = self.vertex_names()
        pairs: set[frozenset[str]] = set()
        if self.all_distinct or self.kind in ("edge", "cycle4"):
            pairs |= {frozenset(p) for p in itertools.combinations(names, 2)}
            return frozenset(pairs)
        for t in self.face_templates:
            pairs |= {frozenset(p) for p in itertools.combinations(t, 2)}
        for a, b in self.extra_edges:
            pairs.add(frozenset((a, b)))
        return frozenset(pairs)


# predicates take (view, vertex_map, host_faces) and must be invariant
# under the structural automorphisms of their pattern


def _pred_at_most_one_degree_over_4(view, vmap, faces_used) -> bool:
    heavy = sum(1 for name in ("v1", "v2", "v3", "v4") if view.deg[vmap[name]] > 4)
    return heavy <= 1


def _pred_face_degrees_3355(view, vmap, faces_used) -> bool:
    ds = sorted(view.deg[vmap[name]] for name in ("p", "q", "r", "s"))
    return ds == [3, 3, 5, 5]


def _pred_cluster_is_uxyz(view, vmap, faces_used) -> bool:
    """The triangle cluster containing the first matched face must have
    vertex set exactly {u, x, y, z}."""
    if view.plane is None:
        return False
    want = {vmap["u"], vmap["x"], vmap["y"], vmap["z"]}
    first = faces_used[0]
    for cluster in clusters(view.plane):
        if first in cluster:
            got = set()
            for f in cluster:
                got |= set(f.vertex_set())
            return got == want
    return False


_PREDICATES: dict[str, Callable] = {
    "at_most_one_degree_over_4": _pred_at_most_one_degree_over_4,
    "face_degrees_3355": _pred_face_degrees_3355,
    "cluster_is_uxyz": _pred_cluster_is_uxyz,
}


def _eq(v: int) -> DegreeBound:
    return DegreeBound("=", v)


def _le(v) -> DegreeBound:
    return DegreeBound("<=", v)


def _ge(v) -> DegreeBound:
    return DegreeBound(">=", v)


def _edge_sum_spec(name: str, bound: tuple, doc: str, degrees=()) -> ConfigSpec:
    return ConfigSpec(name=name, kind="edge", doc=doc, degrees=degrees, edge_sum=bound)


def _alt4_spec(name: str, heavy, doc: str) -> ConfigSpec:
    return ConfigSpec(
        name=name,
        kind="cycle4",
        doc=doc,
        degrees=(("u", _eq(3)), ("w", _eq(3)), ("v", _eq(heavy)), ("x", _eq(heavy))),
    )


def catalog() -> dict[str, ConfigSpec]:
    """The named configuration table; immutable contents."""
    specs = [
        _edge_sum_spec("EDGE_SUM_13", ("const", 13), "edge whose endpoint degrees sum to at most 13"),
        _edge_sum_spec("EDGE_SUM_9", ("const", 9), "edge with degree sum at most 9"),
        _edge_sum_spec("EDGE_SUM_8", ("const", 8), "edge with degree sum at most 8"),
        _edge_sum_spec("EDGE_SUM_7", ("const", 7), "edge with degree sum at most 7"),
        _edge_sum_spec(
            "EDGE_SUM_MAX8_DELTA2", ("max", 8), "edge with degree sum at most max(8, maxdeg+2)"
        ),
        _edge_sum_spec(
            "EDGE_SUM_MAX9_DELTA2", ("max", 9), "edge with degree sum at most max(9, maxdeg+2)"
        ),
        _edge_sum_spec(
            "EDGE_SUM_DELTA2", ("max", 0), "edge with degree sum at most maxdeg+2"
        ),
        _edge_sum_spec(
            "EDGE_MIN2_SUM5",
            ("const", 5),
            "edge with one endpoint of degree at most 2 and degree sum at most 5",
            degrees=(("x", _le(2)),),
        ),
        ConfigSpec(
            name="EDGE_3_5",
            kind="edge",
            doc="edge joining a 3-vertex to a vertex of degree at most 5",
            degrees=(("x", _eq(3)), ("y", _le(5))),
        ),
        ConfigSpec(
            name="OUTER1",
            kind="edge",
            doc="edge at a vertex of degree 1",
            degrees=(("x", _eq(1)),),
        ),
        ConfigSpec(
            name="OUTER2",
            kind="edge",
            doc="edge joining two vertices of degree 2",
            degrees=(("x", _eq(2)), ("y", _eq(2))),
        ),
        _alt4_spec("ALT4CYCLE_5", 5, "4-cycle alternating degrees 3 and 5"),
        _alt4_spec("ALT4CYCLE_6", 6, "4-cycle alternating degrees 3 and 6"),
        _alt4_spec("ALT4CYCLE_DELTA", "DELTA", "4-cycle alternating degrees 3 and maxdeg"),
        ConfigSpec(
            name="ALT2CYCLE",
            kind="alt2cycle",
            doc="even cycle whose alternate vertices all have degree 2",
        ),
        ConfigSpec(
            name="EVEN_3DELTA_CYCLE",
            kind="even3delta",
            doc="even cycle alternating degree 3 with degree maxdeg",
        ),
        ConfigSpec(
            name="FACE4_3355",
            kind="faces",
            doc="4-face whose boundary degrees are 3, 3, 5, 5 in some order",
            face_templates=(("p", "q", "r", "s"),),
            predicate="face_degrees_3355",
        ),
        ConfigSpec(
            name="G1",
            kind="faces",
            doc=(
                "4-vertex on two non-adjacent triangular faces whose other "
                "four vertices have degree at least 4, at most one exceeding 4"
            ),
            face_templates=(("v", "v1", "v2"), ("v", "v3", "v4")),
            degrees=(
                ("v", _eq(4)),
                ("v1", _ge(4)),
                ("v2", _ge(4)),
                ("v3", _ge(4)),
                ("v4", _ge(4)),
            ),
            nonadjacent_faces=((0, 1),),
            predicate="at_most_one_degree_over_4",
        ),
        ConfigSpec(
            name="G2",
            kind="faces",
            doc="6-vertex on four triangular faces in two adjacent pairs, "
            "with outer degrees 3,6,4 and 6,3,6",
            face_templates=(
                ("x", "x1", "x2"),
                ("x", "x2", "x3"),
                ("x", "x4", "x5"),
                ("x", "x5", "x6"),
            ),
            degrees=(
                ("x", _eq(6)),
                ("x1", _eq(3)),
                ("x2", _eq(6)),
                ("x3", _eq(4)),
                ("x4", _eq(6)),
                ("x5", _eq(3)),
                ("x6", _eq(6)),
            ),
        ),
        ConfigSpec(
            name="G3",
            kind="faces",
            doc="triangle cluster on vertices u,x,y,z (u of degree 3, the "
            "rest of degree 6) with prescribed outside triangular faces at x and y",
            face_templates=(
                ("u", "x", "y"),
                ("u", "x", "z"),
                ("y", "u", "z"),
                ("x", "x1", "x2"),
                ("y", "y1", "y2"),
                ("y", "y2", "y3"),
            ),
            degrees=(
                ("u", _eq(3)),
                ("x", _eq(6)),
                ("y", _eq(6)),
                ("z", _eq(6)),
                ("x1", _eq(3)),
                ("x2", _eq(6)),
                ("y1", _eq(6)),
                ("y2", _eq(3)),
                ("y3", _eq(6)),
            ),
            predicate="cluster_is_uxyz",
        ),
        ConfigSpec(
            name="G4",
            kind="faces",
            doc="5-vertex on three triangular faces each with degrees 3,5,5",
            face_templates=(("v", "a1", "b1"), ("v", "a2", "b2"), ("v", "a3", "b3")),
            degrees=(
                ("v", _eq(5)),
                ("a1", _eq(3)),
                ("b1", _eq(5)),
                ("a2", _eq(3)),
                ("b2", _eq(5)),
                ("a3", _eq(3)),
                ("b3", _eq(5)),
            ),
        ),
        ConfigSpec(
            name="G5",
            kind="faces",
            doc="4-vertex adjacent to three 4-vertices and on a triangular "
            "face with two of them",
            face_templates=(("u", "x", "y"),),
            extra_edges=(("u", "z"),),
            degrees=(("u", _eq(4)), ("x", _eq(4)), ("y", _eq(4)), ("z", _eq(4))),
            all_distinct=True,
        ),
        ConfigSpec(
            name="G6",
            kind="faces",
            doc="6-vertex on two triangular faces with degrees 3,6,6 and one "
            "with degrees 4,5,6",
            face_templates=(("v", "a1", "b1"), ("v", "a2", "b2"), ("v", "c", "d")),
            degrees=(
                ("v", _eq(6)),
                ("a1", _eq(3)),
                ("b1", _eq(6)),
                ("a2", _eq(3)),
                ("b2", _eq(6)),
                ("c", _eq(4)),
                ("d", _eq(5)),
            ),
        ),
        ConfigSpec(
            name="G7",
            kind="faces",
            doc="4-vertex on two triangular faces each carrying a 2-vertex, "
            "all five vertices distinct",
            face_templates=(("x", "u1", "v1"), ("x", "u2", "v2")),
            degrees=(("x", _eq(4)), ("u1", _eq(2)), ("u2", _eq(2))),
            all_distinct=True,
        ),
        ConfigSpec(
            name="V4_TWO_3FACES_DEG2",
            kind="faces",
            doc="4-vertex on two triangular faces whose far vertices have degree 2",
            face_templates=(("v", "v1", "v2"), ("v", "v3", "v4")),
            degrees=(("v", _eq(4)), ("v1", _eq(2)), ("v4", _eq(2))),
        ),
        ConfigSpec(
            name="OUTER3",
            kind="faces",
            doc="triangular face with a 2-vertex and a 3-vertex",
            face_templates=(("u", "x", "y"),),
            degrees=(("u", _eq(2)), ("x", _eq(3))),
        ),
    ]
    return {s.name: s for s in specs}


CATALOG = catalog()


# ---------------------------------------------------------------------------
# pattern automorphisms and canonical matches


def _cyclic_variants(t: tuple[str, ...]) -> set[tuple[str, ...]]:
    out = set()
    k = len(t)
    for rot in range(k):
        r = t[rot:] + t[:rot]
        out.add(r)
        out.add(tuple(reversed(r)))
    return out


_AUTO_CACHE: dict[str, list] = {}


def _pattern_automorphisms(spec: ConfigSpec) -> list[tuple[dict[str, str], Optional[tuple[int, ...]]]]:
    """Name permutations preserving the declared structure, with the induced
    face-template permutation (None for non-face kinds)."""
    cached = _AUTO_CACHE.get(spec.name)
    if cached is not None:
        return cached
    names = spec.vertex_names()
    degmap = spec.degree_map()
    template_classes = [_cyclic_variants(t) for t in spec.face_templates]
    dpairs = spec.distinct_pairs()
    edges = {frozenset(e) for e in spec.extra_edges}

    if spec.kind == "edge":
        autos = [({"x": "x", "y": "y"}, None)]
        if degmap.get("x") == degmap.get("y"):
            autos.append(({"x": "y", "y": "x"}, None))
        _AUTO_CACHE[spec.name] = autos
        return autos
    if spec.kind == "cycle4":
        autos = []
        seq = ("u", "v", "w", "x")
        for variant in sorted(_cyclic_variants(seq)):
            perm = dict(zip(seq, variant))
            if all(degmap.get(a) == degmap.get(perm[a]) for a in seq):
                autos.append((perm, None))
        _AUTO_CACHE[spec.name] = autos
        return autos
    if spec.kind != "faces":
        autos = [({n: n for n in names}, None)]
        _AUTO_CACHE[spec.name] = autos
        return autos

    # group names by degree-constraint signature to bound the permutations
    def sig(n):
        b = degmap.get(n)
        return (b.op, b.value) if b else None

    buckets: dict = {}
    for n in names:
        buckets.setdefault(sig(n), []).append(n)
    autos = []
    group_perms = [itertools.permutations(b) for b in buckets.values()]
    for combo in itertools.product(*group_perms):
        perm = {}
        for orig_bucket, new_bucket in zip(buckets.values(), combo):
            perm.update(dict(zip(orig_bucket, new_bucket)))
        mapped = [tuple(perm[a] for a in t) for t in spec.face_templates]
        tperm = []
        ok = True
        for mt in mapped:
            hit = None
            for j, cls in enumerate(template_classes):
                if mt in cls and j not in tperm:
                    hit = j
                    break
            if hit is None:
                ok = False
                break
            tperm.append(hit)
        if not ok:
            continue
        if {frozenset((perm[a], perm[b])) for a, b in spec.extra_edges} != edges:
            continue
        if {frozenset(perm[x] for x in p) for p in dpairs} != set(dpairs):
            continue
        autos.append((perm, tuple(tperm)))
    _AUTO_CACHE[spec.name] = autos
    return autos


def _canonicalize(spec: ConfigSpec, vmap: dict[str, int], faces_used: tuple):
    """Rewrite a raw match to the least representative of its orbit under
    the pattern automorphisms; returns (key, canonical vmap, canonical
    faces).  Both matchers report these representatives, so match sets
    compare directly."""
    names = spec.vertex_names()
    best_key = None
    best_vmap = None
    best_faces = None
    for perm, tperm in _pattern_automorphisms(spec):
        image = tuple(vmap[perm[n]] for n in names)
        faces2 = (
            tuple(faces_used[tperm[j]] for j in range(len(faces_used)))
            if tperm is not None
            else faces_used
        )
        key = (image, tuple(f.darts for f in faces2))
        if best_key is None or key < best_key:
            best_key = key
            best_vmap = {n: vmap[perm[n]] for n in names}
            best_faces = faces2
    return best_key, best_vmap, best_faces


def _match_from(spec: ConfigSpec, vmap: dict[str, int], faces_used: tuple) -> ConfigurationMatch:
    fmap = {f"face{i}": f.boundary() for i, f in enumerate(faces_used)}
    return ConfigurationMatch(config=spec.name, vertex_map=dict(vmap), face_map=fmap)


# ---------------------------------------------------------------------------
# constraint checking shared by both matchers


def _check_full(spec: ConfigSpec, view: _HostView, vmap: dict[str, int], faces_used: tuple) -> bool:
    degmap = spec.degree_map()
    for name, bound in degmap.items():
        if not bound.check(view.deg[vmap[name]], view):
            return False
    for pair in spec.distinct_pairs():
        a, b = tuple(pair)
        if vmap[a] == vmap[b]:
            return False
    if spec.kind == "edge":
        if not view.g.has_edge(vmap["x"], vmap["y"]):
            return False
        bound = spec.edge_sum_bound(view)
        if bound is not None and view.deg[vmap["x"]] + view.deg[vmap["y"]] > bound:
            return False
        return True
    if spec.kind == "cycle4":
        seq = [vmap[n] for n in ("u", "v", "w", "x")]
        return all(view.g.has_edge(seq[i], seq[(i + 1) % 4]) for i in range(4))
    # faces kind
    for a, b in spec.extra_edges:
        if not view.g.has_edge(vmap[a], vmap[b]):
            return False
    for i, t in enumerate(spec.face_templates):
        f = faces_used[i]
        if f.degree != len(t):
            return False
        walk = f.boundary()
        aligned = False
        for variant in _cyclic_variants(tuple(walk)):
            if tuple(vmap[a] for a in t) == variant:
                aligned = True
                break
        if not aligned:
            return False
    if len(set(faces_used)) != len(faces_used):
        return False
    for i, j in spec.nonadjacent_faces:
        if faces_used[i].edge_set() & faces_used[j].edge_set():
            return False
    if spec.predicate is not None:
        if not _PREDICATES[spec.predicate](view, vmap, faces_used):
            return False
    return True


# ---------------------------------------------------------------------------
# matchers


def _matches_edge(view: _HostView, spec: ConfigSpec):
    for e in view.g.edges:
        for a, b in ((e.u, e.v), (e.v, e.u)):
            vmap = {"x": a, "y": b}
            if _check_full(spec, view, vmap, ()):
                yield vmap, ()


def _matches_cycle4(view: _HostView, spec: ConfigSpec):
    names = ("u", "v", "w", "x")
    for cyc in simple_cycles_up_to(view.g, 4):
        if len(cyc) != 4:
            continue
        for variant in _cyclic_variants(cyc):
            vmap = dict(zip(names, variant))
            if _check_full(spec, view, vmap, ()):
                yield vmap, ()


def _even_cycle_matches(view: _HostView, spec: ConfigSpec, odd_deg: int, even_deg):
    """Even cycles where positions 0,2,... have degree odd_deg and, when
    even_deg is not None, positions 1,3,... have degree even_deg."""
    for cyc in simple_cycles_up_to(view.g, view.g.n):
        k = len(cyc)
        if k % 2:
            continue
        for offset in (0, 1):
            rotated = cyc[offset:] + cyc[:offset]
            if any(view.deg[rotated[i]] != odd_deg for i in range(0, k, 2)):
                continue
            if even_deg is not None and any(
                view.deg[rotated[i]] != even_deg for i in range(1, k, 2)
            ):
                continue
            yield {f"c{i}": v for i, v in enumerate(rotated)}, ()


def _canonical_even_cycle(vmap: dict[str, int]) -> tuple:
    """Least vertex sequence over parity-preserving rotations and the
    reflections that fix the class of position 0."""
    seq = [vmap[f"c{i}"] for i in range(len(vmap))]
    k = len(seq)
    best = None
    for rot in range(0, k, 2):
        r = seq[rot:] + seq[:rot]
        for cand in (tuple(r), tuple([r[0]] + r[:0:-1])):
            if best is None or cand < best:
                best = cand
    return best


def _matches_faces(view: _HostView, spec: ConfigSpec):
    candidates_by_len: dict[int, list[Face]] = {}
    for t in spec.face_templates:
        k = len(t)
        if k not in candidates_by_len:
            candidates_by_len[k] = view.simple_faces(k)
    degmap = spec.degree_map()
    dpairs = spec.distinct_pairs()

    def compatible(name: str, vertex: int, vmap: dict[str, int]) -> bool:
        if name in vmap:
            return vmap[name] == vertex
        bound = degmap.get(name)
        if bound is not None and not bound.check(view.deg[vertex], view):
            return False
        for pair in dpairs:
            if name in pair:
                other = next(iter(pair - {name}))
                if other in vmap and vmap[other] == vertex:
                    return False
        return True

    results = []
    all_names = spec.vertex_names()

    def assign_leftovers(pending: list[str], vmap: dict[str, int], used: tuple):
        if not pending:
            if _check_full(spec, view, vmap, used):
                results.append((dict(vmap), used))
            return
        name = pending[0]
        # anchor candidates through a required edge to an assigned name
        anchors = [
            vmap[b if a == name else a]
            for a, b in spec.extra_edges
            if (a == name and b in vmap) or (b == name and a in vmap)
        ]
        candidates = view.g.neighbors(anchors[0]) if anchors else view.g.vertices
        for vertex in candidates:
            if compatible(name, vertex, vmap):
                vmap[name] = vertex
                assign_leftovers(pending[1:], vmap, used)
                del vmap[name]

    def rec(i: int, vmap: dict[str, int], used: tuple):
        if i == len(spec.face_templates):
            leftovers = [n for n in all_names if n not in vmap]
            assign_leftovers(leftovers, vmap, used)
            return
        t = spec.face_templates[i]
        for f in candidates_by_len[len(t)]:
            if f in used:
                continue
            walk = f.boundary()
            for variant in _cyclic_variants(tuple(walk)):
                trial = dict(vmap)
                ok = True
                for name, vertex in zip(t, variant):
                    if not compatible(name, vertex, trial):
                        ok = False
                        break
                    trial[name] = vertex
                if ok:
                    rec(i + 1, trial, used + (f,))

    rec(0, {}, ())
    return results


def find_config(host: Host, spec_or_name) -> list[ConfigurationMatch]:
    """All occurrences of the configuration in the host, deduplicated up to
    the automorphisms of the pattern."""
    spec = CATALOG[spec_or_name] if isinstance(spec_or_name, str) else spec_or_name
    view = _HostView(host)
    if spec.needs_plane and view.plane is None:
        raise DetectorError(f"configuration {spec.name} needs a plane graph host")
    if spec.kind == "edge":
        raw = _matches_edge(view, spec)
    elif spec.kind == "cycle4":
        raw = _matches_cycle4(view, spec)
    elif spec.kind == "alt2cycle":
        raw = _even_cycle_matches(view, spec, 2, None)
    elif spec.kind == "even3delta":
        raw = _even_cycle_matches(view, spec, 3, view.delta)
    elif spec.kind == "faces":
        raw = _matches_faces(view, spec)
    else:
        raise DetectorError(f"unknown config kind {spec.kind!r}")
    return _dedupe(spec, raw)


def _dedupe(spec: ConfigSpec, raw) -> list[ConfigurationMatch]:
    seen = {}
    for vmap, faces_used in raw:
        if spec.kind in ("alt2cycle", "even3delta"):
            canon = _canonical_even_cycle(vmap)
            key = canon
            cvmap = {f"c{i}": v for i, v in enumerate(canon)}
            cfaces = ()
        else:
            key, cvmap, cfaces = _canonicalize(spec, vmap, faces_used)
        if key not in seen:
            seen[key] = _match_from(spec, cvmap, cfaces)
    return [seen[k] for k in sorted(seen)]


def find_config_bruteforce(host: Host, spec_or_name) -> list[ConfigurationMatch]:
    """Plain enumeration oracle: every candidate assignment is generated
    and checked; no anchoring, no pruning beyond candidate degree filters
    on variable-length cycles."""
    spec = CATALOG[spec_or_name] if isinstance(spec_or_name, str) else spec_or_name
    view = _HostView(host)
    if spec.needs_plane and view.plane is None:
        raise DetectorError(f"configuration {spec.name} needs a plane graph host")
    verts = list(view.g.vertices)
    raw = []
    if spec.kind == "edge":
        for a, b in itertools.permutations(verts, 2):
            vmap = {"x": a, "y": b}
            if _check_full(spec, view, vmap, ()):
                raw.append((vmap, ()))
    elif spec.kind == "cycle4":
        for combo in itertools.permutations(verts, 4):
            vmap = dict(zip(("u", "v", "w", "x"), combo))
            if _check_full(spec, view, vmap, ()):
                raw.append((vmap, ()))
    elif spec.kind in ("alt2cycle", "even3delta"):
        odd = 2 if spec.kind == "alt2cycle" else 3
        even = None if spec.kind == "alt2cycle" else view.delta
        adj = {v: set(view.g.neighbors(v)) for v in verts}

        def extend(seq: list[int]):
            k = len(seq)
            if k >= 4 and k % 2 == 0 and seq[0] in adj[seq[-1]]:
                ok = all(view.deg[seq[i]] == odd for i in range(0, k, 2)) and (
                    even is None or all(view.deg[seq[i]] == even for i in range(1, k, 2))
                )
                if ok:
                    raw.append(({f"c{i}": v for i, v in enumerate(seq)}, ()))
            if k == len(verts):
                return
            last = seq[-1]
            for w in adj[last]:
                if w not in seq:
                    seq.append(w)
                    extend(seq)
                    seq.pop()

        for v in verts:
            extend([v])
    elif spec.kind == "faces":
        names = spec.vertex_names()
        degmap = spec.degree_map()

        def admissible(t, variant):
            for name, vertex in zip(t, variant):
                bound = degmap.get(name)
                if bound is not None and not bound.check(view.deg[vertex], view):
                    return False
            return True

        face_pools = [
            [
                (f, variant)
                for f in view.simple_faces(len(t))
                for variant in _cyclic_variants(tuple(f.boundary()))
                if admissible(t, variant)
            ]
            for t in spec.face_templates
        ]
        for combo in itertools.product(*face_pools):
            vmap: dict[str, int] = {}
            ok = True
            for t, (f, variant) in zip(spec.face_templates, combo):
                for name, vertex in zip(t, variant):
                    if name in vmap and vmap[name] != vertex:
                        ok = False
                        break
                    vmap[name] = vertex
                if not ok:
                    break
            if not ok:
                continue
            used = tuple(f for f, _ in combo)
            leftovers = [n for n in names if n not in vmap]
            for fill in itertools.product(verts, repeat=len(leftovers)):
                trial = dict(vmap)
                trial.update(dict(zip(leftovers, fill)))
                if _check_full(spec, view, trial, used):
                    raw.append((trial, used))
    else:
        raise DetectorError(f"unknown config kind {spec.kind!r}")
    return _dedupe(spec, raw)


def validate_match(host: Host, match: ConfigurationMatch) -> bool:
    """Re-check a reported match against its configuration's constraints."""
    spec = CATALOG[match.config]
    view = _HostView(host)
    if spec.kind in ("alt2cycle", "even3delta"):
        seq = [match.vertex_map[f"c{i}"] for i in range(len(match.vertex_map))]
        k = len(seq)
        if k < 4 or k % 2:
            return False
        if len(set(seq)) != k:
            return False
        if not all(view.g.has_edge(seq[i], seq[(i + 1) % k]) for i in range(k)):
            return False
        odd = 2 if spec.kind == "alt2cycle" else 3
        if any(view.deg[seq[i]] != odd for i in range(0, k, 2)):
            return False
        if spec.kind == "even3delta" and any(
            view.deg[seq[i]] != view.delta for i in range(1, k, 2)
        ):
            return False
        return True
    faces_used = ()
    if spec.kind == "faces":
        if view.plane is None:
            return False
        by_boundary = {}
        for f in view.plane.faces:
            by_boundary.setdefault(frozenset(f.darts), f)
        chosen = []
        for i in range(len(spec.face_templates)):
            walk = match.face_map.get(f"face{i}")
            if walk is None:
                return False
            k = len(walk)
            darts = frozenset((walk[j], walk[(j + 1) % k]) for j in range(k))
            f = by_boundary.get(darts)
            if f is None:
                return False
            chosen.append(f)
        faces_used = tuple(chosen)
    return _check_full(spec, view, dict(match.vertex_map), faces_used)


# ---------------------------------------------------------------------------
# unavoidability: lemma-shaped detector bundles


@dataclass(frozen=True)
class UnavoidabilityReport:
    lemma: str
    status: str  # "found" | "skipped" | "counterexample"
    config: Optional[str] = None
    match: Optional[ConfigurationMatch] = None
    reason: Optional[str] = None
    bundle: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"lemma": self.lemma, "status": self.status}
        if self.config:
            out["config"] = self.config
        if self.match:
            out["match"] = self.match.to_json()
        if self.reason:
            out["reason"] = self.reason
        if self.bundle:
            out["bundle"] = self.bundle
        return out


def _no_cycles_in(g: Graph, lo: int, hi: int) -> bool:
    from .graphs import cycle_spectrum

    top = min(hi, g.n)
    if top < lo:
        return True
    return not any(lo <= k <= top for k in cycle_spectrum(g, top))


def _no_k_nets(g: Graph, k: int) -> bool:
    from .plane import find_k_net_or_hole

    if k > g.n:
        return True
    return not any(label == "net" for _, label in find_k_net_or_hole(g, k))


def _no_adjacent_triangles(g: Graph) -> bool:
    for e in g.edges:
        common = set(g.neighbors(e.u)) & set(g.neighbors(e.v))
        if len(common) >= 2:
            return False
    return True


@dataclass(frozen=True)
class LemmaSpec:
    name: str
    doc: str
    configs: tuple[str, ...]
    hypothesis: Callable[[Graph], Optional[str]]
    delta5_extra: Optional[str] = None  # config admitted only when maxdeg == 5


def _lemmas() -> dict[str, LemmaSpec]:
    def min_deg(k):
        def check(g):
            return None if g.min_degree() >= k else f"minimum degree below {k}"

        return check

    def conj(*checks):
        def check(g):
            for c in checks:
                r = c(g)
                if r:
                    return r
            return None

        return check

    def edges_exist(g):
        return None if g.m >= 1 else "graph has no edges"

    def connected(g):
        return None if g.is_connected() else "graph is disconnected"

    def delta_exact(k):
        def check(g):
            return None if g.max_degree() == k else f"maximum degree is not {k}"

        return check

    def no_cycles(lo, hi):
        def check(g):
            return None if _no_cycles_in(g, lo, hi) else f"has a cycle of length {lo}..{hi}"

        return check

    def no_nets(*ks):
        def check(g):
            for k in ks:
                if not _no_k_nets(g, k):
                    return f"has a {k}-cycle with a chord"
            return None

        return check

    def no_5_or_6_cycles(g):
        if _no_cycles_in(g, 5, 5) or _no_cycles_in(g, 6, 6):
            return None
        return "has both 5-cycles and 6-cycles"

    def triangle_free_delta5(g):
        if not _no_cycles_in(g, 3, 3):
            return "has a triangle"
        if g.max_degree() < 5:
            return "maximum degree below 5"
        return None

    def no_adj_tri(g):
        return None if _no_adjacent_triangles(g) else "has adjacent triangles"

    def outerplanar(g):
        return None if is_outerplanar(g) else "graph is not outerplanar"

    specs = [
        LemmaSpec(
            "planar-min-degree-3",
            "plane graphs of minimum degree 3 carry an edge of degree sum at most 13",
            ("EDGE_SUM_13",),
            conj(edges_exist, min_deg(3)),
        ),
        LemmaSpec(
            "no-4-cycles",
            "connected, min degree 3, no 4-cycles",
            ("EDGE_SUM_7", "G1"),
            conj(edges_exist, connected, min_deg(3), no_cycles(4, 4)),
        ),
        LemmaSpec(
            "delta4-no-4-to-14-cycles",
            "max degree exactly 4, no cycles of length 4 through 14",
            ("EDGE_MIN2_SUM5", "V4_TWO_3FACES_DEG2"),
            conj(edges_exist, connected, delta_exact(4), no_cycles(4, 14)),
        ),
        LemmaSpec(
            "no-5-cycles",
            "min degree 3, no 5-cycles",
            ("EDGE_3_5",),
            conj(edges_exist, min_deg(3), no_cycles(5, 5)),
        ),
        LemmaSpec(
            "delta6-no-chorded-5-cycles",
            "max degree exactly 6, every 5-cycle chordless",
            ("EDGE_SUM_8", "ALT4CYCLE_6", "G2", "G3"),
            conj(edges_exist, delta_exact(6), no_nets(5)),
        ),
        LemmaSpec(
            "no-chorded-5-cycles",
            "min degree 3, every 5-cycle chordless",
            ("EDGE_SUM_9",),
            conj(edges_exist, min_deg(3), no_nets(5)),
        ),
        LemmaSpec(
            "delta5-no-chorded-5-6-cycles",
            "max degree exactly 5, 5- and 6-cycles chordless",
            ("EDGE_SUM_7", "ALT4CYCLE_5", "G4"),
            conj(edges_exist, delta_exact(5), no_nets(5, 6)),
        ),
        LemmaSpec(
            "delta5-no-chorded-4-5-cycles",
            "max degree exactly 5, 4- and 5-cycles chordless",
            ("EDGE_SUM_7", "ALT4CYCLE_5", "G5"),
            conj(edges_exist, delta_exact(5), no_nets(4, 5)),
        ),
        LemmaSpec(
            "no-5-or-6-cycles",
            "connected, min degree 2, and 5-cycles or 6-cycles absent",
            ("EDGE_SUM_9", "ALT2CYCLE"),
            conj(edges_exist, connected, min_deg(2), no_5_or_6_cycles),
        ),
        LemmaSpec(
            "induced-5-cycles-only",
            "every 5-cycle chordless",
            ("EDGE_SUM_MAX8_DELTA2", "EVEN_3DELTA_CYCLE"),
            conj(edges_exist, no_nets(5)),
        ),
        LemmaSpec(
            "triangle-free-delta5",
            "triangle-free with max degree at least 5",
            ("EDGE_SUM_DELTA2",),
            conj(edges_exist, triangle_free_delta5),
            delta5_extra="FACE4_3355",
        ),
        LemmaSpec(
            "no-adjacent-triangles",
            "no two triangles share an edge",
            ("EDGE_SUM_MAX8_DELTA2", "ALT4CYCLE_DELTA", "G6"),
            conj(edges_exist, no_adj_tri),
        ),
        LemmaSpec(
            "no-6-cycles",
            "min degree 3, no 6-cycles",
            ("EDGE_SUM_8",),
            conj(edges_exist, min_deg(3), no_cycles(6, 6)),
        ),
        LemmaSpec(
            "no-7-cycles",
            "no 7-cycles",
            ("EDGE_SUM_MAX9_DELTA2", "ALT4CYCLE_DELTA"),
            conj(edges_exist, no_cycles(7, 7)),
        ),
        LemmaSpec(
            "outerplanar",
            "outerplanar graphs",
            ("OUTER1", "OUTER2", "OUTER3", "G7"),
            conj(edges_exist, outerplanar),
        ),
    ]
    return {s.name: s for s in specs}


LEMMAS = _lemmas()


def verify_unavoidability(host: Host, lemma: str) -> UnavoidabilityReport:
    """Check that a host satisfying the lemma's hypotheses contains one of
    its configurations; a hypothesis-satisfying host with none is reported
    as a counterexample bundle, the most important possible output."""
    try:
        spec = LEMMAS[lemma]
    except KeyError:
        raise DetectorError(f"unknown lemma {lemma!r}; known: {sorted(LEMMAS)}") from None
    view = _HostView(host)
    reason = spec.hypothesis(view.g)
    if reason is not None:
        return UnavoidabilityReport(lemma, "skipped", reason=reason)
    config_names = list(spec.configs)
    if spec.delta5_extra is not None and view.delta == 5:
        config_names.append(spec.delta5_extra)
    for name in config_names:
        cfg = CATALOG[name]
        if cfg.needs_plane and view.plane is None:
            raise DetectorError(
                f"lemma {lemma} includes plane configuration {name}; supply an embedding"
            )
        matches = find_config(host, cfg)
        if matches:
            return UnavoidabilityReport(lemma, "found", config=name, match=matches[0])
    bundle = {"graph6": encode_graph6(view.g)}
    if view.plane is not None:
        bundle["rotation"] = format_rotation_system(view.plane)
    return UnavoidabilityReport(
        lemma,
        "counterexample",
        reason="hypotheses hold but no listed configuration is present",
        bundle=bundle,
    )

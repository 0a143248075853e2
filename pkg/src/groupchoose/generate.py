"""Canonical labeling and isomorphism-free generation of small graphs.

The canonical form is computed by iterated degree refinement plus
individualization with prefix pruning; no external tools.  Generation of
connected graphs on n vertices extends each connected (n-1)-vertex graph by
one vertex with every nonempty neighborhood, then deduplicates by canonical
form.  Every connected graph has a non-cut vertex, so every connected
n-vertex graph is reached this way.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .graphs import Graph, GraphError

GENERATION_CAP = 8


def _refine(adj_sets: list[set[int]], partition: list[list[int]]) -> list[list[int]]:
    """Equitable refinement: split cells by neighbor counts into every cell."""
    partition = [list(c) for c in partition]
    changed = True
    while changed:
        changed = False
        for target in list(partition):
            tset = set(target)
            new_partition = []
            for cell in partition:
                if len(cell) == 1:
                    new_partition.append(cell)
                    continue
                buckets: dict[int, list[int]] = {}
                for v in cell:
                    buckets.setdefault(len(adj_sets[v] & tset), []).append(v)
                if len(buckets) > 1:
                    changed = True
                for key in sorted(buckets):
                    new_partition.append(buckets[key])
            partition = new_partition
            if changed:
                break
    return partition


def _certificate_bits(adj_sets, ordering) -> tuple:
    """Lower-triangle adjacency rows restricted to the ordered prefix."""
    pos = {v: i for i, v in enumerate(ordering)}
    rows = []
    for i, v in enumerate(ordering):
        row = 0
        for w in adj_sets[v]:
            j = pos.get(w)
            if j is not None and j < i:
                row |= 1 << j
        rows.append(row)
    return tuple(rows)


def canonical_form(g: Graph) -> tuple:
    """Isomorphism-invariant certificate: equal iff the graphs are isomorphic."""
    if not g.is_simple():
        raise GraphError("canonical form implemented for simple graphs")
    verts = list(g.vertices)
    n = len(verts)
    index = {v: i for i, v in enumerate(verts)}
    adj_sets = [set() for _ in range(n)]
    for e in g.edges:
        adj_sets[index[e.u]].add(index[e.v])
        adj_sets[index[e.v]].add(index[e.u])

    m = g.m
    if m == 0 or m == n * (n - 1) // 2:
        # edgeless and complete graphs are permutation-invariant
        return (n, m, _certificate_bits(adj_sets, list(range(n))))

    degrees = [len(s) for s in adj_sets]
    initial: dict[int, list[int]] = {}
    for v in range(n):
        initial.setdefault(degrees[v], []).append(v)
    start = _refine(adj_sets, [initial[d] for d in sorted(initial)])

    best: list[tuple | None] = [None]

    def search(partition: list[list[int]], prefix: list[int], prefix_rows: tuple):
        # prefix_rows are certificate rows for already-fixed singleton prefix
        if best[0] is not None:
            cutlen = min(len(prefix_rows), len(best[0][2]))
            if prefix_rows[:cutlen] > best[0][2][:cutlen]:
                return
        k = len(prefix)
        while k < len(partition) and len(partition[k]) == 1:
            k += 1
        # extend prefix over newly singleton cells
        ordering = [c[0] for c in partition[:k]]
        rows = _certificate_bits(adj_sets, ordering)
        if best[0] is not None:
            cutlen = min(len(rows), len(best[0][2]))
            if rows[:cutlen] > best[0][2][:cutlen]:
                return
        if k == len(partition):
            cert = (n, m, rows)
            if best[0] is None or cert < best[0]:
                best[0] = cert
            return
        cell = partition[k]
        for v in sorted(cell):
            new_partition = partition[:k] + [[v], [w for w in cell if w != v]] + partition[k + 1 :]
            search(_refine(adj_sets, new_partition), ordering + [v], rows)

    search(start, [], ())
    assert best[0] is not None
    return best[0]


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    return canonical_form(g) == canonical_form(h)


@lru_cache(maxsize=None)
def _connected_graphs(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph([0]),)
    result: dict[tuple, Graph] = {}
    for base in _connected_graphs(n - 1):
        new = n - 1
        old = list(base.vertices)
        for r in range(1, n):
            for nbrs in itertools.combinations(old, r):
                g = Graph(
                    range(n),
                    [e.endpoints for e in base.edges] + [(v, new) for v in nbrs],
                )
                result.setdefault(canonical_form(g), g)
    return tuple(result[key] for key in sorted(result))


def generate_connected_graphs(n: int, cap: int = GENERATION_CAP):
    """Every connected simple graph on n vertices, once per isomorphism class."""
    if n < 1:
        raise GraphError("need n >= 1")
    if n > cap:
        raise GraphError(f"generation capped at {cap} vertices")
    yield from _connected_graphs(n)


def connected_graphs_up_to(n: int, cap: int = GENERATION_CAP):
    for k in range(1, n + 1):
        yield from generate_connected_graphs(k, cap)

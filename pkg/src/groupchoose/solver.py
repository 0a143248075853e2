"""Exact decision core for list coloring over finite Abelian groups with
prescribed edge differences.

An instance is (graph, group A, lists L, shift f): a coloring c must pick
c(v) in L(v) with c(x) - c(y) != f(xy) across every edge, where f is read
on the canonical orientation (lower vertex id -> higher) and negates when
an edge is read backwards.

Two exact reductions organize the search over instance spaces; both are
translation ("gauge") arguments proved by the substitution c'(v) = c(v) -
t(v), a bijection between colorings of (L, f) and colorings of (L - t,
f - dt) with (dt)(xy) = t(x) - t(y):

  (i)  Shift normalization: choosing t along a spanning forest makes f
       vanish on forest edges, so quantifying over all f reduces to the
       |A|^cyclerank "twists" on the non-forest edges -- provided the list
       tuple is quantified over its full translation orbit as well.

  (ii) List translation: when both lists and shifts are fully quantified,
       lists may be translated per vertex, e.g. to contain the identity.

The two must not be combined naively: pairing forest-zero shifts with
identity-pinned lists at *every* vertex misses instances, because after
(i) the residual translation freedom is a single constant per component.
The searches below therefore pair forest-zero twists with the full list
space, walked either explicitly (one root list per component anchored at
the identity, which is the exact orbit transversal) or implicitly through
a blocker tensor that decides "some list tuple of the given sizes defeats
this twist" in one vectorized pass.

Refutations are theorems: every witness is re-validated by the
independent backtracking checker before being reported.  Verifications
are evidence up to the stated group-order bound.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .graphs import (
    Graph,
    GraphError,
    blocks_all_complete_or_cycle,
    degeneracy_order,
    line_graph,
)
from .groups import AbelianGroup, GroupElement, enumerate_abelian_groups

DEFAULT_BUDGET = 200_000
_TENSOR_COLORING_CAP = 1 << 21
_TENSOR_SUBSET_CAP = 1 << 18
_TENSOR_OPS_CAP = 1_500_000_000
_AL_COLORING_CAP = 200_000


class SolverError(ValueError):
    pass


class SolverInternalError(AssertionError):
    """A produced witness failed re-validation; indicates an engine bug."""


class BudgetExceededError(RuntimeError):
    def __init__(self, message: str, progress: dict):
        super().__init__(message)
        self.progress = progress


# ---------------------------------------------------------------------------
# assignments


class ListAssignment:
    """Mapping vertex -> set of allowed group elements; domain = V(G)."""

    def __init__(self, g: Graph, group: AbelianGroup, lists: dict[int, Iterable[GroupElement]]):
        if set(lists) != set(g.vertices):
            raise SolverError("list assignment domain must equal the vertex set")
        store = {}
        for v, els in lists.items():
            fs = frozenset(els)
            for el in fs:
                if el.group != group:
                    raise SolverError("list element from a different group")
            store[v] = fs
        self.graph = g
        self.group = group
        self._lists = store

    def of(self, v: int) -> frozenset[GroupElement]:
        return self._lists[v]

    def sizes(self) -> dict[int, int]:
        return {v: len(s) for v, s in self._lists.items()}

    def translated(self, t: dict[int, GroupElement]) -> "ListAssignment":
        return ListAssignment(
            self.graph,
            self.group,
            {v: frozenset(a - t[v] for a in s) for v, s in self._lists.items()},
        )

    @classmethod
    def uniform(cls, g: Graph, group: AbelianGroup, elements: Iterable[GroupElement]):
        els = tuple(elements)
        return cls(g, group, {v: els for v in g.vertices})

    @classmethod
    def from_indices(cls, g: Graph, group: AbelianGroup, idx: dict[int, Iterable[int]]):
        els = group.elements()
        return cls(g, group, {v: tuple(els[i] for i in s) for v, s in idx.items()})

    def to_json(self) -> dict:
        return {
            str(v): sorted([list(a.residues) for a in s])
            for v, s in sorted(self._lists.items())
        }


class ShiftAssignment:
    """Mapping edge id -> group element on the canonical orientation
    (lower vertex id -> higher); reading an edge backwards negates it."""

    def __init__(self, g: Graph, group: AbelianGroup, values: dict[int, GroupElement]):
        if set(values) != set(g.edge_ids()):
            raise SolverError("shift assignment domain must equal the edge set")
        for el in values.values():
            if el.group != group:
                raise SolverError("shift value from a different group")
        self.graph = g
        self.group = group
        self._values = dict(values)

    def value(self, eid: int) -> GroupElement:
        return self._values[eid]

    def oriented_value(self, eid: int, tail: int) -> GroupElement:
        e = self.graph.edge(eid)
        val = self._values[eid]
        return val if tail == e.u else -val

    @classmethod
    def from_oriented(cls, g: Graph, group: AbelianGroup, oriented: dict[int, tuple[int, GroupElement]]):
        """Build from explicitly oriented data {edge id: (tail vertex, value)}."""
        values = {}
        for eid, (tail, val) in oriented.items():
            e = g.edge(eid)
            values[eid] = val if tail == e.u else -val
        return cls(g, group, values)

    @classmethod
    def zero(cls, g: Graph, group: AbelianGroup):
        return cls(g, group, {eid: group.identity for eid in g.edge_ids()})

    @classmethod
    def from_indices(cls, g: Graph, group: AbelianGroup, idx: dict[int, int]):
        els = group.elements()
        return cls(g, group, {eid: els[i] for eid, i in idx.items()})

    def to_json(self) -> dict:
        return {str(eid): list(el.residues) for eid, el in sorted(self._values.items())}


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class RefutedWithWitness:
    group: AbelianGroup
    lists: ListAssignment
    shift: ShiftAssignment
    order: int
    revalidated: bool
    instances_checked: int
    mode: str
    kind: str = "refuted"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "group": str(self.group),
            "order": self.order,
            "lists": self.lists.to_json(),
            "shift": self.shift.to_json(),
            "revalidated": self.revalidated,
            "instances_checked": self.instances_checked,
            "mode": self.mode,
        }


@dataclass(frozen=True)
class VerifiedUpToBound:
    max_order_checked: int
    instances_checked: int
    mode: str
    kind: str = "verified-up-to-bound"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "max_order_checked": self.max_order_checked,
            "instances_checked": self.instances_checked,
            "mode": self.mode,
        }


@dataclass(frozen=True)
class HoldsByTheorem:
    rule: str
    kind: str = "holds-by-theorem"

    def to_json(self) -> dict:
        return {"kind": self.kind, "rule": self.rule}


@dataclass(frozen=True)
class NoRefutationFound:
    """Budgeted or sampled exploration ended without a refutation.  Weaker
    than VerifiedUpToBound: never claims exhaustiveness."""

    instances_checked: int
    mode: str
    max_order_attempted: int
    kind: str = "no-refutation-found"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "instances_checked": self.instances_checked,
            "mode": self.mode,
            "max_order_attempted": self.max_order_attempted,
        }


Verdict = RefutedWithWitness | VerifiedUpToBound | HoldsByTheorem | NoRefutationFound


# ---------------------------------------------------------------------------
# the independent checker: plain backtracking over one instance


def find_coloring(
    g: Graph,
    group: AbelianGroup,
    lists: ListAssignment,
    shift: ShiftAssignment,
) -> Optional[dict[int, GroupElement]]:
    """A coloring c with c(v) in L(v) and c(u) - c(v) != f(uv) on the
    canonical orientation of every edge, or None when none exists.

    Exhaustive backtracking with minimum-remaining-values vertex order and
    forward pruning; ties break on vertex id for reproducibility.
    """
    if lists.group != group or shift.group != group:
        raise SolverError("assignments use a different group than the search")
    verts = list(g.vertices)
    domain = {}
    for v in verts:
        mask = 0
        for el in lists.of(v):
            mask |= 1 << el.index
        domain[v] = mask

    sub = group.sub_index
    add = group.add_index
    # setting the canonical tail u to a forbids v = a - f; setting the head
    # v to b forbids u = b + f
    incident: dict[int, list[tuple[int, int, bool]]] = {v: [] for v in verts}
    for e in g.edges:
        fidx = shift.value(e.id).index
        incident[e.u].append((e.v, fidx, True))
        incident[e.v].append((e.u, fidx, False))

    assignment: dict[int, int] = {}

    def pick() -> Optional[int]:
        best, best_count = None, None
        for v in verts:
            if v in assignment:
                continue
            cnt = domain[v].bit_count()
            if best_count is None or cnt < best_count:
                best, best_count = v, cnt
        return best

    def rec() -> bool:
        v = pick()
        if v is None:
            return True
        dom = domain[v]
        while dom:
            bit = dom & -dom
            a = bit.bit_length() - 1
            dom &= dom - 1
            assignment[v] = a
            undo = []
            ok = True
            for w, fidx, is_tail in incident[v]:
                if w in assignment:
                    continue
                forb = sub(a, fidx) if is_tail else add(a, fidx)
                bitw = 1 << forb
                if domain[w] & bitw:
                    domain[w] &= ~bitw
                    undo.append((w, bitw))
                    if domain[w] == 0:
                        ok = False
                        break
            if ok and rec():
                return True
            for w, bitw in undo:
                domain[w] |= bitw
            del assignment[v]
        return False

    if not rec():
        return None
    els = group.elements()
    for e in g.edges:
        if sub(assignment[e.u], assignment[e.v]) == shift.value(e.id).index:
            raise SolverInternalError("backtracker produced an invalid coloring")
    return {v: els[assignment[v]] for v in verts}


def satisfies(g: Graph, lists: ListAssignment, shift: ShiftAssignment, coloring) -> bool:
    for v in g.vertices:
        if coloring[v] not in lists.of(v):
            return False
    for e in g.edges:
        if (coloring[e.u] - coloring[e.v]) == shift.value(e.id):
            return False
    return True


# ---------------------------------------------------------------------------
# shift normalization


def _spanning_forest(g: Graph) -> tuple[list, list]:
    """(tree edges as (parent, child, edge id) in BFS order, chord edges)."""
    tree = []
    tree_ids = set()
    seen: set[int] = set()
    for root in g.vertices:
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            for w, eid in g.incidences(v):
                if w not in seen:
                    seen.add(w)
                    tree.append((v, w, eid))
                    tree_ids.add(eid)
                    queue.append(w)
    chords = [e for e in g.edges if e.id not in tree_ids]
    return tree, chords


def normalize_shift(
    g: Graph, group: AbelianGroup, shift: ShiftAssignment
) -> tuple[ShiftAssignment, dict[int, GroupElement]]:
    """Equivalent shift that is the identity on a spanning forest, plus the
    translation t realizing it.

    c is a coloring for (L, f) exactly when v -> c(v) - t(v) is one for
    (L translated by t, normalized f); colorability is preserved and the
    sum of f around any cycle is unchanged.
    """
    tree, _ = _spanning_forest(g)
    t_idx: dict[int, int] = {v: 0 for v in g.vertices}
    sub = group.sub_index
    add = group.add_index
    neg = group.neg_index
    for parent, child, eid in tree:  # BFS order: parent is already set
        f = shift.value(eid).index
        oriented = f if parent == g.edge(eid).u else neg(f)
        t_idx[child] = sub(t_idx[parent], oriented)
    els = group.elements()
    new_values = {}
    for e in g.edges:
        f = shift.value(e.id).index
        new_values[e.id] = els[add(sub(f, t_idx[e.u]), t_idx[e.v])]
    translation = {v: els[i] for v, i in t_idx.items()}
    return ShiftAssignment(g, group, new_values), translation


# ---------------------------------------------------------------------------
# (A, L)-colorability for one fixed list assignment


@dataclass(frozen=True)
class ALColorability:
    colorable: bool
    witness: Optional[ShiftAssignment]
    exhaustive: bool
    checked: int


def is_AL_colorable(
    g: Graph,
    group: AbelianGroup,
    lists: ListAssignment,
    *,
    budget: int = _AL_COLORING_CAP,
    sample: bool = False,
    samples: int = 10_000,
    seed: int = 0,
) -> ALColorability:
    """Decide whether a coloring exists for *every* shift assignment.

    A shift f defeats the lists exactly when every candidate coloring from
    the lists has some edge whose difference equals f there, i.e. f is a
    one-value-per-edge hitting assignment for the difference vectors of
    all candidate colorings.  The hitting search below is exact over the
    full shift space.  When the list product exceeds the budget, sampling
    mode draws shifts uniformly instead; it can report a refutation but
    never verification.
    """
    if lists.group != group:
        raise SolverError("lists use a different group")
    total = math.prod(len(lists.of(v)) for v in g.vertices)
    if total == 0:
        witness = ShiftAssignment.zero(g, group)
        return ALColorability(False, witness, True, 0)
    if total > budget:
        if not sample:
            raise BudgetExceededError(
                f"list product {total} exceeds budget {budget}; pass sample=True",
                {"colorings": total, "budget": budget},
            )
        rng = random.Random(seed)
        els = group.elements()
        for i in range(samples):
            values = {eid: els[rng.randrange(group.order)] for eid in g.edge_ids()}
            shift = ShiftAssignment(g, group, values)
            if find_coloring(g, group, lists, shift) is None:
                return ALColorability(False, shift, False, i + 1)
        return ALColorability(True, None, False, samples)

    verts = list(g.vertices)
    edges = list(g.edges)
    sub = group.sub_index
    pos = {v: i for i, v in enumerate(verts)}
    index_lists = [sorted(el.index for el in lists.of(v)) for v in verts]

    vectors = set()
    for combo in itertools.product(*index_lists):
        vectors.add(tuple(sub(combo[pos[e.u]], combo[pos[e.v]]) for e in edges))
    targets = sorted(vectors)

    nE = len(edges)
    assigned: dict[int, int] = {}

    def hit(vec) -> bool:
        return any(assigned.get(i) == vec[i] for i in range(nE))

    def cover() -> bool:
        unhit = [vec for vec in targets if not hit(vec)]
        if not unhit:
            return True
        if len(assigned) == nE:
            return False
        vec = unhit[0]
        for i in range(nE):
            if i in assigned:
                continue
            assigned[i] = vec[i]
            if cover():
                return True
            del assigned[i]
        return False

    if cover():
        els = group.elements()
        values = {edges[i].id: els[assigned.get(i, 0)] for i in range(nE)}
        witness = ShiftAssignment(g, group, values)
        if find_coloring(g, group, lists, witness) is not None:
            raise SolverInternalError("defeating shift failed re-validation")
        return ALColorability(False, witness, True, len(targets))
    return ALColorability(True, None, True, len(targets))


# ---------------------------------------------------------------------------
# the quantified engine: all lists of given sizes x all shifts, one group


@dataclass
class _EngineOutcome:
    refutation: Optional[tuple[dict[int, tuple[int, ...]], dict[int, int]]]
    exhausted: bool
    instances: int
    mode: str


class _GroupSearch:
    """Search one (graph, group, list-size profile) for a defeating
    (lists, shift) pair, or certify there is none."""

    def __init__(self, g: Graph, group: AbelianGroup, sizes: dict[int, int]):
        self.g = g
        self.group = group
        self.q = group.order
        self.verts = list(g.vertices)
        self.n = len(self.verts)
        self.sizes = {v: int(sizes[v]) for v in self.verts}
        for v in self.verts:
            if not 0 <= self.sizes[v] <= self.q:
                raise SolverError(f"list size {self.sizes[v]} out of range at vertex {v}")
        self.tree, self.chords = _spanning_forest(g)
        self.rank = len(self.chords)
        self.caps = {v: self.q - self.sizes[v] for v in self.verts}

    # ---- instance space sizes

    def twist_count(self) -> int:
        return self.q**self.rank

    def _component_roots(self) -> set[int]:
        children = {child for _, child, _ in self.tree}
        return {v for v in self.verts if v not in children}

    def tuple_count(self) -> int:
        roots = self._component_roots()
        total = 1
        for v in self.verts:
            s = self.sizes[v]
            if s == 0:
                return 1
            total *= math.comb(self.q - 1, s - 1) if v in roots else math.comb(self.q, s)
        return total

    def subset_space(self) -> int:
        return math.prod(math.comb(self.q, self.caps[v]) for v in self.verts)

    def tensor_feasible(self) -> bool:
        return (
            self.q**self.n <= _TENSOR_COLORING_CAP
            and self.subset_space() <= _TENSOR_SUBSET_CAP
        )

    def _zero_size_refutation(self) -> _EngineOutcome:
        lists = {
            v: tuple(range(self.caps[v], self.q)) for v in self.verts
        }  # empty where size 0
        values = {e.id: 0 for e in self.g.edges}
        return _EngineOutcome((lists, values), True, 1, "degenerate")

    # ---- explicit enumeration over (anchored list tuples) x (twists)

    def run_explicit(self, budget: Optional[int] = None) -> _EngineOutcome:
        """Walk the exact orbit transversal: shifts zero on the spanning
        forest, lists anchored to contain the identity at one root per
        component and free elsewhere.

        Twists are the outer loop: refutations overwhelmingly live at the
        zero twist (proper-coloring style obstructions), so a budgeted
        prefix sweeps all list tuples at small twists first.
        """
        g, group, q = self.g, self.group, self.q
        if any(self.sizes[v] == 0 for v in self.verts):
            return self._zero_size_refutation()
        roots = self._component_roots()
        streams = []
        for v in self.verts:
            s = self.sizes[v]
            if v in roots:
                streams.append([(0,) + rest for rest in itertools.combinations(range(1, q), s - 1)])
            else:
                streams.append(list(itertools.combinations(range(q), s)))
        chord_ids = [e.id for e in self.chords]
        count = 0
        for twist in itertools.product(range(q), repeat=self.rank):
            values = {e.id: 0 for e in g.edges}
            for cid, t in zip(chord_ids, twist):
                values[cid] = t
            shift = ShiftAssignment.from_indices(g, group, values)
            for tuple_choice in itertools.product(*streams):
                count += 1
                lists = ListAssignment.from_indices(
                    g, group, {v: idxs for v, idxs in zip(self.verts, tuple_choice)}
                )
                if find_coloring(g, group, lists, shift) is None:
                    idx_lists = {v: tuple(idxs) for v, idxs in zip(self.verts, tuple_choice)}
                    return _EngineOutcome((idx_lists, values), True, count, "explicit")
                if budget is not None and count >= budget:
                    return _EngineOutcome(None, False, count, "explicit")
        return _EngineOutcome(None, True, count, "explicit")

    # ---- vectorized walk over twists, blocker tensor per twist

    def run_tensor(self, budget: Optional[int] = None) -> _EngineOutcome:
        """For each forest-zero twist, decide whether *some* list tuple of
        the given sizes defeats it.

        A tuple defeats twist f exactly when the complement sets S_v =
        A \\ L(v) hit every full-list coloring surviving f's edge
        constraints.  The count of survivors avoiding every S_v is a
        separable tensor contraction over per-vertex 0/1 matrices, so the
        existence question is a min over the contracted tensor.
        """
        if any(self.sizes[v] == 0 for v in self.verts):
            return self._zero_size_refutation()
        g, q, n = self.g, self.q, self.n
        N = q**n
        pos = {v: i for i, v in enumerate(self.verts)}
        ar = np.arange(N, dtype=np.int64)
        vals = [((ar // (q**i)) % q).astype(np.int16) for i in range(n)]

        def diff(e):
            return ((vals[pos[e.u]] - vals[pos[e.v]]) % q).astype(np.int16)

        base = np.ones(N, dtype=bool)
        for _, _, eid in self.tree:
            base &= diff(g.edge(eid)) != 0
        chord_diffs = [diff(e) for e in self.chords]

        # flat index = sum c_i q^i, so axis k of reshape((q,)*n) is vertex
        # n-1-k; process axes front to back, accumulating outputs at the end
        axis_vertices = [self.verts[n - 1 - k] for k in range(n)]
        subset_tables = {
            cap: list(itertools.combinations(range(q), cap))
            for cap in {self.caps[v] for v in self.verts}
        }
        w_tables = {}
        for cap, subsets in subset_tables.items():
            if cap >= 2:
                w = np.zeros((len(subsets), q), dtype=np.int32)
                for r, s in enumerate(subsets):
                    w[r] = 1
                    w[r, list(s)] = 0
                w_tables[cap] = w

        all_caps_zero = all(self.caps[v] == 0 for v in self.verts)

        def defeating_blockers(survivors: np.ndarray):
            if not survivors.any():
                return {v: tuple(range(self.caps[v])) for v in self.verts}
            if all_caps_zero:
                return None
            t = survivors.reshape((q,) * n).astype(np.int32)
            layout = []  # (vertex, cap) for axes kept in the output, in order
            for vertex in axis_vertices:
                cap = self.caps[vertex]
                if cap == 0:
                    t = t.sum(axis=0)
                elif cap == 1:
                    t = t.sum(axis=0, keepdims=True) - t
                    t = np.moveaxis(t, 0, -1)
                    layout.append((vertex, cap))
                else:
                    t = np.tensordot(w_tables[cap], t, axes=([1], [0]))
                    t = np.moveaxis(t, 0, -1)
                    layout.append((vertex, cap))
            if t.min() > 0:
                return None
            idx = np.unravel_index(int(np.argmin(t)), t.shape)
            blockers = {v: () for v in self.verts}
            for (vertex, cap), i in zip(layout, idx):
                blockers[vertex] = subset_tables[cap][int(i)]
            return blockers

        chord_ids = [e.id for e in self.chords]
        count = 0
        stop = [False]
        result = [None]

        def walk(level: int, mask: np.ndarray, twist: list[int]):
            nonlocal count
            if stop[0]:
                return
            if level == len(chord_diffs):
                count += 1
                blockers = defeating_blockers(mask)
                if blockers is not None:
                    lists = {
                        v: tuple(a for a in range(q) if a not in set(blockers[v]))
                        for v in self.verts
                    }
                    values = {e.id: 0 for e in g.edges}
                    for cid, t in zip(chord_ids, twist):
                        values[cid] = t
                    result[0] = (lists, values)
                    stop[0] = True
                elif budget is not None and count >= budget:
                    stop[0] = True
                return
            d = chord_diffs[level]
            for t in range(q):
                if stop[0]:
                    return
                twist.append(t)
                walk(level + 1, mask & (d != t), twist)
                twist.pop()

        walk(0, base, [])
        if result[0] is not None:
            return _EngineOutcome(result[0], True, count, "tensor")
        exhausted = count == self.twist_count()
        return _EngineOutcome(None, exhausted, count, "tensor")

    # ---- uniform sampling over the raw instance space

    def run_sampled(self, samples: int, seed: int) -> _EngineOutcome:
        g, group, q = self.g, self.group, self.q
        rng = random.Random(f"{seed}:{group}:{g.n}:{g.m}")
        for i in range(samples):
            idx_lists = {
                v: tuple(sorted(rng.sample(range(q), self.sizes[v]))) for v in self.verts
            }
            values = {eid: rng.randrange(q) for eid in g.edge_ids()}
            lists = ListAssignment.from_indices(g, group, idx_lists)
            shift = ShiftAssignment.from_indices(g, group, values)
            if find_coloring(g, group, lists, shift) is None:
                return _EngineOutcome((idx_lists, values), False, i + 1, "sample")
        return _EngineOutcome(None, False, samples, "sample")

    # ---- policy

    def leaf_units(self) -> int:
        """Rough cost of one blocker-tensor leaf in backtracker-call units."""
        units = 3 + self.q**self.n // 3000
        if max(self.caps.values(), default=0) >= 2:
            units += self.subset_space() // 1500 + 1
        return units

    def run(self, budget: int, on_budget: str, seed: int) -> _EngineOutcome:
        """Budgeted policy: budget is measured in backtracker-call units.

        One twist of the blocker tensor settles every list tuple at once,
        so it is preferred whenever feasible; the explicit transversal is
        the fallback, and budgeted prefixes keep the twist order (zero
        first) because refutations concentrate at small twists.
        """
        twists = self.twist_count()
        explicit_total = self.tuple_count() * twists
        if self.tensor_feasible():
            if twists * self.leaf_units() <= 2 * budget:
                return self.run_tensor()
        if 2 * explicit_total <= budget:
            return self.run_explicit()
        if on_budget == "error":
            raise BudgetExceededError(
                "instance space exceeds budget",
                {
                    "twists": twists,
                    "explicit_instances": explicit_total,
                    "budget": budget,
                    "group": str(self.group),
                },
            )
        if on_budget == "prefix":
            if self.tensor_feasible():
                return self.run_tensor(budget=max(1, budget // self.leaf_units()))
            return self.run_explicit(budget=max(1, budget // 2))
        if on_budget == "sample":
            return self.run_sampled(budget, seed)
        raise SolverError(f"unknown budget policy {on_budget!r}")


# ---------------------------------------------------------------------------
# shared bounded-search driver


@dataclass
class _BoundedSearch:
    refutation: Optional[RefutedWithWitness]
    exhausted: bool
    instances: int
    modes: tuple[str, ...]
    per_group: dict[str, int]


def _witness_verdict(
    g: Graph, group: AbelianGroup, outcome: _EngineOutcome
) -> RefutedWithWitness:
    idx_lists, values = outcome.refutation
    lists = ListAssignment.from_indices(g, group, idx_lists)
    shift = ShiftAssignment.from_indices(g, group, values)
    if find_coloring(g, group, lists, shift) is not None:
        raise SolverInternalError("refutation witness failed re-validation")
    return RefutedWithWitness(
        group=group,
        lists=lists,
        shift=shift,
        order=group.order,
        revalidated=True,
        instances_checked=outcome.instances,
        mode=outcome.mode,
    )


def _search_orders(
    g: Graph,
    sizes: dict[int, int],
    orders: Iterable[int],
    budget: int,
    on_budget: str,
    seed: int,
    force_mode: Optional[str] = None,
) -> _BoundedSearch:
    total = 0
    modes = []
    per_group = {}
    all_exhausted = True
    for order in orders:
        for group in enumerate_abelian_groups(order):
            search = _GroupSearch(g, group, sizes)
            if force_mode == "explicit":
                explicit_total = search.tuple_count() * search.twist_count()
                if explicit_total > budget:
                    if on_budget == "error":
                        raise BudgetExceededError(
                            "explicit instance space exceeds budget",
                            {"explicit_instances": explicit_total, "budget": budget},
                        )
                    outcome = search.run_explicit(budget=budget)
                else:
                    outcome = search.run_explicit()
            else:
                outcome = search.run(budget, on_budget, seed)
            total += outcome.instances
            modes.append(outcome.mode)
            per_group[str(group)] = outcome.instances
            if not outcome.exhausted:
                all_exhausted = False
            if outcome.refutation is not None:
                return _BoundedSearch(
                    _witness_verdict(g, group, outcome), all_exhausted, total, tuple(modes), per_group
                )
    return _BoundedSearch(None, all_exhausted, total, tuple(modes), per_group)


def _mode_label(modes: tuple[str, ...]) -> str:
    kinds = sorted(set(modes))
    return kinds[0] if len(kinds) == 1 else "+".join(kinds)


# ---------------------------------------------------------------------------
# public bounded operations


def is_k_group_choosable_bounded(
    g: Graph,
    k: int,
    max_order: Optional[int] = None,
    *,
    orders: Optional[Iterable[int]] = None,
    budget: int = DEFAULT_BUDGET,
    on_budget: str = "error",
    seed: int = 0,
    use_theorems: bool = True,
) -> Verdict:
    """Bounded verification that every k-list assignment over every Abelian
    group of order k..max_order is colorable for every shift.

    The trivial group is excluded from quantification, so the searched
    orders are max(k, 2)..max_order, or the explicit `orders` filtered the
    same way.  Fast paths (greedy coloring along a degeneracy order; the
    block characterization of degree-list colorability) return
    HoldsByTheorem without search.  Refutations carry re-validated
    witnesses and are exact; VerifiedUpToBound is evidence up to the order
    cap.
    """
    if k < 1:
        raise SolverError("k must be at least 1")
    if max_order is None:
        max_order = k + 2
    if max_order < k:
        raise SolverError("max_order must be at least k")

    if g.n == 0:
        return HoldsByTheorem("empty-graph")

    if use_theorems:
        _, degeneracy = degeneracy_order(g)
        if degeneracy + 1 <= k:
            return HoldsByTheorem("greedy-degeneracy")
        if g.is_simple():
            comps = g.components()
            ok = True
            for comp in comps:
                sub = g.induced(comp)
                _, d = degeneracy_order(sub)
                if d + 1 <= k:
                    continue
                if k >= sub.max_degree() and not blocks_all_complete_or_cycle(sub):
                    continue
                ok = False
                break
            if ok:
                return HoldsByTheorem("degree-list-colorable-blocks")

    sizes = {v: k for v in g.vertices}
    if orders is None:
        order_list = list(range(max(k, 2), max_order + 1))
    else:
        order_list = sorted(o for o in set(orders) if o >= max(k, 2))
        if not order_list:
            raise SolverError("no usable orders: all below max(k, 2)")
        max_order = max(order_list)
    result = _search_orders(g, sizes, order_list, budget, on_budget, seed)
    if result.refutation is not None:
        return result.refutation
    if result.exhausted:
        return VerifiedUpToBound(max_order, result.instances, _mode_label(result.modes))
    return NoRefutationFound(result.instances, _mode_label(result.modes), max_order)


@dataclass(frozen=True)
class ChoiceNumberResult:
    value: int
    refutations: dict[int, RefutedWithWitness]
    upper: Verdict

    def exact(self) -> bool:
        return isinstance(self.upper, HoldsByTheorem)

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "refuted_below": {str(k): v.to_json() for k, v in sorted(self.refutations.items())},
            "upper": self.upper.to_json(),
        }


def group_choice_number_bounded(
    g: Graph,
    k_max: Optional[int] = None,
    order_margin: int = 2,
    **kwargs,
) -> ChoiceNumberResult:
    """Smallest k with no refutation at orders <= k + order_margin, plus
    refutation witnesses for every smaller k."""
    if k_max is None:
        k_max = max(g.max_degree() + 1, 1)
    refutations: dict[int, RefutedWithWitness] = {}
    for k in range(1, k_max + 1):
        verdict = is_k_group_choosable_bounded(g, k, k + order_margin, **kwargs)
        if isinstance(verdict, RefutedWithWitness):
            refutations[k] = verdict
            continue
        return ChoiceNumberResult(k, refutations, verdict)
    raise SolverError(f"refuted at every k up to k_max={k_max}")


def is_edge_k_group_choosable_bounded(g: Graph, k: int, max_order=None, **kwargs) -> Verdict:
    """Delegates to the line graph; line-graph vertices are edge ids of g."""
    return is_k_group_choosable_bounded(line_graph(g), k, max_order, **kwargs)


def edge_group_choice_number_bounded(g: Graph, k_max=None, order_margin: int = 2, **kwargs) -> ChoiceNumberResult:
    lg = line_graph(g)
    if k_max is None:
        k_max = max(lg.max_degree() + 1, 1)
    return group_choice_number_bounded(lg, k_max, order_margin, **kwargs)


@dataclass(frozen=True)
class DGroupResult:
    verdict: Verdict
    blocks_complete_or_cycle: bool
    agrees: bool

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.to_json(),
            "blocks_complete_or_cycle": self.blocks_complete_or_cycle,
            "agrees": self.agrees,
        }


def is_D_group_choosable_bounded(
    g: Graph,
    max_order: Optional[int] = None,
    *,
    budget: int = DEFAULT_BUDGET,
    on_budget: str = "prefix",
    seed: int = 0,
) -> DGroupResult:
    """Bounded check of colorability with every list assignment sized
    |L(v)| = d(v), over groups of order max(maxdeg, 2)..max_order.

    No theorem shortcut is taken: the search result is cross-checked
    against the block-shape characterization (a connected graph fails
    degree-list colorability exactly when every block is complete or a
    chordless cycle), and the agreement flag reports the comparison.
    """
    if not g.is_connected():
        raise GraphError("degree-list check requires a connected graph")
    lo = max(g.max_degree(), 2)
    if max_order is None:
        max_order = lo + 2
    if max_order < lo:
        raise SolverError("max_order below the smallest quantified order")
    sizes = {v: g.degree(v) for v in g.vertices}
    result = _search_orders(g, sizes, range(lo, max_order + 1), budget, on_budget, seed)
    predicted_refutable = blocks_all_complete_or_cycle(g) if g.is_simple() else None
    if result.refutation is not None:
        verdict: Verdict = result.refutation
        agrees = predicted_refutable is True
    elif result.exhausted:
        verdict = VerifiedUpToBound(max_order, result.instances, _mode_label(result.modes))
        agrees = predicted_refutable is False
    else:
        verdict = NoRefutationFound(result.instances, _mode_label(result.modes), max_order)
        agrees = predicted_refutable is False
    return DGroupResult(verdict, bool(predicted_refutable), agrees)


@dataclass(frozen=True)
class ReducibilityResult:
    verdict: Verdict
    instances_per_group: dict[str, int]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.to_json(),
            "instances_per_group": dict(sorted(self.instances_per_group.items())),
        }


def check_reducible(
    h: Graph,
    list_sizes: dict[int, int],
    orders: Iterable[int],
    *,
    budget: int = 10_000_000,
    mode: str = "explicit",
    seed: int = 0,
) -> ReducibilityResult:
    """For every group of each given order, every list assignment of the
    given sizes and every shift: does a coloring always exist?

    The explicit mode enumerates the exact orbit transversal (anchored
    lists x forest-zero twists) and reports precise instance counts.
    """
    orders = sorted(set(orders))
    if set(list_sizes) != set(h.vertices):
        raise SolverError("list size profile must cover every vertex")
    for v, s in list_sizes.items():
        if s < 1:
            raise SolverError(f"list size at vertex {v} must be positive")
        if s > min(orders):
            raise SolverError(f"list size {s} at vertex {v} exceeds smallest order {min(orders)}")
    force = "explicit" if mode == "explicit" else None
    result = _search_orders(
        h, dict(list_sizes), orders, budget, "error", seed, force_mode=force
    )
    if result.refutation is not None:
        return ReducibilityResult(result.refutation, result.per_group)
    verdict = VerifiedUpToBound(max(orders), result.instances, _mode_label(result.modes))
    return ReducibilityResult(verdict, result.per_group)


# ---------------------------------------------------------------------------
# kernelization by low-degree edge peeling


@dataclass(frozen=True)
class PeelStep:
    edge_id: int
    endpoints: tuple[int, int]
    at_vertex: int
    vertex_degree: int


@dataclass(frozen=True)
class KernelizationResult:
    kernel: Graph
    peeled: tuple[PeelStep, ...]
    delta_bound: int
    slack: int

    def to_json(self) -> dict:
        return {
            "kernel_vertices": list(self.kernel.vertices),
            "kernel_edges": [[e.u, e.v, e.id] for e in self.kernel.edges],
            "peeled": [
                {
                    "edge": s.edge_id,
                    "endpoints": list(s.endpoints),
                    "at_vertex": s.at_vertex,
                    "vertex_degree": s.vertex_degree,
                }
                for s in self.peeled
            ],
            "delta_bound": self.delta_bound,
            "slack": self.slack,
        }


def kernelize_low_degree(g: Graph, l: int = 1) -> KernelizationResult:
    """Repeatedly delete an edge at a vertex of current degree <= 2.

    Certificate: if the kernel's edge-list chromatic bound holds at
    maxdeg(g) + l then it holds for g, because restoring the peeled edges
    in reverse order extends any coloring greedily -- the restored edge
    touches a vertex of degree <= 2, so it sees at most maxdeg(g) other
    edges while its lists carry maxdeg(g) + l values.  The same peeling
    preserves refutations downward: the kernel is an edge subgraph, and a
    defeated list assignment on its line graph extends to the full line
    graph with arbitrary lists and shifts on the new vertices.
    """
    if l < 1:
        raise SolverError("slack l must be at least 1")
    steps = []
    current = g
    while True:
        target = None
        for v in current.vertices:
            d = current.degree(v)
            if 1 <= d <= 2:
                target = v
                break
        if target is None:
            break
        eid = min(eid for _, eid in current.incidences(target))
        e = current.edge(eid)
        steps.append(PeelStep(eid, (e.u, e.v), target, current.degree(target)))
        current = current.without_edge(eid)
    return KernelizationResult(current, tuple(steps), g.max_degree() + l, l)

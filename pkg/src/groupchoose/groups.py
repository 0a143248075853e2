"""Finite Abelian groups as direct products of cyclic factors.

Groups are canonicalized to invariant-factor form (d1 | d2 | ... | dm), so
two presentations compare equal exactly when the groups are isomorphic.
Elements are residue vectors stored behind a flat index 0..order-1; addition
and negation tables are precomputed because element arithmetic sits in the
innermost solver loops.  Groups and elements are immutable and safe to share
across workers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

MAX_ENUMERATION_ORDER = 64


class GroupError(ValueError):
    pass


def _factorint(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(n: int) -> list[tuple[int, ...]]:
    """All integer partitions of n, parts in non-increasing order."""
    if n == 0:
        return [()]
    result = []

    def rec(remaining, max_part, acc):
        if remaining == 0:
            result.append(tuple(acc))
            return
        for part in range(min(remaining, max_part), 0, -1):
            rec(remaining - part, part, acc + [part])

    rec(n, n, [])
    return result


def _invariant_factors(factors: tuple[int, ...]) -> tuple[int, ...]:
    """Reduce arbitrary cyclic factors to the invariant-factor normal form."""
    by_prime: dict[int, list[int]] = {}
    for d in factors:
        if d < 1:
            raise GroupError(f"cyclic factor must be >= 1, got {d}")
        for p, e in _factorint(d).items():
            by_prime.setdefault(p, []).append(e)
    for exps in by_prime.values():
        exps.sort(reverse=True)
    columns = itertools.zip_longest(
        *[[p**e for e in exps] for p, exps in sorted(by_prime.items())],
        fillvalue=1,
    )
    invariant = sorted(d for d in (math.prod(col) for col in columns) if d > 1)
    return tuple(invariant)


@dataclass(frozen=True)
class GroupElement:
    """One element of an AbelianGroup, identified by its flat index."""

    group: "AbelianGroup"
    index: int

    @property
    def residues(self) -> tuple[int, ...]:
        return self.group.residues_of(self.index)

    def _check(self, other: "GroupElement") -> None:
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupError("elements belong to different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.group, self.group.add_index(self.index, other.index))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.group,
            self.group.add_index(self.index, self.group.neg_index(other.index)),
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, self.group.neg_index(self.index))

    def is_identity(self) -> bool:
        return self.index == 0

    def __repr__(self) -> str:
        return f"{self.group}:{','.join(map(str, self.residues))}"


class AbelianGroup:
    """Direct product of cyclic groups Z_{d1} x ... x Z_{dm}.

    The factor list is normalized to invariant factors, so e.g.
    AbelianGroup((2, 3)) == AbelianGroup((6,)).  The trivial group is
    AbelianGroup(()) with order 1.
    """

    __slots__ = ("factors", "order", "_strides", "_add", "_neg", "_elements")

    def __init__(self, factors: tuple[int, ...] | list[int]):
        self.factors = _invariant_factors(tuple(factors))
        order = 1
        for d in self.factors:
            order *= d
        self.order = order
        strides = []
        s = 1
        for d in self.factors:
            strides.append(s)
            s *= d
        self._strides = tuple(strides)
        # index arithmetic tables; order is capped in practice so these stay small
        add = [[0] * order for _ in range(order)]
        neg = [0] * order
        residues = [self.residues_of(i) for i in range(order)]
        lookup = {r: i for i, r in enumerate(residues)}
        for i, ri in enumerate(residues):
            neg[i] = lookup[tuple((-a) % d for a, d in zip(ri, self.factors))]
            for j, rj in enumerate(residues):
                add[i][j] = lookup[
                    tuple((a + b) % d for a, b, d in zip(ri, rj, self.factors))
                ]
        self._add = add
        self._neg = neg
        self._elements = tuple(GroupElement(self, i) for i in range(order))

    def residues_of(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.order:
            raise GroupError(f"element index {index} out of range")
        return tuple((index // s) % d for s, d in zip(self._strides, self.factors))

    def index_of(self, residues: tuple[int, ...]) -> int:
        if len(residues) != len(self.factors):
            raise GroupError("residue vector has wrong length")
        return sum((r % d) * s for r, d, s in zip(residues, self.factors, self._strides))

    def add_index(self, i: int, j: int) -> int:
        return self._add[i][j]

    def neg_index(self, i: int) -> int:
        return self._neg[i]

    def sub_index(self, i: int, j: int) -> int:
        return self._add[i][self._neg[j]]

    @property
    def identity(self) -> GroupElement:
        return self._elements[0]

    def element(self, residues) -> GroupElement:
        if isinstance(residues, int):
            residues = (residues,)
        return self._elements[self.index_of(tuple(residues))]

    def elements(self) -> tuple[GroupElement, ...]:
        return self._elements

    def __eq__(self, other) -> bool:
        return isinstance(other, AbelianGroup) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(("AbelianGroup", self.factors))

    def __str__(self) -> str:
        if not self.factors:
            return "Z1"
        return "x".join(f"Z{d}" for d in self.factors)

    def __repr__(self) -> str:
        return f"AbelianGroup({self.factors})"


@lru_cache(maxsize=None)
def _group_cache(factors: tuple[int, ...]) -> AbelianGroup:
    return AbelianGroup(factors)


def make_group(*factors: int) -> AbelianGroup:
    """Shared-instance constructor; invariant-factor canonicalization applies."""
    return _group_cache(_invariant_factors(tuple(factors)))


def parse_group(text: str) -> AbelianGroup:
    """Parse the CLI syntax for groups: "Z4", "Z2xZ2", "Z3xZ9"."""
    parts = text.strip().split("x")
    factors = []
    for part in parts:
        part = part.strip()
        if not part.startswith("Z") or not part[1:].isdigit():
            raise GroupError(f"cannot parse group {text!r}")
        factors.append(int(part[1:]))
    return make_group(*factors)


def enumerate_abelian_groups(order: int, cap: int = MAX_ENUMERATION_ORDER) -> list[AbelianGroup]:
    """One group per isomorphism class of Abelian groups of the given order.

    Classes correspond to choices of a partition of each prime exponent in
    the factorization of the order.  Deterministically sorted by the
    invariant-factor tuple.
    """
    if order < 1:
        raise GroupError(f"order must be positive, got {order}")
    if order > cap:
        raise GroupError(f"order {order} exceeds enumeration cap {cap}")
    if order == 1:
        return [make_group()]
    choices = []
    for p, e in sorted(_factorint(order).items()):
        choices.append([tuple(p**part for part in partition) for partition in _partitions(e)])
    groups = set()
    for combo in itertools.product(*choices):
        factors = tuple(itertools.chain.from_iterable(combo))
        groups.add(make_group(*factors))
    return sorted(groups, key=lambda a: a.factors)


def k_subsets_containing_zero(group: AbelianGroup, k: int):
    """Stream all k-subsets of the group that contain the identity.

    Subsets are emitted as tuples of GroupElements sorted by index, in
    lexicographic order of the index tuples.
    """
    if not 1 <= k <= group.order:
        raise GroupError(f"subset size {k} out of range for group of order {group.order}")
    els = group.elements()
    for rest in itertools.combinations(range(1, group.order), k - 1):
        yield (els[0],) + tuple(els[i] for i in rest)

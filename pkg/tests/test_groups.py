import math
import random

import pytest

from groupchoose.groups import (
    GroupError,
    enumerate_abelian_groups,
    k_subsets_containing_zero,
    make_group,
    parse_group,
)


def _partition_count(n: int) -> int:
    # classic recurrence, used only as the test oracle
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for j in range(n + 1):
        table[0][j] = 1
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            table[i][j] = table[i][j - 1] + (table[i - j][j] if i >= j else 0)
    return table[n][n]


def _expected_group_count(n: int) -> int:
    total = 1
    m = n
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            total *= _partition_count(e)
        p += 1
    if m > 1:
        total *= 1  # prime to the first power
    return total


def test_enumeration_examples():
    assert [str(a) for a in enumerate_abelian_groups(4)] == ["Z2xZ2", "Z4"]
    assert len(enumerate_abelian_groups(8)) == 3
    assert [str(a) for a in enumerate_abelian_groups(6)] == ["Z6"]


def test_enumeration_counts_up_to_32():
    for n in range(1, 33):
        assert len(enumerate_abelian_groups(n)) == _expected_group_count(n)


def test_enumeration_cap():
    with pytest.raises(GroupError):
        enumerate_abelian_groups(65)


def test_invariant_factor_canonicalization():
    assert make_group(2, 3) == make_group(6)
    assert make_group(2, 4) != make_group(8)
    assert parse_group("Z3xZ9").factors == (3, 9)
    assert str(parse_group("Z2xZ2")) == "Z2xZ2"


def test_arithmetic_examples():
    z4 = parse_group("Z4")
    assert (z4.element(3) + z4.element(2)).residues == (1,)
    z22 = parse_group("Z2xZ2")
    assert (z22.element((1, 0)) + z22.element((1, 1))).residues == (0, 1)
    z5 = parse_group("Z5")
    assert (-z5.element(2)).residues == (3,)
    assert (z5.element(2) - z5.element(2)).is_identity()


def test_mixed_parent_arithmetic_rejected():
    z4 = parse_group("Z4")
    z22 = parse_group("Z2xZ2")
    with pytest.raises(GroupError):
        z4.element(1) + z22.element((1, 0))


def test_group_axioms_sampled():
    rng = random.Random(0)
    for order in range(2, 17):
        for group in enumerate_abelian_groups(order):
            els = group.elements()
            zero = group.identity
            for _ in range(30):
                a, b, c = (rng.choice(els) for _ in range(3))
                assert (a + b) + c == a + (b + c)
                assert a + zero == a
                assert a + (-a) == zero
                assert a + b == b + a


def test_k_subsets_containing_zero_counts_and_examples():
    z3 = parse_group("Z3")
    subs = list(k_subsets_containing_zero(z3, 2))
    assert [[e.index for e in s] for s in subs] == [[0, 1], [0, 2]]
    z4 = parse_group("Z4")
    assert len(list(k_subsets_containing_zero(z4, 4))) == 1
    z22 = parse_group("Z2xZ2")
    assert len(list(k_subsets_containing_zero(z22, 2))) == 3
    for order in (4, 5, 6):
        for group in enumerate_abelian_groups(order):
            for k in range(1, order + 1):
                got = sum(1 for _ in k_subsets_containing_zero(group, k))
                assert got == math.comb(order - 1, k - 1)
    with pytest.raises(GroupError):
        list(k_subsets_containing_zero(z3, 4))

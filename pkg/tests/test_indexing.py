import itertools

import pytest

from seqop.indexing import (
    LIndex,
    enumerate_indices,
    is_elementary_decomposition,
    is_index,
    is_overlapping_partition,
    is_valuewise_overlapping_partition,
    restrict,
    restrict_seq,
    sigma_alpha,
    substitution,
)
from seqop.operad import perm_inverse, surjections


def test_single_index_for_product():
    (alpha,) = enumerate_indices((1, 2), (1, 1), 1)
    assert alpha.E == (((1, 1), (2, 1)),)
    assert alpha.S == (frozenset({1, 2}),)


def test_two_indices_of_length_two():
    idx = enumerate_indices((1, 2), (1, 1), 2)
    assert len(idx) == 2
    assert {a.E for a in idx} == {(((1, 1),), ((2, 1),)), (((2, 1),), ((1, 1),))}


def test_too_long_is_empty():
    assert enumerate_indices((1, 2, 1), (1, 1), 3) == []


def test_valuewise_partition_membership():
    assert is_valuewise_overlapping_partition((1, 2, 1, 2), [{1, 2, 3}, {2, 3, 4}])
    assert not is_valuewise_overlapping_partition((1, 2, 1, 2), [{1, 2}, {3, 4}])


def test_overlapping_partition():
    assert is_overlapping_partition([[1, 3], [3, 5]], [1, 3, 5])
    assert is_overlapping_partition([[1], [1, 3]], [1, 3])
    assert not is_overlapping_partition([[1], [3]], [1, 3])


def test_restriction():
    assert restrict_seq((1, 2, 1, 2), {1, 2, 3}) == (1, 2, 1)
    assert restrict_seq((1, 2, 1, 2), {2, 3}) == (2, 1)
    assert restrict_seq((1, 2, 1, 2), {2, 4}) is None
    assert not restrict((1, 2, 1, 2), {2, 4})


def test_shuffle_of_example_decomposition():
    E = (((2, 1),), ((1, 1), (2, 2), (2, 3)), ((1, 2),))
    s = sigma_alpha(E, (2, 3))
    assert s == (2, 5, 1, 3, 4)
    # the inverse reading, as an unshuffle
    assert perm_inverse(s) == (3, 1, 4, 5, 2)
    assert sigma_alpha((((1, 1),), ((2, 1),)), (1, 1)) == (1, 2)
    assert sigma_alpha((((2, 1),), ((1, 1),)), (1, 1)) == (2, 1)


def test_substitution_order():
    xs = [("a1", "a2"), ("b1",)]
    assert substitution(((2, 1), (1, 2)), xs) == ("a2", "b1")


def test_validators_reject_bad_indices():
    bad_order = LIndex((((1, 2),), ((1, 1), (2, 1))), (frozenset({1}), frozenset({1, 2})))
    assert not is_elementary_decomposition(bad_order.E, (2, 1))
    assert not is_index((1, 2), (2, 1), bad_order)
    incompatible = LIndex((((1, 1),), ((2, 1),)), (frozenset({1, 2}), frozenset({2})))
    assert not is_index((1, 2), (1, 1), incompatible)


def _brute_force(f, p, l):
    """Filter every assignment of the tagged union to blocks and every tuple of subsets."""
    k = len(p)
    m = len(f)
    elems = [(i + 1, t) for i in range(k) for t in range(1, p[i] + 1)]
    subsets = [frozenset(c) for r in range(1, m + 1) for c in itertools.combinations(range(1, m + 1), r)]
    found = set()
    for assign in itertools.product(range(l), repeat=len(elems)):
        E = tuple(tuple(sorted(x for x, b in zip(elems, assign) if b == j)) for j in range(l))
        if not is_elementary_decomposition(E, p):
            continue
        for S in itertools.product(subsets, repeat=l):
            alpha = LIndex(E, S)
            if is_index(f, p, alpha):
                found.add(alpha)
    return found


@pytest.mark.parametrize("m,k", [(1, 1), (2, 2), (3, 2), (4, 2), (3, 3)])
def test_enumeration_matches_brute_force(m, k):
    for f in surjections(m, k):
        for p in itertools.product(range(1, 3), repeat=k):
            if sum(p) > 4:
                continue
            for l in range(1, min(sum(p), 3) + 1):
                got = enumerate_indices(f, p, l)
                assert len(got) == len(set(got))
                assert set(got) == _brute_force(f, p, l), (f, p, l)


def test_enumeration_is_deterministic_and_valid():
    a = enumerate_indices((1, 2, 1, 3), (2, 1, 2), 3)
    b = enumerate_indices((1, 2, 1, 3), (2, 1, 2), 3)
    assert a == b and a
    assert all(is_index((1, 2, 1, 3), (2, 1, 2), x) for x in a)

import itertools

import pytest
from hypothesis import given, strategies as st

from mvbessel.partitions import (
    Partition,
    complement_in_box,
    conjugate,
    contained,
    dominance_leq,
    enumerate_partitions,
    partitions_of,
    sub_partitions,
)


def brute_partitions(w, length):
    """All weakly decreasing tuples of length <= `length` summing to w, by exhaustion."""
    out = set()
    for tup in itertools.product(range(w + 1), repeat=length):
        if sum(tup) == w and all(tup[i] >= tup[i + 1] for i in range(length - 1)):
            out.add(tuple(p for p in tup if p))
    return out


partition_st = st.lists(st.integers(1, 5), max_size=4).map(lambda xs: Partition(sorted(xs, reverse=True)))


def test_normalisation_strips_zeros():
    assert Partition((2, 1, 0, 0)) == Partition((2, 1))
    assert Partition() == Partition((0,))


def test_rejects_increasing():
    with pytest.raises(ValueError):
        Partition((1, 2))


@pytest.mark.parametrize("mu,lam,expected", [
    ((1, 1), (2,), True),
    ((2,), (1, 1), False),
    ((2, 2, 1), (3, 1, 1), True),
])
def test_dominance_examples(mu, lam, expected):
    assert dominance_leq(Partition(mu), Partition(lam)) is expected


def test_dominance_unequal_weight_is_error():
    with pytest.raises(ValueError):
        dominance_leq(Partition((1,)), Partition((2,)))


@pytest.mark.parametrize("lam,expected", [((2, 1), (2, 1)), ((3,), (1, 1, 1)), ((4, 2, 1), (3, 2, 1, 1))])
def test_conjugate_examples(lam, expected):
    assert conjugate(Partition(lam)) == Partition(expected)


@given(partition_st)
def test_conjugate_is_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    # column counts oracle
    cols = [sum(1 for p in lam if p > j) for j in range(lam[0] if lam else 0)]
    assert tuple(conjugate(lam)) == tuple(cols)


@pytest.mark.parametrize("nu,N,n,expected", [((3, 1), 3, 2, (2,)), ((), 2, 2, (2, 2)), ((2, 1), 3, 2, (2, 1))])
def test_complement_examples(nu, N, n, expected):
    assert complement_in_box(Partition(nu), N, n) == Partition(expected)


def test_complement_outside_box():
    with pytest.raises(ValueError):
        complement_in_box(Partition((4,)), 3, 2)


@given(partition_st, st.integers(0, 2))
def test_complement_involution(lam, extra):
    n = max(len(lam), 1)
    N = (lam[0] if lam else 0) + extra
    assert complement_in_box(complement_in_box(lam, N, n), N, n) == lam


def test_enumerate_examples():
    assert enumerate_partitions(2, 2) == [Partition(), Partition((1,)), Partition((2,)), Partition((1, 1))]
    assert enumerate_partitions(0, 5) == [Partition()]
    assert len(enumerate_partitions(3, 2)) == 6


@pytest.mark.parametrize("w,length", [(w, l) for w in range(7) for l in range(1, 4)])
def test_partitions_against_brute_force(w, length):
    got = partitions_of(w, length)
    assert len(got) == len(set(got))
    assert {tuple(p) for p in got} == brute_partitions(w, length)


def test_enumerate_sorted_by_weight_then_reverse_lex():
    ps = enumerate_partitions(5, 3)
    keys = [(p.weight, tuple(-x for x in p)) for p in ps]
    assert keys == sorted(keys)


@given(partition_st)
def test_sub_partitions_are_exactly_contained(lam):
    subs = set(sub_partitions(lam))
    n = max(len(lam), 1)
    every = enumerate_partitions(lam.weight, n)
    assert subs == {mu for mu in every if contained(mu, lam)}


@given(partition_st)
def test_dominance_is_reflexive_and_conjugation_reverses(lam):
    for mu in partitions_of(lam.weight, lam.weight or 1):
        assert dominance_leq(mu, lam) == dominance_leq(conjugate(lam), conjugate(mu))

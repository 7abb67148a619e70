import pytest
from hypothesis import given, strategies as st

from bundleinterp.tableaux import (
    Partition,
    admissible,
    dominates,
    format_partition,
    parse_int_list,
    parse_partition,
    partitions_in_box,
    partitions_of,
    transpose,
)

partitions = st.lists(st.integers(0, 8), max_size=8).map(Partition)


def test_partition_normalises():
    assert Partition([1, 3, 0, 2]) == (3, 2, 1)
    assert Partition([]) == ()
    with pytest.raises(ValueError):
        Partition([2, -1])


def test_getitem_past_end_is_zero():
    p = Partition([2, 1])
    assert p[5] == 0
    assert p.size == 3


@pytest.mark.parametrize(
    "lhs, rhs, expected",
    [((2, 1), (3,), True), ((3,), (2, 2), False), ((2, 2), (2, 2), True)],
)
def test_dominates_examples(lhs, rhs, expected):
    assert dominates(lhs, rhs) is expected


@pytest.mark.parametrize(
    "p, expected",
    [((4, 4, 3, 3, 3), (5, 5, 5, 2)), ((), ()), ((1, 1, 1), (3,))],
)
def test_transpose_examples(p, expected):
    assert transpose(p) == expected


@pytest.mark.parametrize(
    "lam, rank, h0, expected",
    [((2, 2), 2, 4, True), ((3,), 2, 4, False), ((2, 2, 1), 2, 4, False)],
)
def test_admissible_examples(lam, rank, h0, expected):
    assert admissible(lam, rank, h0) is expected


def test_admissible_rejects_bad_rank():
    with pytest.raises(ValueError):
        admissible((1,), 0, 3)


def test_partitions_of_counts():
    # p(n) for n = 0..10
    assert [sum(1 for _ in partitions_of(n)) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_partitions_in_box_respects_bounds():
    got = list(partitions_in_box(2, 3))
    assert Partition() in got
    assert all(max(p, default=0) <= 2 and len(p) <= 3 for p in got)
    assert len(got) == len(set(got)) == 10  # binom(5, 2)


def test_parse_and_format():
    assert parse_int_list("2^9,1") == [2] * 9 + [1]
    assert parse_int_list("()") == []
    assert parse_partition("1,3") == (3, 1)
    assert format_partition(Partition([2, 2])) == "2,2"
    with pytest.raises(ValueError):
        parse_int_list("1,,2")


@given(partitions)
def test_transpose_is_involution(p):
    assert transpose(transpose(p)) == p
    assert transpose(p).size == p.size


@given(partitions, partitions)
def test_dominance_reverses_under_transpose(a, b):
    if a.size == b.size:
        assert dominates(a, b) == dominates(transpose(b), transpose(a))


@given(partitions, partitions, partitions)
def test_dominance_is_a_preorder(a, b, c):
    assert dominates(a, a)
    if dominates(a, b) and dominates(b, c):
        assert dominates(a, c)
    if dominates(a, b) and dominates(b, a):
        assert a == b

import pytest

from xherm.errors import GapSequenceError, XhermError
from xherm.partitions import (
    GapSequence,
    Partition,
    codimension,
    double_partition,
    excluded_indices,
    gap_sequence,
    is_adler,
    xop_degree,
)


def test_base_partition_data():
    p = Partition((1,))
    assert double_partition(p) == Partition((1, 1))
    assert gap_sequence(double_partition(p)).ks == (1, 2)
    assert codimension(p) == 2
    assert excluded_indices(p) == frozenset({1, 2})


def test_validation():
    with pytest.raises(XhermError):
        Partition((2, 1))
    with pytest.raises(XhermError):
        Partition((-1,))
    with pytest.raises(XhermError):
        GapSequence((2, 2))


@pytest.mark.parametrize("ks,ok", [((1, 2), True), ((0, 1, 2), True), ((1,), False), ((1, 2, 4), False),
                                   ((0, 3, 4), True), ((), True)])
def test_adler_blocks(ks, ok):
    assert is_adler(GapSequence(ks)) is ok


def test_degree_and_gap_error():
    assert xop_degree((1,), 5) == 5
    with pytest.raises(GapSequenceError):
        xop_degree((1,), 2)

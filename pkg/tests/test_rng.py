import numpy as np
import pytest

from psocluster.rng import KMEANS_STREAM, PSO_STREAM, RngStream


def test_same_seed_same_sequence():
    a, b = RngStream(7), RngStream(7)
    assert np.array_equal(a.uniform((3, 4)), b.uniform((3, 4)))
    assert a.randbelow(1000) == b.randbelow(1000)


def test_keys_are_independent_streams():
    a, b = RngStream(7, PSO_STREAM), RngStream(7, KMEANS_STREAM)
    assert not np.array_equal(a.uniform(8), b.uniform(8))


def test_uniform_range():
    u = RngStream(1).uniform(10_000)
    assert u.min() >= 0.0 and u.max() < 1.0
    assert abs(u.mean() - 0.5) < 0.02


def test_block_draw_is_row_major_sequence():
    # one (2, 3) block equals six scalar draws in C order
    block = RngStream(3).uniform((2, 3))
    s = RngStream(3)
    flat = [s.uniform() for _ in range(6)]
    assert block.ravel().tolist() == flat


def test_sample_distinct_and_exhaustive():
    s = RngStream(11)
    draw = s.sample(10, 10)
    assert sorted(draw.tolist()) == list(range(10))
    part = s.sample(50, 7)
    assert len(set(part.tolist())) == 7


def test_copy_continues_identically():
    a = RngStream(5)
    a.uniform(3)
    b = a.copy()
    assert np.array_equal(a.uniform(4), b.uniform(4))


@pytest.mark.parametrize("seed", [-1, 2**64])
def test_seed_range(seed):
    with pytest.raises(ValueError):
        RngStream(seed)


def test_full_64_bit_seed():
    RngStream(2**64 - 1).uniform()

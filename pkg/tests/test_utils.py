import numpy as np
import pytest

from frequent_directions.mix import MixSketcher
from frequent_directions.utils import (
    ShapeError,
    check_row,
    hash64,
    splitmix64,
    validate_count,
)


def test_splitmix64_reference_value():
    assert int(splitmix64(0)) == 0xE220A8397B1DCDAF


def test_splitmix64_is_vectorised():
    values = splitmix64(np.arange(4, dtype=np.uint64))
    assert values.dtype == np.uint64
    assert [int(v) for v in values] == [int(splitmix64(i)) for i in range(4)]


def test_hash64_depends_on_every_key():
    base = int(hash64(1, 2, 3))
    assert base == int(hash64(1, 2, 3))
    assert base != int(hash64(1, 3, 2))
    assert base != int(hash64(2, 2, 3))
    assert int(hash64(-1, 5)) == int(hash64(2**64 - 1, 5))
    keys = hash64(1, 2, np.arange(3, dtype=np.uint64))
    assert keys.shape == (3,)
    assert int(keys[0]) == int(hash64(1, 2, 0))


def test_validate_count():
    assert validate_count("ell", 3) == 3
    assert validate_count("capacity", 0, minimum=0) == 0
    for bad in (0, -1, 2.5, True):
        with pytest.raises(ValueError):
            validate_count("ell", bad)


class _Recorder:
    cols = 3

    @check_row
    def take(self, row):
        return row


def test_check_row_normalises_rows():
    row = _Recorder().take([1, 2, 3])
    assert row.dtype == np.float64
    assert row.shape == (3,)
    assert _Recorder().take(np.ones((1, 3))).shape == (3,)


def test_check_row_rejects_bad_rows():
    with pytest.raises(ShapeError):
        _Recorder().take([1.0, 2.0])
    with pytest.raises(ShapeError):
        _Recorder().take(np.ones((3, 3)))
    with pytest.raises(ValueError):
        _Recorder().take([1.0, np.inf, 0.0])


def test_mix_sketcher_is_abstract():
    sketcher = MixSketcher(2, 3)
    with pytest.raises(NotImplementedError):
        sketcher.append([1.0, 2.0, 3.0])
    with pytest.raises(NotImplementedError):
        sketcher.finalize()

import numpy as np

from utils.dttm import timed
from utils.errors import FootprintError, InvalidInputError, NumericalError
from utils.rng import stream


def test_stream_depends_only_on_seed_and_label():
    a = stream(7, "trials").standard_normal(5)
    b = stream(7, "trials").standard_normal(5)
    c = stream(7, "other").standard_normal(5)
    d = stream(8, "trials").standard_normal(5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)


def test_footprint_error_lists_sorted_indices():
    error = FootprintError({9: "bad", 2: "worse"})
    assert isinstance(error, NumericalError)
    assert error.indices == [2, 9]
    assert "[2, 9]" in str(error)


def test_invalid_input_is_value_error():
    assert issubclass(InvalidInputError, ValueError)


def test_timed_accumulates():
    record = {}
    with timed(record, "solve"):
        pass
    with timed(record, "solve"):
        pass
    assert record["solve"] >= 0.0
    assert list(record) == ["solve"]

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from symrank1 import TensorFormatError, format_tensor, parse_tensor, read_tensor, write_tensor


def test_parse_with_comments():
    text = "# header\n3\n2 2 2\n1 0 0 0\n# middle\n0 0 0 -1.5e-3\n"
    T = parse_tensor(text)
    assert T.shape == (2, 2, 2)
    assert T[0, 0, 0] == 1.0 and T[1, 1, 1] == -1.5e-3


def test_round_trip_file(tmp_path):
    a = np.random.default_rng(0).standard_normal((2, 3, 4))
    path = tmp_path / "t.txt"
    write_tensor(path, a, comment="random")
    assert np.array_equal(read_tensor(path).array, a)


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 3), st.integers(1, 3)),
              elements=st.floats(allow_nan=False, allow_infinity=False)))
def test_round_trip_bit_exact(a):
    back = parse_tensor(format_tensor(a)).array
    assert back.tobytes() == a.tobytes()


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("", 1, 1),
        ("x\n", 1, 1),
        ("2\n2 0\n", 2, 3),
        ("2\n2 2\n1 2 3 oops\n", 3, 7),
        ("2\n2 2\n1 2 3\n", 3, 1),
        ("2\n2 2\n1 2 3 4 5\n", 3, 9),
        ("1\n2\nnan 1\n", 3, 1),
    ],
)
def test_errors_carry_position(text, line, column):
    with pytest.raises(TensorFormatError) as err:
        parse_tensor(text)
    assert err.value.line == line and err.value.column == column
    assert f"line {line}, column {column}" in str(err.value)

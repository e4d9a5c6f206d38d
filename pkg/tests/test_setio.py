import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilbohr.errors import ParseError
from nilbohr.setcore import WindowedSet
from nilbohr.setio import dumps, loads, parse_set_file, serialize_set_file


def test_parse_format_definition():
    s = loads("#window 0 10\n2-4\n7\n")
    assert (s.lo, s.hi) == (0, 10)
    assert s.members() == [2, 3, 4, 7]


def test_empty_body():
    s = loads("#window -3 8\n")
    assert not s and (s.lo, s.hi) == (-3, 8)


def test_overlapping_ranges_union():
    assert loads("#window 0 20\n1-5\n3-8\n").members() == list(range(1, 9))


def test_negative_members():
    s = loads("#window -10 5\n-7--5\n-1\n0-2\n")
    assert s.members() == [-7, -6, -5, -1, 0, 1, 2]
    assert loads(dumps(s)) == s


@pytest.mark.parametrize("text, lineno", [
    ("", 1),
    ("0 10\n1\n", 1),
    ("#window 0 10\nabc\n", 2),
    ("#window 0 10\n1\n\n12\n", 4),
    ("#window 0 10\n5-3\n", 2),
    ("#window 10 0\n", 1),
])
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as info:
        loads(text)
    assert info.value.lineno == lineno


def test_canonical_serialization():
    s = WindowedSet.from_iterable([1, 2, 3, 5, 9, 10], 0, 12)
    assert dumps(s) == "#window 0 12\n1-3\n5\n9-10\n"


@given(st.sets(st.integers(-40, 40)), st.integers(-50, 0), st.integers(0, 50))
def test_round_trip(xs, lo, hi):
    s = WindowedSet.from_iterable(xs, lo, hi)
    assert loads(dumps(s)) == s


def test_file_round_trip(tmp_path):
    s = WindowedSet.from_iterable(range(0, 1000, 5), 0, 1001)
    path = tmp_path / "fives.set"
    serialize_set_file(s, path)
    assert parse_set_file(path) == s

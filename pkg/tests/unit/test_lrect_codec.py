import pytest

from perfect_latin.core.exceptions import LrectParseError
from perfect_latin.services.generator_service import generator_service
from perfect_latin.services.lrect_codec import format_lrect, parse_lrect, read_lrect, write_lrect
from perfect_latin.services.rectangle_service import rectangle_service

pytestmark = pytest.mark.unit


def test_parse_worked_example(fixtures_dir, cyclic5):
    assert read_lrect(fixtures_dir / "cyclic5.lrect") == cyclic5


def test_format_is_byte_exact(fixtures_dir, cyclic5):
    expected = (fixtures_dir / "cyclic5.lrect").read_text()
    assert format_lrect(cyclic5) == expected


def test_missing_trailing_newline_accepted():
    assert parse_lrect("2 2\n0 1\n1 0").to_lists() == [[0, 1], [1, 0]]


@pytest.mark.parametrize("text,line,column,message", [
    ("", 1, 1, "missing header"),
    ("2\n0 1\n", 1, 1, "header must have 2 fields"),
    ("2 2\n0 1\n1 0\nextra\n", 4, 1, "trailing garbage"),
    ("2 2\n0 1\n1 0\n\n", 4, 1, "trailing garbage"),
    ("3 3\n0 1 2\n", 3, 1, "expected 3 grid lines"),
    ("2 3\n0 1 2\n1 2\n", 3, 4, "expected 3 symbols"),
    ("2 2\n0 x\n1 0\n", 2, 3, "invalid token"),
    ("1 2\n0  1\n", 2, 3, "empty field"),
    ("2 2\n0 1\n0 1\n", 3, 1, "column-repeat"),
    ("1 3\n0 1 1\n", 2, 5, "row-not-permutation"),
    ("0 3\n", 1, 1, "row count"),
    ("1 2\n0 99999999999999999999999\n", 2, 3, "exceeds the maximum"),
    ("1 70000\n0\n", 1, 3, "exceeds the maximum"),
    ("1 2\n1 " + "0" * 5000 + "1\n", 2, 3, "row-not-permutation"),
])
def test_parse_diagnostics(text, line, column, message):
    """Test every rejection names the 1-based line and column"""
    with pytest.raises(LrectParseError) as exc:
        parse_lrect(text)
    assert (exc.value.line, exc.value.column) == (line, column)
    assert message in exc.value.message


def test_trailing_garbage_fixture(fixtures_dir):
    with pytest.raises(LrectParseError) as exc:
        read_lrect(fixtures_dir / "trailing_garbage.lrect")
    assert exc.value.line == 4


def test_round_trip_over_random_isotopies(rng, random_isotopy):
    for n in range(1, 14):
        for m in (1, (n + 1) // 2, n):
            rect = random_isotopy(rectangle_service.truncate_rows(generator_service.cyclic(n), m), rng)
            assert parse_lrect(format_lrect(rect)) == rect


def test_write_then_read(tmp_path):
    rect = generator_service.cyclic(7)
    path = tmp_path / "c7.lrect"
    write_lrect(rect, path)
    assert read_lrect(path) == rect


def test_non_ascii_byte_located(tmp_path):
    path = tmp_path / "bad.lrect"
    path.write_bytes(b"1 2\n0 \xff\n")
    with pytest.raises(LrectParseError) as exc:
        read_lrect(path)
    assert (exc.value.line, exc.value.column) == (2, 3)
    assert "non-ASCII" in exc.value.message

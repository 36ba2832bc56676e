import pytest

from fivepillars.dates import normalize_date_text
from fivepillars.types import DateValue


@pytest.mark.parametrize("text,expected", [
    ("August 17, 2013", [DateValue(2013, 8, 17)]),
    ("in 2013", [DateValue(2013)]),
    ("no date here", []),
    ("17 August 2013", [DateValue(2013, 8, 17)]),
    ("Aug. 17 2013", [DateValue(2013, 8, 17)]),
    ("August 2013", [DateValue(2013, 8)]),
    ("2013-08-17", [DateValue(2013, 8, 17)]),
    ("2013-08", [DateValue(2013, 8)]),
    ("the 3rd June 2020 ceremony", [DateValue(2020, 6, 3)]),
    ("May 1st, 2019", [DateValue(2019, 5, 1)]),
])
def test_single_forms(text, expected):
    assert normalize_date_text(text) == expected


def test_range_parses_both_endpoints():
    assert normalize_date_text("between 2020 and 2022") == [DateValue(2020), DateValue(2022)]


def test_multiple_dates_in_order():
    got = normalize_date_text("First August 17, 2013, later June 2014, then 2016.")
    assert got == [DateValue(2013, 8, 17), DateValue(2014, 6), DateValue(2016)]


def test_duplicates_collapse():
    assert normalize_date_text("2013 or 2013") == [DateValue(2013)]


def test_full_date_not_double_counted_as_year():
    assert normalize_date_text("August 17, 2013") == [DateValue(2013, 8, 17)]


def test_out_of_range_years_ignored():
    assert normalize_date_text("year 0999 and 2101 are out, 2500 too") == []
    assert normalize_date_text("but 1000 is in") == [DateValue(1000)]


def test_invalid_calendar_dates_skipped():
    # Feb 30 never parses; the year survives as a bare-year match.
    assert DateValue(2013) in normalize_date_text("February 30, 2013")


def test_empty_input():
    assert normalize_date_text("") == []


def test_output_always_valid():
    # parsing arbitrary text never yields an invariant-violating value
    for text in ["13/13/2013", "0000", "month 45 2013", "2013-13-40"]:
        for d in normalize_date_text(text):
            assert 1000 <= d.year <= 2100
            if d.month is not None:
                assert 1 <= d.month <= 12

import json

import pytest
from hypothesis import given, strategies as st

from fivepillars.types import (
    CaseResult,
    DateValue,
    EvidenceItem,
    ImageCase,
    LocationValue,
    PillarAnswers,
    Provenance,
    SplitSpec,
    ValidationError,
)


class TestDateValue:
    def test_valid_forms(self):
        assert DateValue(2013).granularity == "year"
        assert DateValue(2013, 8).granularity == "month"
        assert DateValue(2013, 8, 17).granularity == "day"

    @pytest.mark.parametrize("args", [
        (999,), (2101,), (2013, 13), (2013, 0), (2013, 2, 30), (2013, None, 5), (2020, 4, 31),
    ])
    def test_invariants_rejected(self, args):
        with pytest.raises(ValidationError):
            DateValue(*args)

    def test_leap_day(self):
        assert DateValue(2020, 2, 29).day == 29
        with pytest.raises(ValidationError):
            DateValue(2021, 2, 29)

    def test_str_and_roundtrip(self):
        d = DateValue(2013, 8, 17)
        assert str(d) == "2013-08-17"
        assert str(DateValue(2013, 8)) == "2013-08"
        assert str(DateValue(2013)) == "2013"
        assert DateValue.from_dict(d.to_dict()) == d


class TestLocationValue:
    def test_requires_text(self):
        with pytest.raises(ValidationError):
            LocationValue(text="  ")

    def test_coord_ranges(self):
        with pytest.raises(ValidationError):
            LocationValue(text="x", coords=(95.0, 0.0))
        with pytest.raises(ValidationError):
            LocationValue(text="x", coords=(0.0, float("nan")))
        ok = LocationValue(text="x", coords=(1, 2))
        assert ok.coords == (1.0, 2.0)


class TestPillarAnswers:
    def test_sentinel_maps_to_absent(self):
        a = PillarAnswers(source="Not enough information.", motivation="Not enough information")
        assert a.source is None and a.motivation is None

    def test_empty_string_rejected(self):
        with pytest.raises(ValidationError):
            PillarAnswers(source="")

    def test_defaults(self):
        a = PillarAnswers()
        assert a.provenance is Provenance.UNKNOWN
        assert a.date == () and a.location == ()


class TestEvidenceItem:
    def test_hostname_derived(self):
        item = EvidenceItem(url="https://News.Example.com/a", retrieval_rank=0)
        assert item.hostname == "news.example.com"

    def test_bad_url(self):
        with pytest.raises(ValidationError):
            EvidenceItem(url="not a url", retrieval_rank=0)

    def test_roundtrip(self):
        item = EvidenceItem(
            url="https://x.example/a", retrieval_rank=3, title="t",
            publication_date=DateValue(2020, 1, 2), body_text="words",
            image_urls=("https://x.example/i.png",), image_captions=("cap",),
        )
        assert EvidenceItem.from_dict(item.to_dict()) == item


class TestSplitSpec:
    def test_ordering_enforced(self):
        with pytest.raises(ValidationError):
            SplitSpec(DateValue(2022, 9, 20), DateValue(2022, 5, 31), DateValue(2023, 12, 28))

    def test_default(self):
        spec = SplitSpec.default()
        assert str(spec.train_end) == "2022-05-31"
        assert str(spec.val_end) == "2022-09-20"
        assert str(spec.test_end) == "2023-12-28"


# Serialization round-trips must be identity on every field.

dates = st.builds(
    DateValue,
    st.integers(1000, 2100),
    st.one_of(st.none(), st.integers(1, 12)),
    st.none(),
)
locations = st.builds(
    LocationValue,
    st.text(min_size=1, max_size=10).filter(lambda s: s.strip()),
    st.one_of(st.none(), st.tuples(st.floats(-90, 90), st.floats(-180, 180))),
    st.one_of(st.none(), st.text(min_size=1, max_size=6)),
)
answers = st.builds(
    PillarAnswers,
    st.sampled_from(list(Provenance)),
    st.one_of(st.none(), st.text(min_size=1, max_size=12).filter(lambda s: s.strip())),
    st.lists(dates, max_size=3),
    st.lists(locations, max_size=3),
    st.one_of(st.none(), st.text(min_size=1, max_size=12).filter(lambda s: s.strip())),
)


@given(answers)
def test_pillar_answers_roundtrip(a):
    encoded = json.dumps(a.to_dict())
    assert PillarAnswers.from_dict(json.loads(encoded)) == a


def test_case_roundtrip(cases_by_id):
    for case in cases_by_id.values():
        assert ImageCase.from_dict(json.loads(json.dumps(case.to_dict()))) == case


def test_case_result_roundtrip():
    r = CaseResult(
        case_id="c", predicted=PillarAnswers(provenance="Yes", source="s"),
        raw_answers={"source": "s"}, evidence_used=["https://e.example/1"],
        demonstrations_used=["t1"], prompts={"source": "p"},
        errors=[("stage", "msg")], stages=["a", "b"],
    )
    assert CaseResult.from_dict(json.loads(json.dumps(r.to_dict()))) == r


def test_fc_date_must_be_day_granular(cases_by_id):
    case = cases_by_id["case-01"]
    with pytest.raises(ValidationError):
        ImageCase.from_dict({**case.to_dict(), "fc_publication_date": {"year": 2020, "month": None, "day": None}})

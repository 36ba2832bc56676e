import json

import pytest

from fivepillars.corpus import CorpusError, assign_splits, load_corpus, save_corpus
from fivepillars.types import DateValue, ImageCase, Split, SplitSpec


def test_fixture_corpus_loads_cleanly(fixtures_dir):
    errors = []
    cases = load_corpus(fixtures_dir / "corpus.jsonl", errors=errors)
    assert len(cases) == 12
    assert errors == []


def test_empty_file(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    assert load_corpus(path) == []


def test_invalid_record_reported_with_line_number(fixtures_dir, tmp_path):
    lines = (fixtures_dir / "corpus.jsonl").read_text().splitlines()
    record = json.loads(lines[0])
    record["fc_publication_date"]["month"] = 13
    path = tmp_path / "bad.jsonl"
    path.write_text(lines[1] + "\n" + json.dumps(record) + "\n")
    errors = []
    cases = load_corpus(path, errors=errors)
    assert len(cases) == 1
    assert len(errors) == 1
    assert errors[0].line_number == 2
    assert "month" in errors[0].message


def test_unreadable_file_fatal(tmp_path):
    with pytest.raises(CorpusError):
        load_corpus(tmp_path / "missing.jsonl")


def test_duplicate_ids_fatal(fixtures_dir, tmp_path):
    line = (fixtures_dir / "corpus.jsonl").read_text().splitlines()[0]
    path = tmp_path / "dup.jsonl"
    path.write_text(line + "\n" + line + "\n")
    with pytest.raises(CorpusError):
        load_corpus(path)


def test_save_load_roundtrip(corpus, tmp_path):
    path = tmp_path / "copy.jsonl"
    save_corpus(corpus, path)
    again = load_corpus(path)
    assert again == corpus
    # byte-identical when saved twice
    save_corpus(again, tmp_path / "copy2.jsonl")
    assert (tmp_path / "copy.jsonl").read_bytes() == (tmp_path / "copy2.jsonl").read_bytes()


def _case(case_id: str, date: DateValue) -> ImageCase:
    return ImageCase(
        id=case_id, image_ref="x.png", fc_article_url="https://fc.example/a",
        fc_publication_date=date,
    )


class TestAssignSplits:
    def test_boundaries(self):
        cases = [
            _case("a", DateValue(2022, 1, 15)),
            _case("b", DateValue(2022, 5, 31)),
            _case("c", DateValue(2022, 6, 1)),
            _case("d", DateValue(2023, 1, 1)),
        ]
        out = {c.id: c.split for c in assign_splits(cases)}
        assert out == {"a": Split.TRAIN, "b": Split.TRAIN, "c": Split.VAL, "d": Split.TEST}

    def test_beyond_test_end_goes_to_test_with_warning(self, caplog):
        cases = [_case("z", DateValue(2024, 6, 1))]
        with caplog.at_level("WARNING"):
            out = assign_splits(cases)
        assert out[0].split is Split.TEST
        assert any("beyond the test end" in r.message for r in caplog.records)

    def test_partition_complete_and_deterministic(self, corpus):
        first = assign_splits(corpus)
        second = assign_splits(corpus)
        assert [c.split for c in first] == [c.split for c in second]
        assert all(c.split in (Split.TRAIN, Split.VAL, Split.TEST) for c in first)

    def test_fixture_split_counts(self, corpus):
        counts = {}
        for case in corpus:
            counts[case.split] = counts.get(case.split, 0) + 1
        assert counts == {Split.TRAIN: 6, Split.VAL: 1, Split.TEST: 5}

    def test_custom_spec(self):
        spec = SplitSpec(DateValue(2020, 1, 1), DateValue(2021, 1, 1), DateValue(2022, 1, 1))
        case = _case("a", DateValue(2020, 6, 1))
        assert assign_splits([case], spec)[0].split is Split.VAL

"""NDJSON loading, the seeded split, and the word histogram."""

import json
from collections import Counter

import pytest

from policygrader.classify import PointLabel
from policygrader.dataset import (
    Dataset,
    DatasetError,
    LabeledPoint,
    SplitMix64,
    SplitSpec,
    load,
    split,
    word_histogram,
)


def write_ndjson(path, records):
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record) + "\n")
    return str(path)


def make_points(n):
    return [
        {"point": ["good", "neutral", "bad", "blocker"][i % 4],
         "quoteDoc": "Privacy Policy",
         "quoteText": f"synthetic sentence number {i}"}
        for i in range(n)
    ]


class TestLoad:
    def test_parses_records(self, tmp_path):
        path = write_ndjson(tmp_path / "d.ndjson", [
            {"point": "bad", "quoteDoc": "Privacy Policy",
             "quoteText": "Genetic Information is collected and may be shared."},
        ])
        ds = load(path)
        assert ds.points == (
            LabeledPoint(
                label=PointLabel.BAD,
                quote_doc="Privacy Policy",
                quote_text="Genetic Information is collected and may be shared.",
            ),
        )
        assert ds.source == path

    def test_extra_keys_ignored(self, tmp_path):
        path = write_ndjson(tmp_path / "d.ndjson", [
            {"point": "good", "quoteDoc": "ToS", "quoteText": "x", "case": "ignored", "id": 7},
        ])
        assert load(path).points[0].label is PointLabel.GOOD

    def test_unknown_label_names_value_and_line(self, tmp_path):
        path = write_ndjson(tmp_path / "d.ndjson", [
            {"point": "good", "quoteDoc": "d", "quoteText": "x"},
            {"point": "terrible", "quoteDoc": "d", "quoteText": "y"},
        ])
        with pytest.raises(DatasetError, match=r":2: .*'terrible'"):
            load(path)

    def test_malformed_json_names_line(self, tmp_path):
        path = tmp_path / "d.ndjson"
        path.write_text('{"point": "good", "quoteDoc": "d", "quoteText": "x"}\n{oops\n')
        with pytest.raises(DatasetError, match=r":2: malformed JSON"):
            load(str(path))

    def test_missing_key_names_line(self, tmp_path):
        path = write_ndjson(tmp_path / "d.ndjson", [{"point": "good", "quoteDoc": "d"}])
        with pytest.raises(DatasetError, match=r":1: missing key"):
            load(path)

    def test_empty_quote_text_rejected(self, tmp_path):
        path = write_ndjson(tmp_path / "d.ndjson", [
            {"point": "good", "quoteDoc": "d", "quoteText": ""},
        ])
        with pytest.raises(DatasetError, match="non-empty"):
            load(path)

    def test_non_object_line_rejected(self, tmp_path):
        path = tmp_path / "d.ndjson"
        path.write_text("[1, 2, 3]\n")
        with pytest.raises(DatasetError, match="expected a JSON object"):
            load(str(path))

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "d.ndjson"
        path.write_text("")
        with pytest.raises(DatasetError, match="no records"):
            load(str(path))

    def test_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "d.ndjson"
        path.write_text('\n{"point": "good", "quoteDoc": "d", "quoteText": "x"}\n\n')
        assert len(load(str(path)).points) == 1

    def test_missing_file(self):
        with pytest.raises(DatasetError, match="not found"):
            load("/nonexistent/dataset.ndjson")


class TestSplitMix64:
    def test_reference_sequence_for_seed_zero(self):
        # Published reference outputs of SplitMix64 with seed 0.
        rng = SplitMix64(0)
        assert rng.next_u64() == 0xE220A8397B1DCDAF
        assert rng.next_u64() == 0x6E789E6AA1B965F4
        assert rng.next_u64() == 0x06C45D188009454F

    def test_independent_reference_implementation(self):
        # Same algorithm written a second time, compared over 200 draws.
        def reference(seed, count):
            mask = (1 << 64) - 1
            state = seed & mask
            out = []
            for _ in range(count):
                state = (state + 0x9E3779B97F4A7C15) & mask
                z = state
                z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
                z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
                out.append((z ^ (z >> 31)))
            return out

        for seed in (0, 1, 42, 2**63):
            rng = SplitMix64(seed)
            assert [rng.next_u64() for _ in range(200)] == reference(seed, 200)


class TestSplit:
    def test_forty_points_split_32_8(self, tmp_path):
        ds = load(write_ndjson(tmp_path / "d.ndjson", make_points(40)))
        train, test = split(ds, SplitSpec(train_fraction=0.8, seed=42))
        assert (len(train.points), len(test.points)) == (32, 8)

    def test_same_seed_identical_partitions(self, tmp_path):
        ds = load(write_ndjson(tmp_path / "d.ndjson", make_points(10)))
        a = split(ds, SplitSpec(seed=7))
        b = split(ds, SplitSpec(seed=7))
        assert a[0].points == b[0].points and a[1].points == b[1].points

    def test_different_seeds_differ_but_partition_either_way(self, tmp_path):
        ds = load(write_ndjson(tmp_path / "d.ndjson", make_points(10)))
        a = split(ds, SplitSpec(seed=1))
        b = split(ds, SplitSpec(seed=2))
        assert a[0].points != b[0].points
        for train, test in (a, b):
            assert Counter(train.points) + Counter(test.points) == Counter(ds.points)

    def test_partition_no_loss_no_duplication(self, tmp_path):
        ds = load(write_ndjson(tmp_path / "d.ndjson", make_points(23)))
        train, test = split(ds, SplitSpec(seed=3))
        assert len(train.points) + len(test.points) == 23
        assert Counter(train.points) + Counter(test.points) == Counter(ds.points)

    def test_too_few_points(self):
        ds = Dataset(points=(LabeledPoint(PointLabel.GOOD, "d", "x"),), source="s")
        with pytest.raises(DatasetError, match="at least 2"):
            split(ds, SplitSpec())

    def test_sources_are_tagged(self, tmp_path):
        ds = load(write_ndjson(tmp_path / "d.ndjson", make_points(4)))
        train, test = split(ds, SplitSpec())
        assert train.source.endswith("#train") and test.source.endswith("#test")

    def test_invalid_fraction(self):
        with pytest.raises(ValueError, match="train_fraction"):
            SplitSpec(train_fraction=1.0)


class TestWordHistogram:
    @staticmethod
    def dataset_from_texts(texts):
        points = tuple(
            LabeledPoint(PointLabel.NEUTRAL, "d", text) for text in texts
        )
        return Dataset(points=points, source="mem")

    def test_hand_binning(self):
        ds = self.dataset_from_texts(["one two three", "a b c d e f g"])
        assert word_histogram(ds, 5) == [(0, 1), (5, 1)]

    def test_zero_bins_included(self):
        ds = self.dataset_from_texts(["w " * 12])  # 12 words -> bin 10
        assert word_histogram(ds, 5) == [(0, 0), (5, 0), (10, 1)]

    def test_total_equals_point_count(self):
        texts = ["w " * n for n in (1, 4, 9, 33, 50, 50, 51)]
        ds = self.dataset_from_texts(texts)
        hist = word_histogram(ds, 10)
        assert sum(count for _, count in hist) == len(texts)

    def test_counts_raw_text_not_cleaned(self):
        # Markup tokens count as words: the histogram mirrors the data as received.
        ds = self.dataset_from_texts(["<strong>Two words</strong> here"])
        assert word_histogram(ds, 10) == [(0, 1)]
        assert len(ds.points[0].quote_text.split()) == 3

    def test_bin_width_validated(self):
        ds = self.dataset_from_texts(["x"])
        with pytest.raises(ValueError, match="bin_width"):
            word_histogram(ds, 0)


def test_mini_corpus_fixture_shape(mini_corpus_path):
    ds = load(mini_corpus_path)
    assert len(ds.points) == 40
    by_label = Counter(p.label for p in ds.points)
    assert all(by_label[label] == 10 for label in PointLabel)

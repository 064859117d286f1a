import io
import json

import pytest

from sparp.evaluation import MetricsReport, MetricsRow, RelevanceCriteria, SplitSpec, run_experiment
from sparp.io import (
    TABLE_I_COUNTS,
    ParseError,
    SynthesisParams,
    anchored_histogram,
    dump_contacts,
    dump_profiles,
    export_report,
    generate_synthetic,
    load_contacts,
    load_dataset,
    load_personality,
    read_report,
)
from sparp.model import TRAITS, ContactRecord, PersonalityVector, validate_dataset


class TestLoaders:
    def test_contact_row(self):
        assert load_contacts(b"A,B,past,80,7") == [ContactRecord("A", "B", "past", 80.0, 7)]

    def test_contact_header_skipped(self):
        data = b"participant_a,participant_b,epoch,duration_minutes,frequency\nA,B,present,5.5,1\n"
        assert load_contacts(io.BytesIO(data)) == [ContactRecord("A", "B", "present", 5.5, 1)]

    def test_unknown_epoch(self):
        with pytest.raises(ParseError, match="line 1: unknown epoch") as exc:
            load_contacts(b"A,B,yesterday,80,7")
        assert exc.value.line == 1

    @pytest.mark.parametrize("row, msg", [
        (b"A,B,past,-1,7", "negative"),
        (b"A,B,past,5,-7", "negative"),
        (b"A,B,past,5", "expected 5 fields"),
        (b"A,B,past,x,1", "not a number"),
        (b"A,B,past,5,1\nB,A,past,10,2", "duplicate"),
    ])
    def test_contact_errors(self, row, msg):
        with pytest.raises(ParseError, match=msg):
            load_contacts(row)

    def test_empty_file(self):
        assert load_contacts(b"") == []

    def test_profile_row(self):
        assert load_personality(b"A,3,4,2,5,1") == {"A": PersonalityVector(3, 4, 2, 5, 1)}

    def test_profile_out_of_range(self):
        with pytest.raises(ParseError, match="rating out of range"):
            load_personality(b"A,3,4,2,5,6")

    def test_profile_duplicate(self):
        with pytest.raises(ParseError, match="duplicate participant"):
            load_personality(b"A,3,4,2,5,1\nA,1,1,1,1,1\n")

    def test_dataset_round_trip(self):
        d = generate_synthetic(SynthesisParams(n_participants=15, seed=8))
        back = load_dataset(dump_contacts(d.contacts), dump_profiles(d.profiles))
        assert set(back.contacts) == set(d.contacts)
        assert back.profiles == d.profiles
        assert validate_dataset(back) == []


def trait_counts(d, trait):
    counts = [0] * 5
    for v in d.profiles.values():
        counts[getattr(v, trait) - 1] += 1
    return tuple(counts)


def duration_hist(d, epoch):
    hist = {}
    for c in d.contacts:
        if c.epoch == epoch:
            hist[c.duration_minutes] = hist.get(c.duration_minutes, 0) + 1
    return hist


class TestGenerator:
    def test_default_marginals(self):
        d = generate_synthetic(SynthesisParams())
        assert len(d.participants) == 77
        assert trait_counts(d, "openness") == (9, 13, 27, 16, 12)
        for trait, row in zip(TRAITS, TABLE_I_COUNTS):
            assert trait_counts(d, trait) == row
        assert duration_hist(d, "past")[5.0] == 44
        assert duration_hist(d, "present")[80.0] == 27

    def test_histograms_exact_and_frequencies_capped(self):
        p = SynthesisParams(seed=11).resolved()
        d = generate_synthetic(p)
        assert duration_hist(d, "past") == {float(k): v for k, v in p.past_duration_histogram.items()}
        assert duration_hist(d, "present") == {float(k): v for k, v in p.present_duration_histogram.items()}
        assert all(1 <= c.frequency <= 7 for c in d.contacts)
        assert validate_dataset(d) == []

    def test_default_histogram_shape(self):
        h = anchored_histogram(77, 5, 44)
        assert sum(h.values()) == 77 and h[5] == 44
        assert set(h) <= set(range(5, 81, 5))

    def test_frequency_histogram_respected(self):
        p = SynthesisParams(n_participants=10, seed=2, past_duration_histogram={10: 3, 20: 2},
                            past_frequency_histogram={1: 4, 7: 1})
        d = generate_synthetic(p)
        freqs = sorted(c.frequency for c in d.contacts if c.epoch == "past")
        assert freqs == [1, 1, 1, 1, 7]

    def test_deterministic_bytes(self):
        a = generate_synthetic(SynthesisParams(seed=3))
        b = generate_synthetic(SynthesisParams(seed=3))
        assert dump_contacts(a.contacts) == dump_contacts(b.contacts)
        assert dump_profiles(a.profiles) == dump_profiles(b.profiles)
        c = generate_synthetic(SynthesisParams(seed=4))
        assert dump_contacts(a.contacts) != dump_contacts(c.contacts)

    def test_small_n_scales_tables(self):
        d = generate_synthetic(SynthesisParams(n_participants=10, seed=1))
        assert len(d.participants) == 10
        assert all(sum(trait_counts(d, t)) == 10 for t in TRAITS)
        assert validate_dataset(d) == []

    def test_histogram_too_large(self):
        with pytest.raises(ValueError, match="participants"):
            generate_synthetic(SynthesisParams(n_participants=5, past_duration_histogram={5: 6}))

    def test_bad_count_table(self):
        with pytest.raises(ValueError):
            generate_synthetic(SynthesisParams(n_participants=10, personality_counts=TABLE_I_COUNTS))


ROW = MetricsRow("sparp", 0.1, 0.8, 0.123456789, 1 - 0.123456789, (1 - 0.123456789) / 4, 81, 10)


class TestReportExport:
    def test_empty_csv_is_header_only(self):
        assert export_report(MetricsReport()) == b"method,beta,bucket,accuracy,mae,nmae,counts\n"

    def test_one_row_seven_fields(self):
        lines = export_report(MetricsReport((ROW,))).decode().splitlines()
        assert len(lines) == 2
        assert len(lines[1].split(",")) == 7

    @pytest.mark.parametrize("fmt", ["csv", "json"])
    def test_round_trip(self, fmt):
        d = generate_synthetic(SynthesisParams())
        report = run_experiment(d, [0.1, 0.3], ["sparp", "c1"], RelevanceCriteria("either", 0.4), SplitSpec(0.7, 5))
        back = read_report(export_report(report, fmt), fmt)
        assert back.rows == report.rows
        if fmt == "json":
            assert back == report
            assert json.loads(export_report(report, "json"))["criteria"] == {"mode": "either", "tau": 0.4}

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            export_report(MetricsReport(), "xml")

"""CSV/JSON ingestion and export, and the seeded synthetic dataset generator."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import BinaryIO, Iterable, Mapping

import numpy as np

from .evaluation import MetricsReport, MetricsRow, RelevanceCriteria, SplitSpec
from .hybrid import Recommendation
from .model import (
    EPOCHS,
    RATING_MAX,
    RATING_MIN,
    TRAITS,
    ConferenceConfig,
    ContactRecord,
    Dataset,
    PersonalityVector,
    pairs_of,
)

CONTACT_COLUMNS = ("participant_a", "participant_b", "epoch", "duration_minutes", "frequency")
PROFILE_COLUMNS = ("participant_id",) + TRAITS
REPORT_COLUMNS = ("method", "beta", "bucket", "accuracy", "mae", "nmae", "counts")
RECOMMENDATION_COLUMNS = ("for", "suggested", "score", "tie", "personality", "bucket")

# Rating counts per trait (rows) for ratings 1..5 (columns), 77 participants.
TABLE_I_COUNTS = (
    (9, 13, 27, 16, 12),
    (8, 14, 17, 19, 19),
    (12, 18, 14, 18, 15),
    (10, 12, 23, 19, 13),
    (13, 18, 16, 19, 11),
)
DEFAULT_N = 77
MAX_DURATION = 80
MAX_FREQUENCY = 7
DURATION_STEPS = tuple(range(5, MAX_DURATION + 1, 5))


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _text(source) -> str:
    if isinstance(source, (bytes, bytearray)):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _rows(source, header: tuple):
    """Yield (line_no, fields) for non-blank rows, skipping a matching header."""
    for line_no, row in enumerate(csv.reader(io.StringIO(_text(source))), start=1):
        if not row or all(not f.strip() for f in row):
            continue
        fields = [f.strip() for f in row]
        if line_no == 1 and tuple(fields) == header:
            continue
        yield line_no, fields


def load_contacts(source: BinaryIO | bytes | str) -> list[ContactRecord]:
    records, seen = [], set()
    for line, f in _rows(source, CONTACT_COLUMNS):
        if len(f) != len(CONTACT_COLUMNS):
            raise ParseError(line, f"expected {len(CONTACT_COLUMNS)} fields, got {len(f)}")
        a, b, epoch, dur, freq = f
        if epoch not in EPOCHS:
            raise ParseError(line, f"unknown epoch {epoch!r}")
        try:
            duration = float(dur)
        except ValueError:
            raise ParseError(line, f"duration {dur!r} is not a number") from None
        try:
            frequency = int(freq)
        except ValueError:
            raise ParseError(line, f"frequency {freq!r} is not an integer") from None
        if not duration >= 0 or frequency < 0:
            raise ParseError(line, "negative values are not allowed")
        if not a or not b:
            raise ParseError(line, "empty participant id")
        key = (min(a, b), max(a, b), epoch)
        if key in seen:
            raise ParseError(line, f"duplicate record for pair {key[0]}-{key[1]} ({epoch})")
        seen.add(key)
        records.append(ContactRecord(a, b, epoch, duration, frequency))
    return records


def load_personality(source: BinaryIO | bytes | str) -> dict[str, PersonalityVector]:
    profiles = {}
    for line, f in _rows(source, PROFILE_COLUMNS):
        if len(f) != len(PROFILE_COLUMNS):
            raise ParseError(line, f"expected {len(PROFILE_COLUMNS)} fields, got {len(f)}")
        pid, *raw = f
        if not pid:
            raise ParseError(line, "empty participant id")
        if pid in profiles:
            raise ParseError(line, f"duplicate participant {pid!r}")
        try:
            ratings = [int(r) for r in raw]
        except ValueError:
            raise ParseError(line, "ratings must be integers") from None
        for trait, r in zip(TRAITS, ratings):
            if not RATING_MIN <= r <= RATING_MAX:
                raise ParseError(line, f"rating out of range for {trait}: {r}")
        profiles[pid] = PersonalityVector(*ratings)
    return profiles


def load_dataset(contacts, profiles, config: ConferenceConfig | None = None) -> Dataset:
    """Build a dataset from the two CSV sources; participants are the profile ids."""
    profs = load_personality(profiles)
    return Dataset(tuple(profs), profs, tuple(load_contacts(contacts)), config or ConferenceConfig())


def _num(x: float) -> str:
    return repr(float(x)) if x != int(x) else str(int(x))


def dump_contacts(records: Iterable[ContactRecord]) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CONTACT_COLUMNS)
    for c in records:
        w.writerow((c.a, c.b, c.epoch, _num(c.duration_minutes), c.frequency))
    return buf.getvalue().encode("utf-8")


def dump_profiles(profiles: Mapping[str, PersonalityVector]) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PROFILE_COLUMNS)
    for pid in sorted(profiles):
        w.writerow((pid, *profiles[pid].as_tuple()))
    return buf.getvalue().encode("utf-8")


def dump_recommendations(recs: Iterable[Recommendation]) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RECOMMENDATION_COLUMNS)
    for r in recs:
        w.writerow((r.for_participant, r.suggested, f"{r.merged_score:.6f}",
                    f"{r.tie_component:.6f}", f"{r.personality_component:.6f}", f"{r.bucket:.1f}"))
    return buf.getvalue().encode("utf-8")


# --- reports ---------------------------------------------------------------

def export_report(r: MetricsReport, format: str = "csv") -> bytes:
    """Serialize a report.

    CSV has one row per (method, beta, bucket) with the counts packed as
    ``successful/recommendations``. JSON additionally records the relevance
    criteria, split and notes.
    """
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for row in r.rows:
            w.writerow((row.method, repr(row.beta), repr(row.bucket), repr(row.accuracy),
                        repr(row.mae), repr(row.nmae),
                        f"{row.successful_count}/{row.recommendation_count}"))
        return buf.getvalue().encode("utf-8")
    if format == "json":
        doc = {
            "criteria": asdict(r.criteria),
            "split": asdict(r.split),
            "rows": [asdict(row) for row in r.rows],
            "notes": list(r.notes),
        }
        return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")


def read_report(source, format: str = "csv") -> MetricsReport:
    text = _text(source)
    if format == "json":
        doc = json.loads(text)
        return MetricsReport(
            tuple(MetricsRow(**row) for row in doc["rows"]),
            RelevanceCriteria(**doc["criteria"]),
            SplitSpec(**doc["split"]),
            tuple(doc["notes"]),
        )
    if format != "csv":
        raise ValueError(f"unknown report format {format!r}")
    rows = []
    for line, f in _rows(text, REPORT_COLUMNS):
        if len(f) != len(REPORT_COLUMNS):
            raise ParseError(line, f"expected {len(REPORT_COLUMNS)} fields, got {len(f)}")
        hits, total = (int(x) for x in f[6].split("/"))
        rows.append(MetricsRow(f[0], float(f[1]), float(f[2]), float(f[3]), float(f[4]),
                               float(f[5]), total, hits))
    return MetricsReport(tuple(rows))


# --- synthetic data --------------------------------------------------------

def _largest_remainder(weights, total: int) -> list[int]:
    w = np.asarray(weights, dtype=float)
    exact = w / w.sum() * total
    counts = np.floor(exact).astype(int)
    short = total - counts.sum()
    # Stable sort keeps ties in column order.
    for i in np.argsort(-(exact - counts), kind="stable")[:short]:
        counts[i] += 1
    return counts.tolist()


def default_personality_counts(n: int = DEFAULT_N) -> tuple:
    if n == DEFAULT_N:
        return TABLE_I_COUNTS
    return tuple(tuple(_largest_remainder(row, n)) for row in TABLE_I_COUNTS)


def anchored_histogram(n: int, anchor_minutes: int, anchor_count: int) -> dict[int, int]:
    """Duration histogram with ``n`` records: a quoted anchor, the rest spread evenly.

    The anchor count is scaled by ``n / 77``. Leftover mass is split evenly
    over the other 5-minute steps up to 80, remainders going to the
    shortest durations first.
    """
    anchor = min(n, round(anchor_count * n / DEFAULT_N))
    others = [m for m in DURATION_STEPS if m != anchor_minutes]
    base, extra = divmod(n - anchor, len(others))
    hist = {m: base + (1 if k < extra else 0) for k, m in enumerate(others)}
    hist[anchor_minutes] = anchor
    return {m: hist[m] for m in DURATION_STEPS if hist[m] > 0}


@dataclass
class SynthesisParams:
    """Marginals for :func:`generate_synthetic`.

    Histograms map a value (minutes, or contact count) to the number of
    contact records that carry it. ``None`` selects the defaults derived
    from ``n_participants``. Frequency histograms, when omitted, are
    replaced by uniform draws from 1..7.
    """

    n_participants: int = DEFAULT_N
    personality_counts: tuple | None = None
    past_duration_histogram: dict | None = None
    present_duration_histogram: dict | None = None
    past_frequency_histogram: dict | None = None
    present_frequency_histogram: dict | None = None
    seed: int = 42
    config: ConferenceConfig = field(default_factory=ConferenceConfig)

    def resolved(self) -> "SynthesisParams":
        n = self.n_participants
        return SynthesisParams(
            n,
            self.personality_counts or default_personality_counts(n),
            self.past_duration_histogram or anchored_histogram(n, 5, 44),
            self.present_duration_histogram or anchored_histogram(n, 80, 27),
            self.past_frequency_histogram,
            self.present_frequency_histogram,
            self.seed,
            self.config,
        )


def participant_ids(n: int) -> list[str]:
    width = max(2, len(str(n)))
    return [f"P{i:0{width}d}" for i in range(1, n + 1)]


def _expand(hist: Mapping) -> list:
    return [v for v in sorted(hist) for _ in range(int(hist[v]))]


def generate_synthetic(p: SynthesisParams) -> Dataset:
    """Seeded dataset whose trait counts and duration histograms match ``p`` exactly."""
    p = p.resolved()
    n = p.n_participants
    if n < 2:
        raise ValueError("need at least 2 participants")
    counts = np.asarray(p.personality_counts)
    if counts.shape != (len(TRAITS), RATING_MAX - RATING_MIN + 1):
        raise ValueError("personality_counts must be a 5x5 table")
    if (counts < 0).any() or (counts.sum(axis=1) != n).any():
        raise ValueError("each personality-count row must be non-negative and sum to n_participants")

    rng = np.random.default_rng(p.seed)
    ids = participant_ids(n)
    columns = []
    for row in counts:
        ratings = np.repeat(np.arange(RATING_MIN, RATING_MAX + 1), row)
        columns.append(rng.permutation(ratings))
    profiles = {pid: PersonalityVector(*(int(col[i]) for col in columns)) for i, pid in enumerate(ids)}

    all_pairs = pairs_of(ids)
    contacts = []
    for epoch, dur_hist, freq_hist in (
        ("past", p.past_duration_histogram, p.past_frequency_histogram),
        ("present", p.present_duration_histogram, p.present_frequency_histogram),
    ):
        if any(v < 0 for v in dur_hist.values()):
            raise ValueError("histogram counts must be non-negative")
        durations = _expand(dur_hist)
        if len(durations) > n:
            raise ValueError(f"{epoch} duration histogram holds {len(durations)} records "
                             f"but only {n} participants are available")
        if any(m < 0 or m > MAX_DURATION for m in dur_hist):
            raise ValueError(f"durations must lie in [0, {MAX_DURATION}] minutes")
        if freq_hist is None:
            freqs = rng.integers(1, MAX_FREQUENCY + 1, size=len(durations)).tolist()
        else:
            freqs = _expand(freq_hist)
            if len(freqs) != len(durations):
                raise ValueError(f"{epoch} frequency histogram must hold as many records as durations")
            if any(f < 1 or f > MAX_FREQUENCY for f in freqs):
                raise ValueError(f"frequencies must lie in [1, {MAX_FREQUENCY}]")
            freqs = rng.permutation(freqs).tolist()
        chosen = rng.choice(len(all_pairs), size=len(durations), replace=False)
        for k, dur, freq in zip(sorted(chosen.tolist()), rng.permutation(durations).tolist(), freqs):
            a, b = all_pairs[k]
            contacts.append(ContactRecord(a, b, epoch, float(dur), int(freq)))
    return Dataset(tuple(ids), profiles, tuple(contacts), p.config)


def marginal_summary(d: Dataset) -> str:
    """Human-readable trait and duration tables for a dataset."""
    lines = [f"participants: {len(d.participants)}", "trait counts (ratings 1..5):"]
    for trait in TRAITS:
        counts = [0] * (RATING_MAX - RATING_MIN + 1)
        for vec in d.profiles.values():
            counts[getattr(vec, trait) - RATING_MIN] += 1
        lines.append(f"  {trait:<18}" + " ".join(f"{c:>3}" for c in counts))
    for epoch in EPOCHS:
        hist: dict = {}
        for c in d.contacts:
            if c.epoch == epoch:
                hist[c.duration_minutes] = hist.get(c.duration_minutes, 0) + 1
        body = ", ".join(f"{_num(m)}:{hist[m]}" for m in sorted(hist))
        lines.append(f"{epoch} durations (minutes:records): {body}")
    return "\n".join(lines)

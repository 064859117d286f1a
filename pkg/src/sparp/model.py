"""Domain types shared by the tie, personality and recommendation engines."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

ParticipantId = Hashable
Pair = tuple

EPOCHS = ("past", "present")
NORMALIZATION_MODES = ("raw_sum", "minmax")
TRAITS = (
    "openness",
    "extroversion",
    "agreeableness",
    "conscientiousness",
    "neuroticism",
)
RATING_MIN = 1
RATING_MAX = 5


def make_pair(a: ParticipantId, b: ParticipantId) -> Pair:
    """Canonical (sorted) form of an unordered pair."""
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class PersonalityVector:
    """Big-Five trait ratings of one participant, each an integer in 1..5.

    Construction does not validate so that bad profiles can be reported by
    :func:`validate_dataset`; use :meth:`violations` or :meth:`check`.
    """

    openness: int
    extroversion: int
    agreeableness: int
    conscientiousness: int
    neuroticism: int

    @classmethod
    def from_sequence(cls, ratings: Sequence[int]) -> "PersonalityVector":
        if len(ratings) != len(TRAITS):
            raise ValueError(f"expected {len(TRAITS)} ratings, got {len(ratings)}")
        return cls(*ratings)

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, t) for t in TRAITS)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=np.int64)

    def violations(self) -> list[str]:
        out = []
        for trait in TRAITS:
            r = getattr(self, trait)
            if isinstance(r, bool) or not isinstance(r, (int, np.integer)):
                out.append(f"{trait} rating {r!r} is not an integer")
            elif not RATING_MIN <= r <= RATING_MAX:
                out.append(f"{trait} rating {r} out of range [{RATING_MIN},{RATING_MAX}]")
        return out

    def check(self) -> None:
        problems = self.violations()
        if problems:
            raise ValueError("invalid personality vector: " + "; ".join(problems))


@dataclass(frozen=True)
class ContactRecord:
    """Contact between two participants within one epoch."""

    a: ParticipantId
    b: ParticipantId
    epoch: str
    duration_minutes: float
    frequency: int

    @property
    def pair(self) -> Pair:
        return make_pair(self.a, self.b)


@dataclass(frozen=True)
class ConferenceConfig:
    """Run parameters.

    ``strict`` selects how raw ties above 1 are treated: strict mode raises,
    lenient mode clamps to 1 and warns.
    """

    total_time_minutes: float = 720.0
    beta: float = 0.1
    gamma: float = 0.8
    normalization_mode: str = "minmax"
    top_n: int | None = None
    strict: bool = True

    def violations(self) -> list[str]:
        out = []
        if not self.total_time_minutes > 0:
            out.append(f"total_time_minutes must be > 0, got {self.total_time_minutes}")
        if not 0.0 <= self.beta <= 1.0:
            out.append(f"beta must lie in [0,1], got {self.beta}")
        if not np.isfinite(self.gamma):
            out.append(f"gamma must be finite, got {self.gamma}")
        if self.normalization_mode not in NORMALIZATION_MODES:
            out.append(f"unknown normalization_mode {self.normalization_mode!r}")
        if self.top_n is not None and self.top_n < 1:
            out.append(f"top_n must be positive, got {self.top_n}")
        return out


@dataclass(frozen=True)
class Dataset:
    participants: tuple
    profiles: Mapping[ParticipantId, PersonalityVector]
    contacts: tuple = ()
    config: ConferenceConfig = field(default_factory=ConferenceConfig)

    def __post_init__(self):
        object.__setattr__(self, "participants", tuple(self.participants))
        object.__setattr__(self, "contacts", tuple(self.contacts))

    @cached_property
    def ids(self) -> tuple:
        """Participant ids in lexicographic order; matrix row order."""
        return tuple(sorted(self.participants))

    @cached_property
    def _contact_lookup(self) -> dict:
        return {(c.pair, c.epoch): c for c in self.contacts}

    def contact(self, a: ParticipantId, b: ParticipantId, epoch: str) -> ContactRecord | None:
        return self._contact_lookup.get((make_pair(a, b), epoch))

    def with_config(self, **changes) -> "Dataset":
        from dataclasses import replace

        return replace(self, config=replace(self.config, **changes))

    def with_contacts(self, contacts: Iterable[ContactRecord]) -> "Dataset":
        return Dataset(self.participants, self.profiles, tuple(contacts), self.config)


@dataclass(frozen=True)
class Violation:
    record: str
    rule: str

    def __str__(self):
        return f"{self.record}: {self.rule}"


class PairScoreMatrix:
    """Symmetric participant-by-participant score matrix, NaN on the diagonal."""

    def __init__(self, ids: Sequence[ParticipantId], scores: np.ndarray):
        scores = np.array(scores, dtype=float)
        n = len(ids)
        if scores.shape != (n, n):
            raise ValueError(f"scores shape {scores.shape} does not match {n} participants")
        np.fill_diagonal(scores, np.nan)
        self.ids = tuple(ids)
        self.scores = scores
        self._index = {p: i for i, p in enumerate(self.ids)}

    @classmethod
    def zeros(cls, ids: Sequence[ParticipantId]) -> "PairScoreMatrix":
        return cls(ids, np.zeros((len(ids), len(ids))))

    def __len__(self):
        return len(self.ids)

    def __repr__(self):
        return f"PairScoreMatrix(n={len(self.ids)})"

    def index(self, pid: ParticipantId) -> int:
        return self._index[pid]

    def get(self, a: ParticipantId, b: ParticipantId) -> float:
        return float(self.scores[self._index[a], self._index[b]])

    def upper(self) -> np.ndarray:
        """Off-diagonal values in pair_index order (row-major upper triangle)."""
        iu = np.triu_indices(len(self.ids), k=1)
        return self.scores[iu]

    def off_diagonal_mask(self) -> np.ndarray:
        return ~np.eye(len(self.ids), dtype=bool)

    def is_symmetric(self) -> bool:
        mask = self.off_diagonal_mask()
        return bool(np.array_equal(self.scores[mask], self.scores.T[mask]))


def validate_dataset(d: Dataset) -> list[Violation]:
    """Check every dataset invariant and return the violations found.

    The result is sorted, so it does not depend on record order, and an
    empty list means the dataset is well formed.
    """
    out: set[Violation] = set()
    seen: set = set()
    for p in d.participants:
        if p is None or (isinstance(p, str) and not p.strip()):
            out.add(Violation("participant", "empty participant id"))
        elif p in seen:
            out.add(Violation(f"participant {p}", "duplicate participant id"))
        seen.add(p)

    for p in seen:
        if p not in d.profiles:
            out.add(Violation(f"participant {p}", "missing personality profile"))
    for p, vec in d.profiles.items():
        if p not in seen:
            out.add(Violation(f"profile {p}", "profile for unknown participant"))
        for problem in vec.violations():
            out.add(Violation(f"profile {p}", problem))

    keys: dict = {}
    for c in d.contacts:
        label = f"contact {c.a}-{c.b} ({c.epoch})"
        for member in (c.a, c.b):
            if member not in seen:
                out.add(Violation(label, f"unknown participant {member}"))
        if c.a == c.b:
            out.add(Violation(label, "pair members must be distinct"))
        if c.epoch not in EPOCHS:
            out.add(Violation(label, f"unknown epoch {c.epoch!r}"))
        if not c.duration_minutes >= 0:
            out.add(Violation(label, "negative duration"))
        if not c.frequency >= 0:
            out.add(Violation(label, "negative frequency"))
        if c.frequency == 0 and c.duration_minutes != 0:
            out.add(Violation(label, "zero frequency with non-zero duration"))
        try:
            key = (make_pair(c.a, c.b), c.epoch)
        except TypeError:
            out.add(Violation(label, "incomparable participant ids"))
            continue
        keys[key] = keys.get(key, 0) + 1
    for (pair, epoch), count in keys.items():
        if count > 1:
            out.add(Violation(f"contact {pair[0]}-{pair[1]} ({epoch})", "duplicate record for pair and epoch"))

    for problem in d.config.violations():
        out.add(Violation("config", problem))
    return sorted(out, key=lambda v: (v.record, v.rule))


def pairs_of(ids: Iterable[ParticipantId]) -> list[Pair]:
    ids = sorted(ids)
    if len(ids) < 2:
        raise ValueError("insufficient participants")
    return list(combinations(ids, 2))


def pair_index(d: Dataset) -> list[Pair]:
    """All unordered distinct pairs, lexicographic by id."""
    return pairs_of(d.participants)

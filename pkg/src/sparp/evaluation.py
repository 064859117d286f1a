"""Train/test protocol, accuracy metrics and the beta-sweep experiment.

Protocol: unordered pairs are split at random into train and test sets. A
method sees every past-epoch record plus the present-epoch records of train
pairs; present-epoch records of test pairs are held out. Recommendations are
only emitted for test pairs and judged against the held-out data.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .baselines import c1_score, c2_score
from .hybrid import Recommendation, recommend, score_dataset
from .model import (
    RATING_MAX,
    RATING_MIN,
    Dataset,
    PairScoreMatrix,
    make_pair,
    pair_index,
)
from .personality import personality_matrix
from .ties import epoch_ties

METHODS = ("sparp", "c1", "c2")
RELEVANCE_MODES = ("test_tie", "test_personality", "either")
DEFAULT_BUCKETS = (0.8, 0.9, 1.0)
DEFAULT_BETAS = (0.1, 0.2, 0.3, 0.4)


@dataclass(frozen=True)
class SplitSpec:
    train_ratio: float = 0.7
    seed: int = 42

    def __post_init__(self):
        if not 0.0 < self.train_ratio < 1.0:
            raise ValueError(f"train_ratio must lie in (0,1), got {self.train_ratio}")


@dataclass(frozen=True)
class RelevanceCriteria:
    """When a recommended pair counts as a success.

    ``test_tie`` compares the held-out present tie, scaled by the largest
    present tie in the dataset, with ``tau``; ``test_personality`` compares
    the Pearson personality similarity; ``either`` accepts whichever passes.
    """

    mode: str = "either"
    tau: float = 0.5

    def __post_init__(self):
        if self.mode not in RELEVANCE_MODES:
            raise ValueError(f"unknown relevance mode {self.mode!r}")
        if not np.isfinite(self.tau):
            raise ValueError("tau must be finite")


@dataclass(frozen=True)
class DatasetView:
    """A dataset restricted to a subset of its pairs."""

    dataset: Dataset
    pairs: frozenset

    def __contains__(self, pair) -> bool:
        return make_pair(*pair) in self.pairs

    def __len__(self):
        return len(self.pairs)

    def contacts(self, epoch: str | None = None) -> list:
        return [c for c in self.dataset.contacts
                if c.pair in self.pairs and (epoch is None or c.epoch == epoch)]


@dataclass(frozen=True)
class MetricsRow:
    method: str
    beta: float
    bucket: float
    accuracy: float
    mae: float
    nmae: float
    recommendation_count: int
    successful_count: int


@dataclass(frozen=True)
class MetricsReport:
    rows: tuple = ()
    criteria: RelevanceCriteria = field(default_factory=RelevanceCriteria)
    split: SplitSpec = field(default_factory=SplitSpec)
    notes: tuple = ()

    def rows_for(self, method: str) -> list[MetricsRow]:
        return [r for r in self.rows if r.method == method]


def partition(items: Sequence, spec: SplitSpec) -> tuple[frozenset, frozenset]:
    """Seeded uniform split with ``round(train_ratio * len(items))`` train items."""
    if len(items) < 2:
        raise ValueError("need at least 2 pairs to split")
    k = round(spec.train_ratio * len(items))
    k = min(max(k, 1), len(items) - 1)
    order = np.random.default_rng(spec.seed).permutation(len(items))
    return frozenset(items[i] for i in order[:k]), frozenset(items[i] for i in order[k:])


def split_pairs(d: Dataset, spec: SplitSpec) -> tuple[DatasetView, DatasetView]:
    """Partition all pairs of ``d`` into (train, test) views."""
    train, test = partition(pair_index(d), spec)
    return DatasetView(d, train), DatasetView(d, test)


def training_dataset(test: DatasetView) -> Dataset:
    """The base dataset with the present-epoch records of test pairs removed."""
    d = test.dataset
    return d.with_contacts(c for c in d.contacts
                           if not (c.epoch == "present" and c.pair in test.pairs))


class RelevanceJudge:
    """Decides success for recommended test pairs under one criteria setting."""

    def __init__(self, test: DatasetView, crit: RelevanceCriteria):
        d = test.dataset
        self.test = test
        self.crit = crit
        present = epoch_ties(d, "present")
        top = np.nanmax(present.scores) if len(d.ids) > 1 else 0.0
        self._ties = present.scores / top if top > 0 else np.zeros_like(present.scores)
        self._pers = personality_matrix(d).scores
        self._index = {p: i for i, p in enumerate(d.ids)}

    def __call__(self, a, b) -> bool:
        if (a, b) not in self.test:
            raise ValueError(f"pair {a}-{b} is not in the test view")
        i, j = self._index[a], self._index[b]
        tie_ok = self._ties[i, j] >= self.crit.tau
        pers_ok = self._pers[i, j] >= self.crit.tau
        if self.crit.mode == "test_tie":
            return bool(tie_ok)
        if self.crit.mode == "test_personality":
            return bool(pers_ok)
        return bool(tie_ok or pers_ok)


def _accuracy(recs: Sequence[Recommendation], judge: RelevanceJudge) -> tuple[float, int]:
    if not recs:
        raise ValueError("accuracy undefined on zero recommendations")
    hits = sum(judge(r.for_participant, r.suggested) for r in recs)
    return hits / len(recs), hits


def accuracy(recs: Sequence[Recommendation], test: DatasetView, crit: RelevanceCriteria) -> float:
    """Share of recommendations judged successful on the held-out test pairs."""
    if not recs:
        raise ValueError("accuracy undefined on zero recommendations")
    return _accuracy(recs, RelevanceJudge(test, crit))[0]


def mae(accuracy: float) -> float:
    if not 0.0 <= accuracy <= 1.0:
        raise ValueError(f"accuracy must lie in [0,1], got {accuracy}")
    return 1.0 - accuracy


def nmae(mae: float, r_min: float = RATING_MIN, r_max: float = RATING_MAX) -> float:
    if not r_max > r_min:
        raise ValueError(f"r_max must exceed r_min (got {r_min}, {r_max})")
    return mae / (r_max - r_min)


def method_scores(d: Dataset, method: str, beta: float) -> tuple[PairScoreMatrix, PairScoreMatrix | None, PairScoreMatrix | None]:
    """(merged, ties, personalities) for a method; baselines have no components."""
    if method == "sparp":
        ties, pers, merged = score_dataset(d, beta)
        return merged, ties, pers
    if method == "c1":
        return c1_score(d), None, None
    if method == "c2":
        return c2_score(d), None, None
    raise ValueError(f"unknown method {method!r}")


def experiment_recommendations(test: DatasetView, method: str, beta: float) -> list[Recommendation]:
    """Recommendations a method makes for test pairs after fitting on the training data."""
    train_data = training_dataset(test)
    merged, ties, pers = method_scores(train_data, method, beta)
    ids = merged.ids
    keep = np.zeros((len(ids), len(ids)), dtype=bool)
    index = {p: i for i, p in enumerate(ids)}
    for a, b in test.pairs:
        keep[index[a], index[b]] = keep[index[b], index[a]] = True
    masked = PairScoreMatrix(ids, np.where(keep, merged.scores, np.nan))
    cfg = test.dataset.config
    return recommend(masked, cfg.gamma, cfg.top_n, ties=ties, personalities=pers)


def _cell(test, judge, method, beta, buckets):
    recs = experiment_recommendations(test, method, beta)
    rows, notes = [], []
    for bucket in buckets:
        group = [r for r in recs if r.bucket == bucket]
        if not group:
            notes.append(f"{method} beta={beta} bucket={bucket}: no recommendations, row omitted")
            continue
        acc, hits = _accuracy(group, judge)
        err = mae(acc)
        rows.append(MetricsRow(method, beta, bucket, acc, err, nmae(err), len(group), hits))
    return rows, notes


def run_experiment(d: Dataset, betas: Iterable[float] = DEFAULT_BETAS,
                   methods: Iterable[str] = METHODS,
                   crit: RelevanceCriteria = RelevanceCriteria(),
                   spec: SplitSpec = SplitSpec(), *,
                   buckets: Sequence[float] = DEFAULT_BUCKETS,
                   workers: int | None = None) -> MetricsReport:
    """Evaluate every (method, beta) cell and collect per-bucket metrics.

    Cells are independent, so ``workers > 1`` runs them on a thread pool; the
    report is identical to a serial run.
    """
    methods = list(methods)
    betas = list(betas)
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}")
    for b in betas:
        if not 0.0 <= b <= 1.0:
            raise ValueError(f"beta must lie in [0,1], got {b}")
    _, test = split_pairs(d, spec)
    judge = RelevanceJudge(test, crit)
    cells = [(m, b) for m in methods for b in betas]

    def run(cell):
        return _cell(test, judge, cell[0], cell[1], tuple(buckets))

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, cells))
    else:
        results = [run(c) for c in cells]
    rows = tuple(r for cell_rows, _ in results for r in cell_rows)
    notes = tuple(n for _, cell_notes in results for n in cell_notes)
    return MetricsReport(rows, crit, spec, notes)

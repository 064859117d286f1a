"""Merging tie and personality scores into participant recommendations."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import NORMALIZATION_MODES, Dataset, PairScoreMatrix, ParticipantId
from .personality import personality_matrix
from .ties import tie_matrix


@dataclass(frozen=True)
class Recommendation:
    for_participant: ParticipantId
    suggested: ParticipantId
    merged_score: float
    tie_component: float = math.nan
    personality_component: float = math.nan

    @property
    def bucket(self) -> float:
        return round(self.merged_score, 1)


def minmax(m: PairScoreMatrix) -> PairScoreMatrix:
    """Rescale off-diagonal entries linearly onto [0, 1]; constant maps to 0.5."""
    vals = m.scores[m.off_diagonal_mask()]
    if vals.size == 0:
        return PairScoreMatrix(m.ids, m.scores)
    lo, hi = vals.min(), vals.max()
    if hi == lo:
        return PairScoreMatrix(m.ids, np.full_like(m.scores, 0.5))
    return PairScoreMatrix(m.ids, (m.scores - lo) / (hi - lo))


def merge_scores(ties: PairScoreMatrix, personalities: PairScoreMatrix,
                 mode: str = "minmax") -> PairScoreMatrix:
    if ties.ids != personalities.ids:
        raise ValueError("dimension mismatch: tie and personality matrices index different participants")
    if mode not in NORMALIZATION_MODES:
        raise ValueError(f"unknown normalization mode {mode!r}")
    merged = PairScoreMatrix(ties.ids, ties.scores + personalities.scores)
    return minmax(merged) if mode == "minmax" else merged


def recommend(merged: PairScoreMatrix, gamma: float, top_n: int | None = None, *,
              ties: PairScoreMatrix | None = None,
              personalities: PairScoreMatrix | None = None) -> list[Recommendation]:
    """Emit every suggestion whose merged score reaches ``gamma``.

    Lists are grouped by participant in id order, each sorted by score
    descending then partner id ascending, and cut to ``top_n`` if given.
    Component matrices, when passed, fill in the score breakdown.
    """
    if top_n is not None and top_n < 1:
        raise ValueError("top_n must be positive")
    ids = merged.ids
    S = merged.scores
    out = []
    for i, a in enumerate(ids):
        # Ties in score fall back to index order, which is ascending id order.
        hits = [j for j in np.flatnonzero(S[i] >= gamma) if j != i]
        hits.sort(key=lambda j: -S[i, j])
        if top_n is not None:
            hits = hits[:top_n]
        for j in hits:
            out.append(Recommendation(
                a, ids[j], float(S[i, j]),
                float(ties.scores[i, j]) if ties is not None else math.nan,
                float(personalities.scores[i, j]) if personalities is not None else math.nan,
            ))
    return out


def score_dataset(d: Dataset, beta: float | None = None) -> tuple[PairScoreMatrix, PairScoreMatrix, PairScoreMatrix]:
    """(ties, personalities, merged) under the dataset's configuration."""
    ties = tie_matrix(d, beta)
    pers = personality_matrix(d)
    return ties, pers, merge_scores(ties, pers, d.config.normalization_mode)


def run_pipeline(d: Dataset) -> list[Recommendation]:
    cfg = d.config
    ties, pers, merged = score_dataset(d)
    return recommend(merged, cfg.gamma, cfg.top_n, ties=ties, personalities=pers)

"""Social-tie strength from contact logs, blended across past and present."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .model import Dataset, Pair, PairScoreMatrix, pair_index


class TieOverflowError(ValueError):
    pass


class TieOverflowWarning(UserWarning):
    pass


@dataclass(frozen=True)
class TieEstimate:
    pair: Pair
    past_tie: float
    present_tie: float
    estimated_tie: float


def raw_tie(frequency, duration, total_time, *, strict=True, pair=None) -> float:
    """Tie strength of one epoch: frequency times duration over the window.

    Args:
        frequency: number of contacts in the epoch.
        duration: contact duration in minutes.
        total_time: length of the observation window in minutes.
        strict: raise on values above 1 instead of clamping them.
        pair: only used to name the offending pair in errors.
    """
    if not total_time > 0:
        raise ValueError(f"total_time must be positive, got {total_time}")
    if frequency < 0 or duration < 0:
        raise ValueError(f"negative contact data (frequency={frequency}, duration={duration})")
    tie = frequency * duration / total_time
    if tie > 1.0:
        where = f" for pair {pair[0]}-{pair[1]}" if pair is not None else ""
        if strict:
            raise TieOverflowError(f"raw tie {tie:.6g} exceeds 1{where}")
        warnings.warn(f"raw tie {tie:.6g} clamped to 1{where}", TieOverflowWarning, stacklevel=2)
        tie = 1.0
    return tie


def estimate_tie(past, present, beta):
    """Blend past and present ties; beta is the weight given to the past."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0,1], got {beta}")
    return beta * past + (1 - beta) * present


def epoch_ties(d: Dataset, epoch: str, *, strict: bool | None = None) -> PairScoreMatrix:
    """Raw tie matrix for one epoch; pairs without a record get 0."""
    strict = d.config.strict if strict is None else strict
    ids = d.ids
    index = {p: i for i, p in enumerate(ids)}
    out = np.zeros((len(ids), len(ids)))
    # Sorted so the first overflow reported is independent of record order.
    records = sorted((c for c in d.contacts if c.epoch == epoch), key=lambda c: c.pair)
    for c in records:
        tie = raw_tie(c.frequency, c.duration_minutes, d.config.total_time_minutes,
                      strict=strict, pair=c.pair)
        i, j = index[c.a], index[c.b]
        out[i, j] = out[j, i] = tie
    return PairScoreMatrix(ids, out)


def tie_matrix(d: Dataset, beta: float | None = None, *, strict: bool | None = None) -> PairScoreMatrix:
    beta = d.config.beta if beta is None else beta
    past = epoch_ties(d, "past", strict=strict)
    present = epoch_ties(d, "present", strict=strict)
    return PairScoreMatrix(d.ids, estimate_tie(past.scores, present.scores, beta))


def tie_estimates(d: Dataset, beta: float | None = None) -> list[TieEstimate]:
    beta = d.config.beta if beta is None else beta
    past = epoch_ties(d, "past")
    present = epoch_ties(d, "present")
    out = []
    for a, b in pair_index(d):
        p, q = past.get(a, b), present.get(a, b)
        out.append(TieEstimate((a, b), p, q, estimate_tie(p, q, beta)))
    return out

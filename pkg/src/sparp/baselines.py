"""Scoring analogs of the two contact-network comparison methods.

Both are reconstructions from prose descriptions, not published formulas:

* ``c1_score`` -- tie strength plus a triadic-closure bonus for pairs that
  share strongly tied neighbours.
* ``c2_score`` -- aggregated face-to-face time (link weight = total duration).

Only present-epoch records are used.
"""

from __future__ import annotations

import numpy as np

from .model import Dataset, PairScoreMatrix

STRONG_TIE = 0.5


def _present(d: Dataset, weight) -> np.ndarray:
    ids = d.ids
    index = {p: i for i, p in enumerate(ids)}
    w = np.zeros((len(ids), len(ids)))
    for c in d.contacts:
        if c.epoch == "present":
            i, j = index[c.a], index[c.b]
            w[i, j] = w[j, i] = weight(c)
    return w


def _scaled_by_max(w: np.ndarray) -> np.ndarray:
    top = w.max() if w.size else 0.0
    return w / top if top > 0 else w


def c1_score(d: Dataset, lam: float = 0.5) -> PairScoreMatrix:
    """Normalized contact weight plus ``lam`` times the shared strong-neighbour fraction."""
    n = len(d.ids)
    w = _scaled_by_max(_present(d, lambda c: c.duration_minutes * c.frequency))
    strong = (w >= STRONG_TIE).astype(np.int64)
    np.fill_diagonal(strong, 0)
    common = strong @ strong
    closure = common / (n - 2) if n > 2 else np.zeros_like(w)
    return PairScoreMatrix(d.ids, np.clip(w + lam * closure, 0.0, 1.0))


def c2_score(d: Dataset) -> PairScoreMatrix:
    return PairScoreMatrix(d.ids, _scaled_by_max(_present(d, lambda c: c.duration_minutes)))

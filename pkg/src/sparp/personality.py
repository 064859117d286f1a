"""Pearson similarity between Big-Five rating vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Dataset, Pair, PairScoreMatrix, PersonalityVector


@dataclass(frozen=True)
class PersonalitySimilarity:
    pair: Pair | None
    value: float
    degenerate: bool = False


def pearson(x, y) -> tuple[float, bool]:
    """Pearson correlation of two real vectors.

    Returns ``(value, degenerate)``; a zero-variance input gives ``(0.0, True)``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("vectors must be one-dimensional and of equal length")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        return 0.0, True
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r)), False


def _integer_pearson(num: int, va: int, vb: int) -> float:
    # num, va, vb are the exact integer moments n*sum(ab) - sum(a)sum(b), etc.
    r = num / math.sqrt(va * vb)
    return min(1.0, max(-1.0, r))


def pearson_personality(a: PersonalityVector, b: PersonalityVector) -> PersonalitySimilarity:
    """Similarity of two validated profiles.

    Integer ratings allow the co-moments to be formed exactly, so identical,
    reversed and shifted profiles give exactly 1, -1 and 1.
    """
    a.check()
    b.check()
    x = [int(v) for v in a.as_tuple()]
    y = [int(v) for v in b.as_tuple()]
    n = len(x)
    va = n * sum(v * v for v in x) - sum(x) ** 2
    vb = n * sum(v * v for v in y) - sum(y) ** 2
    if va == 0 or vb == 0:
        return PersonalitySimilarity(None, 0.0, True)
    num = n * sum(p * q for p, q in zip(x, y)) - sum(x) * sum(y)
    return PersonalitySimilarity(None, _integer_pearson(num, va, vb), False)


def personality_matrix(d: Dataset) -> PairScoreMatrix:
    ids = d.ids
    for p in ids:
        d.profiles[p].check()
    X = np.array([d.profiles[p].as_tuple() for p in ids], dtype=np.int64)
    n = X.shape[1]
    s = X.sum(axis=1)
    num = n * (X @ X.T) - np.outer(s, s)
    var = np.diag(num).copy()
    out = np.zeros((len(ids), len(ids)))
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            if var[i] and var[j]:
                out[i, j] = out[j, i] = _integer_pearson(int(num[i, j]), int(var[i]), int(var[j]))
    return PairScoreMatrix(ids, out)


def degenerate_participants(d: Dataset) -> list:
    """Participants whose ratings are all equal (similarity fixed at 0)."""
    return [p for p in d.ids if len(set(d.profiles[p].as_tuple())) == 1]

import numpy as np
import pytest

from sparp.baselines import c1_score, c2_score
from sparp.io import SynthesisParams, generate_synthetic
from sparp.model import ContactRecord, Dataset, PersonalityVector

PROFILE = PersonalityVector(1, 2, 3, 4, 5)


def dataset(contacts, ids="ABCD"):
    return Dataset(tuple(ids), {p: PROFILE for p in ids}, tuple(contacts))


def test_no_contacts_all_zero():
    d = dataset([])
    assert np.all(c1_score(d).upper() == 0)
    assert np.all(c2_score(d).upper() == 0)


def test_single_max_pair_is_one():
    d = dataset([ContactRecord("A", "B", "present", 80, 7)], ids="AB")
    assert c1_score(d).get("A", "B") == 1.0
    assert c2_score(d).get("A", "B") == 1.0


def test_triadic_closure_bonus():
    d = dataset([ContactRecord("A", "C", "present", 80, 7), ContactRecord("B", "C", "present", 80, 7)])
    # one shared strong neighbour out of n - 2 = 2 candidates
    assert c1_score(d).get("A", "B") == pytest.approx(0.5 * 1 / 2)
    assert c1_score(d, lam=0.0).get("A", "B") == 0.0


def test_c2_duration_ratio():
    d = dataset([ContactRecord("A", "B", "present", 80, 1), ContactRecord("C", "D", "present", 40, 7)])
    m = c2_score(d)
    assert (m.get("A", "B"), m.get("C", "D")) == (1.0, 0.5)


def test_past_epoch_ignored():
    d = dataset([ContactRecord("A", "B", "past", 80, 7)])
    assert np.all(c1_score(d).upper() == 0)
    assert np.all(c2_score(d).upper() == 0)


def test_c2_ignores_frequency_unlike_c1():
    d = dataset([ContactRecord("A", "B", "present", 40, 1), ContactRecord("C", "D", "present", 40, 6)])
    c1, c2 = c1_score(d), c2_score(d)
    assert c2.get("A", "B") == c2.get("C", "D")
    assert c1.get("A", "B") != c1.get("C", "D")


@pytest.mark.parametrize("score", [c1_score, c2_score])
def test_symmetric_unit_range(score):
    m = score(generate_synthetic(SynthesisParams(seed=5)))
    vals = m.upper()
    assert m.is_symmetric()
    assert vals.min() >= 0.0 and vals.max() <= 1.0

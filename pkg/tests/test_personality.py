import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sparp.model import Dataset, PersonalityVector
from sparp.personality import degenerate_participants, pearson, pearson_personality, personality_matrix

from oracles import pearson_by_definition

ratings = st.lists(st.integers(1, 5), min_size=5, max_size=5)
reals = st.lists(st.floats(-100, 100, allow_nan=False), min_size=5, max_size=5)


def pv(*r):
    return PersonalityVector(*r)


def test_identical_reversed_shifted():
    assert pearson_personality(pv(5, 4, 3, 2, 1), pv(5, 4, 3, 2, 1)).value == 1.0
    assert pearson_personality(pv(5, 4, 3, 2, 1), pv(1, 2, 3, 4, 5)).value == -1.0
    assert pearson_personality(pv(5, 4, 3, 4, 5), pv(4, 3, 2, 3, 4)).value == 1.0


def test_zero_variance_is_neutral_and_flagged():
    s = pearson_personality(pv(3, 3, 3, 3, 3), pv(1, 5, 2, 4, 3))
    assert s.value == 0.0 and s.degenerate


def test_invalid_vector_rejected():
    with pytest.raises(ValueError, match="out of range"):
        pearson_personality(pv(0, 1, 2, 3, 4), pv(1, 2, 3, 4, 5))


@given(ratings, ratings)
def test_symmetric_and_bounded(a, b):
    ab = pearson_personality(pv(*a), pv(*b))
    ba = pearson_personality(pv(*b), pv(*a))
    assert ab.value == ba.value
    assert -1.0 <= ab.value <= 1.0
    assert ab.value == pytest.approx(pearson_by_definition(a, b), abs=1e-12)


@given(reals, reals, st.floats(0.01, 50), st.floats(-50, 50))
def test_affine_invariance_real_valued(x, y, scale, shift):
    base, degenerate = pearson(x, y)
    # Near-constant vectors lose all precision under rescaling.
    if degenerate or np.std(x) < 1e-3 or np.std(y) < 1e-3:
        return
    moved, _ = pearson([scale * v + shift for v in x], y)
    assert moved == pytest.approx(base, abs=1e-9)


def test_affine_invariance_fixed_case():
    x = [0.3, 1.7, -2.2, 4.0, 0.9]
    y = [1.1, 0.2, 0.5, 3.3, -1.0]
    base, _ = pearson(x, y)
    moved, _ = pearson([2.5 * v + 7.0 for v in x], y)
    assert moved == pytest.approx(base, abs=1e-12)


def dataset_of(profiles):
    return Dataset(tuple(profiles), profiles)


def test_matrix_shared_profile():
    m = personality_matrix(dataset_of({p: pv(1, 2, 4, 4, 5) for p in "ABCD"}))
    assert np.all(m.upper() == 1.0)


def test_matrix_reversed_pair():
    m = personality_matrix(dataset_of({"A": pv(5, 4, 3, 2, 1), "B": pv(1, 2, 3, 4, 5)}))
    assert m.get("A", "B") == -1.0


@pytest.mark.parametrize("n, seed", [(5, 0), (20, 1)])
def test_matrix_matches_oracle(n, seed):
    rng = np.random.default_rng(seed)
    profiles = {f"P{i:02d}": pv(*rng.integers(1, 6, size=5).tolist()) for i in range(n)}
    m = personality_matrix(dataset_of(profiles))
    assert m.is_symmetric()
    for a in profiles:
        for b in profiles:
            if a != b:
                expected = pearson_by_definition(profiles[a].as_tuple(), profiles[b].as_tuple())
                assert abs(m.get(a, b) - expected) <= 1e-12


def test_degenerate_participants_listed():
    d = dataset_of({"A": pv(2, 2, 2, 2, 2), "B": pv(1, 2, 3, 4, 5)})
    assert degenerate_participants(d) == ["A"]
    assert personality_matrix(d).get("A", "B") == 0.0

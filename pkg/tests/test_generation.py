import random
from fractions import Fraction as F

import pytest

from constitution.core import ParseError, delta_grid
from constitution.generation import Distribution, mixed_profile, random_profiles


def test_same_seed_same_profiles():
    assert random_profiles(9, 50, 3) == random_profiles(9, 50, 3)
    assert random_profiles(9, 50, 3) != random_profiles(9, 50, 4)


def test_uniform_stays_on_grid():
    grid = set(delta_grid(11))
    for p in random_profiles(11, 200, 1):
        assert p.n == 11 and set(p.ideals) <= grid


def test_clustered_peaks_are_snapped():
    dist = Distribution.parse("clustered(1/2:0.6, 0.7:0.4)")
    assert str(dist) == "clustered(1/2:3/5,7/10:2/5)"
    seen = set()
    for p in random_profiles(5, 200, 2, dist):
        seen.update(p.ideals)
    assert seen == {F(1, 2), F(3, 5)}


def test_clustered_weights_roughly_respected():
    values = [x for p in random_profiles(10, 400, 5, "clustered(1/2:0.9,9/10:0.1)") for x in p.ideals]
    share = values.count(F(1, 2)) / len(values)
    assert 0.85 < share < 0.95


@pytest.mark.parametrize(
    "text", ["gaussian", "clustered()", "clustered(1/2)", "clustered(1/2:0)", "clustered(1/2:-1)", "clustered(x:1)"]
)
def test_bad_distributions(text):
    with pytest.raises(ParseError):
        Distribution.parse(text)


def test_mixed_profiles_deterministic_and_on_grid():
    a, b = random.Random(8), random.Random(8)
    grid = set(delta_grid(13))
    for i in range(100):
        p = mixed_profile(a, 13, i)
        assert p == mixed_profile(b, 13, i)
        assert set(p.ideals) <= grid

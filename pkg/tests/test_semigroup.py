import random
from math import gcd
from functools import reduce

import pytest

from SemigroupManager import (
    NumericalSemigroup,
    SemigroupError,
    SymmetrizationError,
    symmetrization_sweep,
    symmetrize,
)

SBAR_197 = (36, 48, 50, 52, 56, 60, 66, 67, 107, 121, 129, 135)
SBAR_199 = (36, 48, 50, 52, 56, 60, 66, 69, 109, 123, 131, 137)


def test_gap_data_of_seven_generated_semigroup(base_semigroup):
    data = base_semigroup.gap_data()
    assert data.frobenius == 65
    assert data.pseudo_frobenius == (65, 45, 38, 34, 31)
    assert data.type == 5
    assert data.genus == len(data.gaps)


def test_membership(base_semigroup):
    assert 18 in base_semigroup
    assert base_semigroup.contains(0)
    assert not base_semigroup.contains(65)
    assert not base_semigroup.contains(-3)
    assert all(base_semigroup.contains(n) for n in range(66, 200))


def test_generators_are_minimalized():
    semigroup = NumericalSemigroup([18, 36, 24, 42, 25, 26, 28, 30, 33])
    assert semigroup.generators == (18, 24, 25, 26, 28, 30, 33)
    assert semigroup.multiplicity == 18
    assert semigroup.embedding_dimension == 7


@pytest.mark.parametrize("generators", [[], [0, 3], [4, 6, 10]])
def test_invalid_generators_rejected(generators):
    with pytest.raises(SemigroupError):
        NumericalSemigroup(generators)


def test_small_semigroups():
    two_three = NumericalSemigroup([2, 3])
    assert two_three.frobenius() == 1
    assert two_three.is_symmetric()
    three_four_five = NumericalSemigroup([3, 4, 5])
    assert three_four_five.frobenius() == 2
    assert three_four_five.gap_data().pseudo_frobenius == (2, 1)
    assert not three_four_five.is_symmetric()


@pytest.mark.parametrize("gbar, expected", [(197, SBAR_197), (199, SBAR_199)])
def test_symmetrize_matches_listed_generators(base_semigroup, gbar, expected):
    result = symmetrize(base_semigroup, gbar)
    assert result.generators == expected
    assert result.is_symmetric()
    assert result.gap_data().type == 1


def test_symmetrized_frobenius(base_semigroup):
    assert base_semigroup.symmetrize(197).frobenius() == 197


def test_symmetrize_halves_back(base_semigroup):
    assert base_semigroup.symmetrize(199).halve() == base_semigroup


@pytest.mark.parametrize("gbar", [195, 198, 1])
def test_symmetrize_rejects_bad_gbar(base_semigroup, gbar):
    with pytest.raises(SymmetrizationError) as excinfo:
        symmetrize(base_semigroup, gbar)
    assert isinstance(excinfo.value, ValueError)


def test_sweep_covers_odd_values(base_semigroup):
    sweep = symmetrization_sweep(base_semigroup, 190, 221)
    assert [g for g, _ in sweep] == list(range(197, 222, 2))
    assert sweep[0][1] == SBAR_197
    assert sweep[1][1] == SBAR_199


def test_hilbert_series_is_indicator(base_semigroup):
    series = base_semigroup.hilbert_series(30)
    assert series.to_list() == [1 if base_semigroup.contains(n) else 0 for n in range(31)]
    assert series[18] == 1 and series[19] == 0


def test_symmetric_iff_type_one():
    rng = random.Random(20240601)
    checked = 0
    while checked < 50:
        generators = rng.sample(range(3, 25), rng.randint(2, 5))
        if reduce(gcd, generators) != 1:
            continue
        semigroup = NumericalSemigroup(generators)
        assert semigroup.is_symmetric() == (semigroup.gap_data().type == 1)
        checked += 1


def test_symmetrize_random_semigroups():
    rng = random.Random(7)
    for _ in range(20):
        generators = rng.sample(range(3, 15), 3)
        if reduce(gcd, generators) != 1:
            continue
        semigroup = NumericalSemigroup(generators)
        f = semigroup.frobenius()
        gbar = 3 * f + 1 if (3 * f + 1) % 2 else 3 * f + 2
        result = semigroup.symmetrize(gbar)
        assert result.is_symmetric()
        assert result.frobenius() == gbar
        assert result.halve() == semigroup


@pytest.mark.parametrize("gbar", [1, 3, 7])
def test_symmetrize_whole_of_n(gbar):
    naturals = NumericalSemigroup([1])
    assert naturals.frobenius() == -1
    result = naturals.symmetrize(gbar)
    assert result.generators == (2, gbar + 2)
    assert result.frobenius() == gbar
    assert result.halve() == naturals


def test_symmetrize_whole_of_n_rejects_negative_gbar():
    with pytest.raises(SymmetrizationError):
        NumericalSemigroup([1]).symmetrize(-1)


def _sums_of_generators(generators, limit):
    reachable = {0}
    for n in range(1, limit + 1):
        if any(n - g in reachable for g in generators):
            reachable.add(n)
    return reachable


@pytest.mark.parametrize("seed", range(10))
def test_membership_matches_generator_sums(seed):
    rng = random.Random(seed)
    generators = []
    while not generators or reduce(gcd, generators) != 1:
        generators = rng.sample(range(2, 40), rng.randint(2, 4))
    semigroup = NumericalSemigroup(generators)
    reachable = _sums_of_generators(generators, 200)
    assert [semigroup.contains(n) for n in range(201)] == [n in reachable for n in range(201)]

import random
from fractions import Fraction

import pytest

from SeriesManager import (
    S_HILBERT,
    T_HILBERT,
    BiSeries,
    LaurentCancellationError,
    NotAUnitError,
    PBWInversionError,
    RationalFn,
    SeriesError,
    UniSeries,
    assemble_theorem1,
    corollary_prefactor,
    factorizations_agree,
    golod,
    golod_quotient_series,
    gulliksen,
    koszul_dual_series,
    koszul_prefactor,
    levin_golod_m3,
    lofwall,
    module_series,
    module_series_bigraded,
    pbw_invert,
    pbw_product,
    trivial_extension_series,
)

ETA_DIMS = (6, 11, 11, 18, 38, 79, 158)


@pytest.fixture(scope="module")
def theorem1(koszul_dual):
    return assemble_theorem1(koszul_dual, 12, 24)


class TestUniSeries:
    def test_geometric_reciprocal(self):
        assert (1 / UniSeries([1, -1], 5)).to_list() == [1] * 6
        assert UniSeries([1, -2], 4).reciprocal().to_list() == [1, 2, 4, 8, 16]

    def test_truncation_is_minimum(self):
        assert (UniSeries([1, 1], 3) * UniSeries([1, 1], 5)).order == 3
        assert (UniSeries([1], 2) + UniSeries([1], 7)).order == 2

    def test_non_unit_rejected(self):
        with pytest.raises(NotAUnitError):
            UniSeries([2, 1], 3).reciprocal()

    def test_fractions_kept_exact(self):
        half = UniSeries([1, 1], 3) / 2
        assert half[0] == Fraction(1, 2)
        assert not half.is_integral()
        assert (half * 2).to_list() == [1, 1, 0, 0]

    def test_laurent_cancellation(self):
        assert UniSeries([0, 3, 4]).divide_by_z().to_list() == [3, 4]
        with pytest.raises(LaurentCancellationError):
            UniSeries([1, 3, 4]).divide_by_z()

    def test_negative_argument_and_shift(self):
        assert UniSeries([1, 6, 10, 1]).at_negative_argument().to_list() == [1, -6, 10, -1]
        assert UniSeries([1, 2, 3]).shift(1).to_list() == [0, 1, 2]

    def test_str(self):
        assert str(UniSeries([1, -1, 0, 2])) == "1 - z + 2z^3 + O(z^4)"


class TestRationalFn:
    def test_golden_series(self):
        assert RationalFn.parse("1", "1-3t+t^2").expand(5).to_list() == [1, 3, 8, 21, 55, 144]

    def test_implicit_multiplication(self):
        parsed = RationalFn.parse("1", "(1+t)(1-2t)^2(1-3t+t^2)")
        assert parsed == koszul_prefactor()
        assert parsed.expand(3).to_list() == [1, 6, 26, 95]

    def test_corollary_prefactor(self):
        assert corollary_prefactor().expand(3).to_list() == [1, 6, 25, 89]
        assert corollary_prefactor() * RationalFn.parse("1", "1-t^2") == koszul_prefactor()

    def test_cancellation_and_z_alias(self):
        assert RationalFn.parse("1-z^2", "1-z") == RationalFn.parse("1+t")
        assert RationalFn.parse("1-t^2", "1-t").denominator == [1]

    def test_zero_constant_denominator_rejected(self):
        with pytest.raises(SeriesError):
            RationalFn.parse("1", "t")


class TestPBW:
    def test_koszul_dual_product(self, koszul_dual):
        assert koszul_dual.to_list()[:4] == [1, 6, 26, 97]

    def test_invert_gives_eta_dimensions(self, koszul_dual):
        assert tuple(pbw_invert(koszul_dual, 7)) == ETA_DIMS

    def test_radical_marker(self, koszul_dual):
        difference = pbw_invert(koszul_dual, 20) - pbw_invert(koszul_prefactor().expand(20))
        assert difference[:2] == (0, 0)
        assert set(difference[2:]) == {2}

    def test_free_algebra_on_two_generators(self):
        assert tuple(pbw_invert(RationalFn.parse("1", "1-2t").expand(3))) == (2, 3, 2)

    def test_inversion_failure_degree(self):
        with pytest.raises(PBWInversionError) as excinfo:
            pbw_invert(UniSeries([1, 1, 1], 5))
        assert excinfo.value.degree == 3

    def test_roundtrip_random_dimensions(self):
        rng = random.Random(1234)
        for _ in range(100):
            order = rng.randint(1, 9)
            dims = tuple(rng.randint(0, 6) for _ in range(order))
            assert tuple(pbw_invert(pbw_product(dims, order))) == dims

    def test_two_factorizations_agree(self):
        assert factorizations_agree(20)


class TestTransforms:
    def test_golod_inverse_roundtrip(self):
        rng = random.Random(99)
        for _ in range(100):
            order = rng.randint(2, 8)
            series = UniSeries([1] + [rng.randint(-5, 5) for _ in range(order)], order)
            term = UniSeries([0] + [rng.randint(-3, 3) for _ in range(order)], order)
            assert golod(golod(series, term), -term) == series

    def test_levin_matches_lofwall(self, koszul_dual):
        p_s = lofwall(S_HILBERT, koszul_dual, 20)
        p_t = lofwall(T_HILBERT, koszul_dual, 20)
        assert levin_golod_m3(p_s) == p_t
        assert p_t.is_nonnegative_integral()

    def test_lofwall_low_coefficients(self, koszul_dual):
        p_s = lofwall(S_HILBERT, koszul_dual, 4)
        assert p_s.to_list()[:3] == [1, 6, 26]
        assert lofwall(RationalFn.parse("1+6t+10t^2+t^3"), koszul_dual, 4) == p_s

    def test_lofwall_needs_one_more_dual_coefficient(self):
        with pytest.raises(SeriesError):
            lofwall(S_HILBERT, koszul_dual_series(5), 5)

    def test_trivial_extension_matches_bigraded_route(self, theorem1, koszul_dual):
        p_s = lofwall(S_HILBERT, koszul_dual, 12)
        bigraded = gulliksen(theorem1.p_s_xy, module_series_bigraded(theorem1.p_s_xy))
        assert bigraded.specialize_y1() == trivial_extension_series(p_s)
        assert module_series(p_s)[0] == 5

    def test_golod_quotient_matches_levin(self, theorem1, koszul_dual):
        p_s = lofwall(S_HILBERT, koszul_dual, 12)
        assert golod_quotient_series(theorem1.p_s_xy).specialize_y1() == levin_golod_m3(p_s)


class TestBiSeries:
    def test_from_xy_specializes_back(self):
        series = UniSeries([1, 2, 3, 4], 3)
        assert BiSeries.from_xy(series, 3, 6).specialize_y1() == series

    def test_reciprocal(self):
        xy = BiSeries.monomial(1, 1, 4, 8)
        inverse = (1 - xy).reciprocal()
        assert inverse == BiSeries.from_xy(UniSeries([1] * 5), 4, 8)

    def test_divide_by_x_checks_cancellation(self):
        with pytest.raises(LaurentCancellationError):
            BiSeries.one(3, 3).divide_by_x()


class TestTheorem1:
    def test_all_identities_hold(self, theorem1):
        assert theorem1.passed, theorem1.checks

    def test_low_coefficients(self, theorem1):
        coefficients = theorem1.p_rbar197_z.to_list()
        assert coefficients[:3] == [1, 11, 109]
        assert all(isinstance(c, int) and c > 0 for c in coefficients[:13])

    def test_nonzero_divisor_factor(self, theorem1):
        z = UniSeries.monomial(1, 12)
        assert theorem1.p_r197_z == (1 + z) * theorem1.p_rbar197_z
        assert theorem1.p_r197_z[1] == 12

    def test_y_order_must_cover_support(self, koszul_dual):
        with pytest.raises(SeriesError):
            assemble_theorem1(koszul_dual, 12, 20)

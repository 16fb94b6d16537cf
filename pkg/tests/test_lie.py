from fractions import Fraction

import pytest

from LieExpressionManager import DegreeCapExceeded, Generator, LieEngineError, lie, parse_lie_expression, sq
from LieManager import (
    RADICAL_THREADS,
    EnvelopingAlgebra,
    GradedLieAlgebra,
    LieElement,
    LieSubspace,
    lambda_table,
    parse_thread,
)
from RowReductionManager import PrimeField
from SeriesManager import corollary_prefactor, koszul_prefactor, pbw_product

ETA_DIMS = [6, 11, 11, 18, 38, 79, 158]
ETA_BAR_DIMS = [6, 11, 9, 16, 36, 77, 156]
IDEAL_TABLE = [1, 53, 20, 15, 20, 15, 1, 52, 72, 52, 68]
RADICAL = "lie[e,lie[b,b]], lie[f,lie[f,d]]"


def pieces(algebra, top):
    return {
        "J2": algebra.suba(algebra.resolve_list("c, d+e, g"), top),
        "J11": algebra.suba(algebra.resolve_list("d, e"), top),
        "J12": algebra.suba(algebra.resolve_list("b, f"), top),
    }


class TestEta:
    def test_low_degree_dims(self, eta):
        assert eta.quotient_dims(5) == ETA_DIMS[:5]

    @pytest.mark.slow
    def test_dims_to_degree_seven(self, eta):
        assert eta.quotient_dims() == ETA_DIMS

    def test_enveloping_algebra_is_koszul_dual(self, eta, koszul_dual):
        assert eta.assoc_quotient_dims(5) == koszul_dual.to_list()[:6]

    def test_pbw_product_of_lie_dims(self, eta):
        assert pbw_product(eta.quotient_dims(5), 5).to_list() == eta.assoc_quotient_dims(5)

    @pytest.mark.slow
    def test_pbw_product_to_degree_seven(self, eta):
        product = pbw_product(eta.quotient_dims(7), 7).to_list()
        assert product == eta.assoc_quotient_dims(7)
        assert product[:4] == [1, 6, 26, 97]

    def test_prime_field_agrees(self, eta_presentation, eta):
        modular = GradedLieAlgebra(eta_presentation, 4, PrimeField())
        assert modular.quotient_dims() == eta.quotient_dims(4)

    def test_relations_vanish(self, eta):
        for relation in eta.presentation.relations:
            assert eta.element(relation).is_zero, relation


class TestBasis:
    def test_definitions_rebuild_basis(self, eta):
        for element in eta.quotient_basis(3):
            assert eta.element(element.definition).vector == element.vector
        assert eta.quotient_basis(2)[0].label == "modbas[2,1]"

    def test_coordinates_of_basis_are_unit_vectors(self, eta):
        for i in range(1, eta.dimension(3) + 1):
            coordinates = eta.coordinates(eta.basis_element(3, i))
            assert coordinates == [1 if k == i - 1 else 0 for k in range(eta.dimension(3))]

    def test_resolve_modbas_reference(self, eta):
        assert eta.resolve("modbas[ 3, 2 ]") == eta.basis_element(3, 2)
        assert eta.resolve("lie[b,c]").is_zero

    def test_modbas_out_of_range(self, eta):
        with pytest.raises(LieEngineError):
            eta.definition(2, 12)
        with pytest.raises(LieEngineError):
            eta.definition(0, 1)

    def test_mult_is_graded_symmetric_on_odd_elements(self, eta):
        b, d = eta.resolve("b"), eta.resolve("d")
        assert eta.mult(b, d) == eta.mult(d, b)
        assert len(eta.mult(b, d)) == 11

    def test_square_is_half_self_bracket(self, eta):
        c = eta.resolve("c")
        self_bracket = eta.bracket(c, c)
        square = eta.element(sq(Generator("c")))
        assert eta.coordinates(self_bracket) == [2 * x for x in eta.coordinates(square)]

    def test_combine_requires_one_degree(self, eta):
        with pytest.raises(LieEngineError):
            eta.combine([(1, eta.resolve("b")), (1, eta.resolve("lie[b,b]"))])
        total = eta.combine([(1, eta.resolve("d")), (Fraction(-1), eta.resolve("d"))])
        assert total.is_zero


class TestCaps:
    def test_bracket_above_cap(self, eta_presentation):
        small = GradedLieAlgebra(eta_presentation, max_degree=2)
        two = small.resolve("lie[b,b]")
        with pytest.raises(DegreeCapExceeded) as excinfo:
            small.bracket(two, small.resolve("b"))
        assert excinfo.value.cap == 2

    def test_dimension_above_cap(self, eta_presentation):
        with pytest.raises(DegreeCapExceeded):
            GradedLieAlgebra(eta_presentation, max_degree=3).dimension(4)

    def test_enveloping_cap(self, eta_presentation):
        with pytest.raises(DegreeCapExceeded):
            EnvelopingAlgebra(eta_presentation, 2).dimension(3)


class TestIdeals:
    def test_radical_low_degrees(self, eta):
        generators = eta.resolve_list(RADICAL)
        assert [eta.ideal(d, generators).dimension for d in range(3, 6)] == [2, 2, 2]

    def test_ideal_below_generator_degree_is_zero(self, eta):
        assert eta.ideal(2, eta.resolve_list(RADICAL)).dimension == 0

    @pytest.mark.parametrize("d", [4, 5])
    def test_radical_threads_span(self, eta, d):
        radical = eta.ideal(d, eta.resolve_list(RADICAL))
        elements = [eta.element(parse_thread(t)) for t in RADICAL_THREADS[d]]
        assert all(e in radical for e in elements)
        assert eta.subspace(elements) == radical

    @pytest.mark.slow
    def test_radical_is_abelian_in_low_degrees(self, eta):
        radical = eta.ideal(3, eta.resolve_list(RADICAL))
        for u in radical.vectors:
            for v in radical.vectors:
                assert eta.bracket(LieElement(3, u), LieElement(3, v)).is_zero

    @pytest.mark.slow
    def test_radical_to_degree_seven(self, eta):
        generators = eta.resolve_list(RADICAL)
        assert [eta.ideal(d, generators).dimension for d in range(3, 8)] == [2] * 5
        radical = eta.ideal(7, generators)
        elements = [eta.element(parse_thread(t)) for t in RADICAL_THREADS[7]]
        assert eta.subspace(elements) == radical

    @pytest.mark.slow
    def test_single_ebb_generates_one_dimension(self, eta):
        assert eta.ideal(7, eta.resolve_list("lie[e,lie[b,b]]")).dimension == 1

    @pytest.mark.slow
    def test_ideal_table(self, eta):
        dims = [eta.ideal(7, [eta.basis_element(3, n)]).dimension for n in range(1, 12)]
        assert sorted(dims) == sorted(IDEAL_TABLE)


class TestEtaBar:
    def test_dims(self, eta_bar):
        assert eta_bar.quotient_dims(5) == ETA_BAR_DIMS[:5]

    def test_enveloping_series(self, eta_bar):
        assert eta_bar.assoc_quotient_dims(5) == koszul_prefactor().expand(5).to_list()

    def test_extra_square_relation(self, eta_bar_presentation):
        extended = eta_bar_presentation.with_relations([sq(Generator("c"))])
        algebra = EnvelopingAlgebra(extended, 5)
        assert algebra.dims(5) == corollary_prefactor().expand(5).to_list()

    @pytest.mark.slow
    def test_enveloping_series_to_degree_seven(self, eta_bar, eta_bar_presentation):
        assert eta_bar.assoc_quotient_dims(7) == koszul_prefactor().expand(7).to_list()
        assert pbw_product(eta_bar.quotient_dims(7), 7).to_list() == eta_bar.assoc_quotient_dims(7)
        extended = eta_bar_presentation.with_relations([sq(Generator("c"))])
        series = corollary_prefactor().expand(7).to_list()
        assert EnvelopingAlgebra(extended, 7).dims(7) == series
        assert series[:4] == [1, 6, 25, 89]

    def test_decomposition_low_degrees(self, eta_bar):
        parts = pieces(eta_bar, 5)
        sums = [sum(p[n - 1].dimension for p in parts.values()) for n in range(3, 6)]
        assert sums == ETA_BAR_DIMS[2:5]

    @pytest.mark.slow
    def test_orthogonal_pieces_in_degree_three(self, eta_bar):
        parts = pieces(eta_bar, 3)
        j2 = parts["J2"][2]
        j1 = parts["J11"][2] + parts["J12"][2]
        assert [j2.dimension, parts["J11"][2].dimension, parts["J12"][2].dimension] == [5, 2, 2]
        assert eta_bar.ann([LieElement(3, v) for v in j2.vectors], 3) == j1
        assert eta_bar.ann([LieElement(3, v) for v in j1.vectors], 3) == j2

    @pytest.mark.slow
    def test_decomposition_to_degree_seven(self, eta_bar):
        parts = pieces(eta_bar, 7)
        sums = [sum(p[n - 1].dimension for p in parts.values()) for n in range(3, 8)]
        assert sums == ETA_BAR_DIMS[2:]

    def test_ann_rejects_mixed_degrees(self, eta_bar):
        with pytest.raises(LieEngineError):
            eta_bar.ann(eta_bar.resolve_list("b, lie[b,b]"), 2)

    def test_subspace_sum_needs_equal_degrees(self, eta_bar):
        with pytest.raises(LieEngineError):
            LieSubspace(2) + LieSubspace(3)


def test_parse_thread():
    assert parse_thread("ebfbb") == lie(Generator("e"), parse_lie_expression("lie[b, lie[f, lie[b, b]]]"))
    assert parse_thread("eb") == parse_lie_expression("lie[e,b]")
    with pytest.raises(LieEngineError):
        parse_thread("e")


class TestLambdaTable:
    def test_low_values(self):
        table = lambda_table(6)
        assert table[(1, 1)] == 2
        assert table[(2, 1)] == 1
        assert table[(1, 2)] == -1
        assert table[(1, 3)] == 1
        assert table[(2, 2)] == 0

    def test_conditions_hold(self):
        table = lambda_table(20)
        assert table.violations() == []
        assert table.check_conditions()

    def test_violation_reported(self):
        table = lambda_table(6)
        table.values[(2, 2)] = Fraction(1)
        assert any("both indices are even" in p for p in table.violations())

    def test_order_too_small(self):
        with pytest.raises(ValueError):
            lambda_table(1)

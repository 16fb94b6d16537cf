import random

import pytest
import sympy

from GradingManager import (
    GradingError,
    homogeneity_system,
    parse_assignments,
    solve_gradings,
    specialize,
)
from PresentationManager import parse_relations

c1, c2, c3 = sympy.symbols("c1 c2 c3")

FAMILY = {
    "b": c1, "c": (c1 + c2) / 2, "d": c2, "e": 2 * c2 - c1, "f": 3 * c2 - 2 * c1,
    "g": (9 * c2 - 7 * c1) / 2, "h": c3, "i": c3 - 2 * c2 + 3 * c1,
    "j": (2 * c3 + 3 * c2 - c1) / 2, "k": (2 * c3 + 7 * c2 - 5 * c1) / 2,
    "l": c3 + 5 * c2 - 4 * c1,
}


def test_single_relation_row():
    system = homogeneity_system(parse_relations("c^2-bd"))
    assert system.variables == ("b", "c", "d")
    assert list(system.matrix.row(0)) == [-1, 2, -1]
    assert system.equation(0) == "-1b + 2c - 1d = 0"


def test_monomials_add_no_rows(ideal_i):
    system = homogeneity_system(ideal_i[0])
    assert system.equations == 14
    assert len(system.variables) == 11


def test_j197_minimal_grading(j197):
    solution = solve_gradings(homogeneity_system(j197[0]))
    assert solution.system.equations == 54
    assert solution.nullity == 1
    assert solution.free_variables == ("h",)
    assert solution.minimal_integral == (36, 48, 50, 52, 56, 60, 66, 67, 107, 121, 129, 135)
    assert solution.minimal_constants == {"c1": 67}
    assert solution.expressions()["a"] == sympy.Rational(36, 67) * c1


def test_j199_minimal_grading(j199):
    solution = solve_gradings(homogeneity_system(j199[0]))
    assert solution.minimal_integral == (36, 48, 50, 52, 56, 60, 66, 69, 109, 123, 131, 137)
    assert solution.minimal_constants == {"c1": 69}


def test_ideal_family_matches_three_parameter_grading(ideal_i):
    solution = solve_gradings(homogeneity_system(ideal_i[0]))
    assert solution.nullity == 3
    assert solution.free_variables == ("b", "d", "h")
    assert solution.minimal_integral is None
    expressions = solution.expressions()
    for name, expected in FAMILY.items():
        assert sympy.simplify(expressions[name] - expected) == 0, name


@pytest.mark.parametrize("assignment, expected", [
    ("c1=1,c2=1,c3=1", (1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2)),
    ("c1=48,c2=52,c3=67", (48, 50, 52, 56, 60, 66, 67, 107, 121, 129, 135)),
    ("c1=48,c2=52,c3=69", (48, 50, 52, 56, 60, 66, 69, 109, 123, 131, 137)),
])
def test_specializations(ideal_i, assignment, expected):
    solution = solve_gradings(homogeneity_system(ideal_i[0]))
    assert specialize(solution, parse_assignments(assignment)) == expected


def test_specialize_rejects_bad_assignments(ideal_i):
    solution = solve_gradings(homogeneity_system(ideal_i[0]))
    with pytest.raises(GradingError):
        specialize(solution, {"c1": 1, "c2": 1})
    with pytest.raises(GradingError):
        # c = (c1 + c2)/2 is not an integer
        specialize(solution, {"c1": 1, "c2": 2, "c3": 1})
    with pytest.raises(GradingError):
        # e = 2*c2 - c1 is negative
        specialize(solution, {"c1": 5, "c2": 1, "c3": 10})


def test_non_positive_ray_rejected():
    with pytest.raises(GradingError):
        solve_gradings(homogeneity_system(parse_relations("a-b^2, b-a^2")))


def test_parse_assignments():
    assert parse_assignments("c1=48, c2=52,c3=67") == {"c1": 48, "c2": 52, "c3": 67}
    with pytest.raises(GradingError):
        parse_assignments("c1")


@pytest.mark.parametrize("seed", range(3))
def test_solutions_ignore_row_order_and_repeats(j197, ideal_i, seed):
    rng = random.Random(seed)
    for relations in (j197[0], ideal_i[0]):
        reference = solve_gradings(homogeneity_system(relations))
        shuffled = list(relations) + rng.sample(list(relations), 5)
        rng.shuffle(shuffled)
        solution = solve_gradings(homogeneity_system(shuffled))
        assert solution.nullity == reference.nullity
        assert solution.free_variables == reference.free_variables
        assert solution.minimal_integral == reference.minimal_integral
        expressions = solution.expressions()
        for name, value in reference.expressions().items():
            assert sympy.simplify(expressions[name] - value) == 0, name

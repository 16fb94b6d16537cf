"""
GradingManager Module Contract

IDENTITY:
- Module: GradingManager
- Purpose: Positive integral gradings that make a binomial relation list homogeneous
- Interface: homogeneity_system(), solve_gradings(), specialize()

GUARANTEES:
- Exactness: nullspaces are computed by sympy over the rationals
- Parametrization: the free constants c1..ck are the values of k chosen variables,
  numbered in alphabetical order of those variables; the choice prefers h, then b,
  then d, then the remaining variables alphabetically
- Minimal grading: for a one-dimensional solution space, minimal_integral is the
  primitive integer point on the ray with all coordinates positive

INPUT CONTRACTS:
homogeneity_system(relations)
    ACCEPTS: any relation list; pure monomials contribute no row
solve_gradings(system)
    REJECTS: a one-dimensional ray that is not strictly positive, or a zero nullspace
             (GradingError)
specialize(solution, assignments)
    REJECTS: missing constants, non-integral or non-positive weights (GradingError)

THREAD SAFETY:
- Pure functions over immutable inputs
"""
import logging
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from PresentationManager import Binomial

logger = logging.getLogger(__name__)

FREE_VARIABLE_PREFERENCE = ("h", "b", "d")


class GradingError(Exception):
    """Raised when no admissible grading can be produced"""
    pass


@dataclass(frozen=True)
class GradingSystem:
    variables: Tuple[str, ...]
    matrix: sympy.Matrix

    @property
    def equations(self) -> int:
        return self.matrix.rows

    def equation(self, row: int) -> str:
        terms = []
        for name, value in zip(self.variables, self.matrix.row(row)):
            if value:
                terms.append(f"{value}{name}")
        return " + ".join(terms).replace("+ -", "- ") + " = 0"


@dataclass
class GradingSolution:
    system: GradingSystem
    nullspace_basis: List[List[sympy.Rational]]
    free_variables: Tuple[str, ...]
    parametrization: sympy.Matrix
    minimal_integral: Optional[Tuple[int, ...]] = None

    @property
    def nullity(self) -> int:
        return len(self.nullspace_basis)

    @property
    def constants(self) -> Tuple[sympy.Symbol, ...]:
        return tuple(sympy.Symbol(f"c{i + 1}") for i in range(self.nullity))

    def expressions(self) -> Dict[str, sympy.Expr]:
        """Each variable as a linear form in c1..ck."""
        constants = sympy.Matrix(self.constants)
        values = self.parametrization * constants
        return {name: sympy.nsimplify(values[i]) for i, name in enumerate(self.system.variables)}

    @property
    def minimal_constants(self) -> Optional[Dict[str, int]]:
        if self.minimal_integral is None:
            return None
        lookup = dict(zip(self.system.variables, self.minimal_integral))
        return {str(c): lookup[v] for c, v in zip(self.constants, self.free_variables)}


def homogeneity_system(relations: Sequence[Binomial],
                       variables: Optional[Sequence[str]] = None) -> GradingSystem:
    if variables is None:
        names = set()
        for relation in relations:
            names.update(relation.variables)
        variables = sorted(names)
    rows = []
    for relation in relations:
        if relation.is_monomial:
            continue
        lhs, rhs = relation.lhs.as_dict(), relation.rhs.as_dict()
        rows.append([lhs.get(v, 0) - rhs.get(v, 0) for v in variables])
    matrix = sympy.Matrix(rows) if rows else sympy.zeros(0, len(variables))
    logger.debug("homogeneity system: %d equations in %d unknowns", len(rows), len(variables))
    return GradingSystem(tuple(variables), matrix)


def _choose_free(variables: Tuple[str, ...], basis: sympy.Matrix) -> Tuple[str, ...]:
    order = [v for v in FREE_VARIABLE_PREFERENCE if v in variables]
    order += [v for v in variables if v not in order]
    chosen: List[int] = []
    for name in order:
        candidate = chosen + [variables.index(name)]
        if basis.extract(candidate, list(range(basis.cols))).rank() == len(candidate):
            chosen = candidate
        if len(chosen) == basis.cols:
            break
    return tuple(sorted(variables[i] for i in chosen))


def _primitive_positive(vector: Sequence[sympy.Rational]) -> Tuple[int, ...]:
    denominators = [sympy.Rational(v).q for v in vector]
    scale = reduce(sympy.ilcm, denominators, 1)
    integers = [int(sympy.Rational(v) * scale) for v in vector]
    divisor = reduce(gcd, (abs(v) for v in integers), 0)
    if divisor == 0:
        raise GradingError("the solution ray is zero")
    integers = [v // divisor for v in integers]
    if all(v < 0 for v in integers):
        integers = [-v for v in integers]
    if not all(v > 0 for v in integers):
        raise GradingError(f"no strictly positive grading on the solution ray {integers}")
    return tuple(integers)


def solve_gradings(system: GradingSystem) -> GradingSolution:
    n = len(system.variables)
    matrix = system.matrix if system.matrix.rows else sympy.zeros(1, n)
    basis = matrix.nullspace()
    if not basis:
        raise GradingError("the homogeneity system only has the zero solution")
    stacked = sympy.Matrix.hstack(*basis)
    free = _choose_free(system.variables, stacked)
    rows = [system.variables.index(v) for v in free]
    parametrization = stacked * stacked.extract(rows, list(range(stacked.cols))).inv()
    solution = GradingSolution(
        system=system,
        nullspace_basis=[list(v) for v in basis],
        free_variables=free,
        parametrization=parametrization,
    )
    if solution.nullity == 1:
        solution.minimal_integral = _primitive_positive(list(parametrization.col(0)))
        logger.info("one-dimensional grading space, minimal point at %s", solution.minimal_constants)
    else:
        logger.info("grading space of dimension %d, free variables %s", solution.nullity, ",".join(free))
    return solution


def specialize(solution: GradingSolution, assignments: Dict[str, int]) -> Tuple[int, ...]:
    names = [str(c) for c in solution.constants]
    missing = [c for c in names if c not in assignments]
    if missing:
        raise GradingError(f"assignments must cover {', '.join(names)} (missing {', '.join(missing)})")
    values = sympy.Matrix([sympy.Rational(assignments[c]) for c in names])
    weights = solution.parametrization * values
    result = []
    for name, value in zip(solution.system.variables, weights):
        if not value.is_integer:
            raise GradingError(f"weight of {name} is {value}, which is not an integer")
        if value <= 0:
            raise GradingError(f"weight of {name} is {value}, which is not positive")
        result.append(int(value))
    if solution.system.matrix.rows and any(solution.system.matrix * sympy.Matrix(result)):
        raise GradingError("specialized weights do not satisfy the homogeneity system")
    return tuple(result)


def parse_assignments(text: str) -> Dict[str, int]:
    """'c1=48,c2=52,c3=67' -> {'c1': 48, 'c2': 52, 'c3': 67}"""
    result = {}
    for item in text.split(","):
        if not item.strip():
            continue
        key, _, value = item.partition("=")
        if not value:
            raise GradingError(f"assignment {item!r} must look like c1=48")
        result[key.strip()] = int(value)
    return result

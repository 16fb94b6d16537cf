"""
SeriesManager Module Contract

IDENTITY:
- Module: SeriesManager
- Purpose: Exact truncated power series in one and two variables, rational functions,
  PBW products, and the Poincare-Betti series transforms (Golod, Gulliksen, Lofwall,
  Levin) assembled into the closed formula for the Poincare series of R197
- Interface: UniSeries, BiSeries, RationalFn, PBWDims and module-level transforms

GUARANTEES:
- Exactness: coefficients are Python ints or Fractions, never floats
- Truncation: every binary operation returns the smaller of the operand orders; no
  coefficient beyond the order is ever read
- Laurent terms: 1/z and 1/x parts are formed explicitly and divided out only after
  checking that the negative-index coefficient cancels

INPUT CONTRACTS:
UniSeries(coefficients, order=None)
    ACCEPTS: a sequence of ints/Fractions; missing coefficients up to order are zero
BiSeries(grid)
    ACCEPTS: nested sequence or numpy array, rows = powers of x, columns = powers of y
reciprocal()
    REJECTS: constant term other than +1 or -1 (NotAUnitError)

OUTPUT CONTRACTS:
assemble_theorem1(koszul_dual, order_x, order_y) RETURNS:
    - Theorem1Assembly with the five series and a dict of named identity checks

FAILURE MODES:
- NotAUnitError: reciprocal of a non-unit
- LaurentCancellationError: the z^-1 (or x^-1) part of a formula does not cancel
- PBWInversionError: a series is not the Hilbert series of an enveloping algebra

THREAD SAFETY:
- Series values are immutable and safe to share
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 20
DEFAULT_BIGRADED_ORDER = (12, 24)

# Hilbert series of the ring S = Q[b..g]/(eleven quadratic relations) and of S/m^3
S_HILBERT = (1, 6, 10, 1)
T_HILBERT = (1, 6, 10)

Scalar = Union[int, Fraction]


class SeriesError(Exception):
    """Raised when a series operation is not defined for its inputs"""
    pass


class NotAUnitError(SeriesError):
    pass


class LaurentCancellationError(SeriesError):
    pass


class PBWInversionError(SeriesError):
    def __init__(self, degree: int, value) -> None:
        super().__init__(
            f"not an enveloping-algebra series: PBW stripping gives dimension {value} in degree {degree}"
        )
        self.degree = degree
        self.value = value


def _is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def _tidy(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value.numerator)
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, sympy.Rational):
        return _tidy(Fraction(int(value.p), int(value.q)))
    return Fraction(value)


def _plain(value):
    """JSON-friendly form of a coefficient."""
    value = _tidy(value)
    return value if isinstance(value, int) else str(value)


#####################################################################
# One variable
#####################################################################

class UniSeries:
    """Power series c_0 + c_1 z + ... + c_N z^N + O(z^(N+1))."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Sequence, order: Optional[int] = None) -> None:
        coefficients = list(coefficients)
        if order is None:
            order = len(coefficients) - 1
        if order < 0:
            raise ValueError(f"truncation order must be non-negative (got {order})")
        coefficients = coefficients[:order + 1]
        coefficients += [0] * (order + 1 - len(coefficients))
        self._coeffs = tuple(_tidy(c) for c in coefficients)

    @classmethod
    def one(cls, order: int) -> "UniSeries":
        return cls([1], order)

    @classmethod
    def zero(cls, order: int) -> "UniSeries":
        return cls([], order)

    @classmethod
    def monomial(cls, power: int, order: int, coefficient: Scalar = 1) -> "UniSeries":
        coefficients = [0] * (order + 1)
        if power <= order:
            coefficients[power] = coefficient
        return cls(coefficients, order)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coefficients(self) -> Tuple:
        return self._coeffs

    def __getitem__(self, power: int):
        if power < 0:
            return 0
        if power > self.order:
            raise IndexError(f"coefficient {power} is beyond the truncation order {self.order}")
        return self._coeffs[power]

    def __iter__(self) -> Iterator:
        return iter(self._coeffs)

    def _coerce(self, other) -> "UniSeries":
        if isinstance(other, UniSeries):
            return other
        if _is_scalar(other):
            return UniSeries([other], self.order)
        raise TypeError(f"cannot combine UniSeries with {type(other).__name__}")

    def __add__(self, other) -> "UniSeries":
        other = self._coerce(other)
        order = min(self.order, other.order)
        return UniSeries([self._coeffs[k] + other._coeffs[k] for k in range(order + 1)], order)

    __radd__ = __add__

    def __neg__(self) -> "UniSeries":
        return UniSeries([-c for c in self._coeffs])

    def __sub__(self, other) -> "UniSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniSeries":
        if _is_scalar(other):
            return UniSeries([other * c for c in self._coeffs])
        other = self._coerce(other)
        order = min(self.order, other.order)
        result = [0] * (order + 1)
        for i, a in enumerate(self._coeffs[:order + 1]):
            if not a:
                continue
            for j in range(order + 1 - i):
                b = other._coeffs[j]
                if b:
                    result[i + j] += a * b
        return UniSeries(result, order)

    __rmul__ = __mul__

    def reciprocal(self) -> "UniSeries":
        head = self._coeffs[0]
        if head not in (1, -1):
            raise NotAUnitError(f"reciprocal needs constant term +1 or -1 (got {head})")
        result = [head]
        for k in range(1, self.order + 1):
            total = sum(self._coeffs[i] * result[k - i] for i in range(1, k + 1))
            result.append(-head * total)
        return UniSeries(result)

    def __truediv__(self, other) -> "UniSeries":
        if _is_scalar(other):
            return UniSeries([Fraction(c) / other for c in self._coeffs])
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other) -> "UniSeries":
        return self._coerce(other) * self.reciprocal()

    def truncate(self, order: int) -> "UniSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend a series of order {self.order} to {order}")
        return UniSeries(self._coeffs, order)

    def shift(self, power: int) -> "UniSeries":
        """Multiply by z^power, keeping the order."""
        return UniSeries([0] * power + list(self._coeffs), self.order)

    def divide_by_z(self) -> "UniSeries":
        if self._coeffs[0] != 0:
            raise LaurentCancellationError(
                f"the z^-1 coefficient does not cancel (it is {self._coeffs[0]})"
            )
        return UniSeries(self._coeffs[1:], self.order - 1)

    def at_negative_argument(self) -> "UniSeries":
        return UniSeries([c if k % 2 == 0 else -c for k, c in enumerate(self._coeffs)])

    def agrees_with(self, other: "UniSeries", order: Optional[int] = None) -> bool:
        order = min(self.order, other.order) if order is None else order
        return all(self[k] == other[k] for k in range(order + 1))

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._coeffs)

    def is_nonnegative_integral(self) -> bool:
        return self.is_integral() and all(c >= 0 for c in self._coeffs)

    def to_list(self) -> List:
        return [_plain(c) for c in self._coeffs]

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"UniSeries({list(self._coeffs)!r})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self._coeffs):
            if not c:
                continue
            monomial = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if monomial and c == 1:
                terms.append(monomial)
            elif monomial and c == -1:
                terms.append(f"-{monomial}")
            else:
                terms.append(f"{c}{monomial}")
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        return f"{body} + O(z^{self.order + 1})"


#####################################################################
# Two variables
#####################################################################

class BiSeries:
    """Power series sum c_ij x^i y^j, truncated at i <= order_x and j <= order_y."""

    def __init__(self, grid) -> None:
        array = np.array(grid, dtype=object)
        if array.ndim != 2:
            raise ValueError("a bivariate series needs a two-dimensional coefficient grid")
        self._grid = np.vectorize(_tidy, otypes=[object])(array) if array.size else array
        self._grid.setflags(write=False)

    @classmethod
    def zero(cls, order_x: int, order_y: int) -> "BiSeries":
        return cls(np.zeros((order_x + 1, order_y + 1), dtype=object))

    @classmethod
    def one(cls, order_x: int, order_y: int) -> "BiSeries":
        return cls.monomial(0, 0, order_x, order_y)

    @classmethod
    def monomial(cls, power_x: int, power_y: int, order_x: int, order_y: int,
                 coefficient: Scalar = 1) -> "BiSeries":
        grid = np.zeros((order_x + 1, order_y + 1), dtype=object)
        if power_x <= order_x and power_y <= order_y:
            grid[power_x, power_y] = coefficient
        return cls(grid)

    @classmethod
    def from_xy(cls, series: UniSeries, order_x: int, order_y: int) -> "BiSeries":
        """The series f(xy) for a univariate f."""
        needed = min(order_x, order_y)
        if series.order < needed:
            raise SeriesError(f"f(xy) to order ({order_x}, {order_y}) needs f to order {needed}")
        grid = np.zeros((order_x + 1, order_y + 1), dtype=object)
        for k in range(needed + 1):
            grid[k, k] = series[k]
        return cls(grid)

    @property
    def grid(self) -> np.ndarray:
        return self._grid

    @property
    def order_x(self) -> int:
        return self._grid.shape[0] - 1

    @property
    def order_y(self) -> int:
        return self._grid.shape[1] - 1

    def __getitem__(self, index: Tuple[int, int]):
        i, j = index
        if i > self.order_x or j > self.order_y:
            raise IndexError(f"coefficient {index} is beyond the truncation ({self.order_x}, {self.order_y})")
        return self._grid[i, j]

    def _coerce(self, other) -> "BiSeries":
        if isinstance(other, BiSeries):
            return other
        if _is_scalar(other):
            return BiSeries.monomial(0, 0, self.order_x, self.order_y, other)
        raise TypeError(f"cannot combine BiSeries with {type(other).__name__}")

    def _common(self, other: "BiSeries") -> Tuple[int, int]:
        return min(self.order_x, other.order_x), min(self.order_y, other.order_y)

    def __add__(self, other) -> "BiSeries":
        other = self._coerce(other)
        nx, ny = self._common(other)
        return BiSeries(self._grid[:nx + 1, :ny + 1] + other._grid[:nx + 1, :ny + 1])

    __radd__ = __add__

    def __neg__(self) -> "BiSeries":
        return BiSeries(-self._grid)

    def __sub__(self, other) -> "BiSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BiSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "BiSeries":
        if _is_scalar(other):
            return BiSeries(self._grid * other)
        other = self._coerce(other)
        nx, ny = self._common(other)
        left = self._grid[:nx + 1, :ny + 1]
        right = other._grid[:nx + 1, :ny + 1]
        result = np.zeros((nx + 1, ny + 1), dtype=object)
        for i, j in zip(*np.nonzero(left)):
            result[i:, j:] += left[i, j] * right[:nx + 1 - i, :ny + 1 - j]
        return BiSeries(result)

    __rmul__ = __mul__

    def reciprocal(self) -> "BiSeries":
        head = self._grid[0, 0]
        if head not in (1, -1):
            raise NotAUnitError(f"reciprocal needs constant term +1 or -1 (got {head})")
        nx, ny = self.order_x, self.order_y
        result = np.zeros((nx + 1, ny + 1), dtype=object)
        result[0, 0] = head
        for i in range(nx + 1):
            for j in range(ny + 1):
                if i == 0 and j == 0:
                    continue
                window = result[i::-1, j::-1]
                total = (self._grid[:i + 1, :j + 1] * window).sum()
                result[i, j] = -head * total
        return BiSeries(result)

    def __truediv__(self, other) -> "BiSeries":
        return self * self._coerce(other).reciprocal()

    def truncate(self, order_x: int, order_y: int) -> "BiSeries":
        if order_x > self.order_x or order_y > self.order_y:
            raise SeriesError("cannot extend a truncated series")
        return BiSeries(self._grid[:order_x + 1, :order_y + 1])

    def divide_by_x(self) -> "BiSeries":
        leftover = [c for c in self._grid[0] if c]
        if leftover:
            raise LaurentCancellationError(f"the x^-1 part does not cancel ({len(leftover)} nonzero terms)")
        return BiSeries(self._grid[1:])

    def specialize_y1(self) -> UniSeries:
        """Put y = 1; exact when no coefficient with j > order_y is missing."""
        return UniSeries([sum(row) for row in self._grid])

    def agrees_with(self, other: "BiSeries") -> bool:
        nx, ny = self._common(other)
        return bool(np.all(self._grid[:nx + 1, :ny + 1] == other._grid[:nx + 1, :ny + 1]))

    def is_nonnegative_integral(self) -> bool:
        return all(isinstance(c, int) and c >= 0 for c in self._grid.flat)

    def to_lists(self) -> List[List]:
        return [[_plain(c) for c in row] for row in self._grid]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self._grid.shape == other._grid.shape and self.agrees_with(other)

    def __repr__(self) -> str:
        return f"BiSeries(order=({self.order_x}, {self.order_y}))"


#####################################################################
# Rational functions
#####################################################################

VARIABLE = sympy.Symbol("t")
_TRANSFORMATIONS = standard_transformations + (implicit_multiplication_application, convert_xor)


def _to_poly(value) -> sympy.Poly:
    if isinstance(value, sympy.Poly):
        return sympy.Poly(value.as_expr(), VARIABLE, domain="QQ")
    if isinstance(value, (list, tuple)):
        expression = sympy.Integer(0)
        for k, c in enumerate(value):
            c = Fraction(c)
            expression += sympy.Rational(c.numerator, c.denominator) * VARIABLE ** k
        return sympy.Poly(expression, VARIABLE, domain="QQ")
    return sympy.Poly(sympy.sympify(value), VARIABLE, domain="QQ")


class RationalFn:
    """numerator(t) / denominator(t) with denominator(0) normalized to 1."""

    def __init__(self, numerator, denominator=(1,)) -> None:
        numerator = _to_poly(numerator)
        denominator = _to_poly(denominator)
        if denominator.is_zero or denominator.eval(0) == 0:
            raise SeriesError("denominator must have a nonzero constant term")
        common = sympy.gcd(numerator, denominator)
        if common.degree() > 0:
            numerator = sympy.div(numerator, common)[0]
            denominator = sympy.div(denominator, common)[0]
        head = denominator.eval(0)
        self._numerator = numerator.quo_ground(head)
        self._denominator = denominator.quo_ground(head)

    @classmethod
    def parse(cls, numerator: str, denominator: str = "1") -> "RationalFn":
        """Parse text such as '1-t' over '(1-2t)^2(1-3t+t^2)'; z is accepted for t."""
        local = {"t": VARIABLE, "z": VARIABLE}
        top = parse_expr(numerator, local_dict=local, transformations=_TRANSFORMATIONS)
        bottom = parse_expr(denominator, local_dict=local, transformations=_TRANSFORMATIONS)
        top_n, top_d = sympy.fraction(sympy.together(top))
        bottom_n, bottom_d = sympy.fraction(sympy.together(bottom))
        return cls(sympy.expand(top_n * bottom_d), sympy.expand(top_d * bottom_n))

    @property
    def numerator(self) -> List:
        return [_tidy(Fraction(int(c.p), int(c.q))) for c in reversed(self._numerator.all_coeffs())]

    @property
    def denominator(self) -> List:
        return [_tidy(Fraction(int(c.p), int(c.q))) for c in reversed(self._denominator.all_coeffs())]

    def expand(self, order: int) -> UniSeries:
        if order < 0:
            raise ValueError(f"truncation order must be non-negative (got {order})")
        top = UniSeries(self.numerator, order)
        return top * UniSeries(self.denominator, order).reciprocal()

    def _coerce(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            return other
        if _is_scalar(other):
            return RationalFn([other])
        raise TypeError(f"cannot combine RationalFn with {type(other).__name__}")

    def __mul__(self, other) -> "RationalFn":
        other = self._coerce(other)
        return RationalFn(self._numerator * other._numerator, self._denominator * other._denominator)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFn":
        other = self._coerce(other)
        return RationalFn(self._numerator * other._denominator, self._denominator * other._numerator)

    def __add__(self, other) -> "RationalFn":
        other = self._coerce(other)
        return RationalFn(self._numerator * other._denominator + other._numerator * self._denominator,
                          self._denominator * other._denominator)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFn":
        return self + (-1) * self._coerce(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self._numerator * other._denominator == other._numerator * self._denominator

    def __hash__(self) -> int:
        return hash((tuple(self.numerator), tuple(self.denominator)))

    def __repr__(self) -> str:
        return f"RationalFn({self.numerator}, {self.denominator})"

    def __str__(self) -> str:
        top = sympy.factor(self._numerator.as_expr())
        bottom = sympy.factor(self._denominator.as_expr())
        return f"({top})/({bottom})"


def rational_expand(function: RationalFn, order: int) -> UniSeries:
    return function.expand(order)


def koszul_prefactor() -> RationalFn:
    """1/((1+t)(1-2t)^2(1-3t+t^2)), the Hilbert series of U(eta-bar)."""
    return RationalFn([1], sympy.expand((1 + VARIABLE) * (1 - 2 * VARIABLE) ** 2 * (1 - 3 * VARIABLE + VARIABLE ** 2)))


def corollary_prefactor() -> RationalFn:
    """(1-t)/((1-2t)^2(1-3t+t^2)), the Hilbert series of U(eta-bar) with c^2 killed."""
    return RationalFn([1, -1], sympy.expand((1 - 2 * VARIABLE) ** 2 * (1 - 3 * VARIABLE + VARIABLE ** 2)))


#####################################################################
# PBW
#####################################################################

@dataclass(frozen=True)
class PBWDims:
    """Graded dimensions a_1, a_2, ... of a Lie superalgebra (odd degrees odd)."""
    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        if any(v < 0 for v in self.values):
            raise ValueError(f"Lie algebra dimensions must be non-negative (got {self.values})")

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def degree(self, n: int) -> int:
        return self.values[n - 1] if 1 <= n <= len(self.values) else 0

    def __sub__(self, other: "PBWDims") -> Tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.values, other.values))


def _pbw_factor(degree: int, exponent: int, order: int) -> UniSeries:
    """(1+t^n)^a for odd n, (1-t^n)^(-a) for even n; exponent may be negative."""
    coefficients = [0] * (order + 1)
    for k in range(order // degree + 1):
        if degree % 2:
            if exponent >= 0:
                value = comb(exponent, k)
            else:
                value = (-1) ** k * comb(-exponent + k - 1, k)
        else:
            if exponent >= 0:
                value = comb(exponent + k - 1, k)
            else:
                value = (-1) ** k * comb(-exponent, k)
        coefficients[degree * k] = value
    return UniSeries(coefficients, order)


def pbw_product(dims: Iterable[int], order: int) -> UniSeries:
    result = UniSeries.one(order)
    for degree, dimension in enumerate(dims, start=1):
        if degree > order:
            break
        if dimension:
            result = result * _pbw_factor(degree, dimension, order)
    return result


def pbw_invert(series: UniSeries, order: Optional[int] = None) -> PBWDims:
    order = series.order if order is None else order
    if series[0] != 1:
        raise PBWInversionError(0, series[0])
    remaining = series.truncate(order)
    dims = []
    for degree in range(1, order + 1):
        value = remaining[degree]
        if not isinstance(value, int) or value < 0:
            raise PBWInversionError(degree, value)
        dims.append(value)
        if value:
            remaining = remaining * _pbw_factor(degree, -value, order)
    return PBWDims(tuple(dims))


def koszul_dual_series(order: int) -> UniSeries:
    """The product formula for the Hilbert series of S^! = U(eta)."""
    result = koszul_prefactor().expand(order)
    for n in range(2, order + 1):
        if 2 * n - 1 <= order:
            result = result * _pbw_factor(2 * n - 1, 2, order)
        if 2 * n <= order:
            result = result * _pbw_factor(2 * n, 2, order)
    return result


def factorizations_agree(order: int) -> bool:
    """The two ways of writing the product agree: via eta-bar with c^2 killed, or via eta-bar."""
    tail = UniSeries.one(order)
    for n in range(2, order + 1):
        tail = tail * _pbw_factor(2 * n - 1, 2, order) * _pbw_factor(2 * n, 2, order)
    via_corollary = corollary_prefactor().expand(order) * _pbw_factor(2, 1, order) * tail
    via_eta_bar = koszul_prefactor().expand(order) * tail
    return via_corollary == via_eta_bar


#####################################################################
# Poincare-Betti transforms
#####################################################################

Series = Union[UniSeries, BiSeries]


def _variable_term(series: Series) -> Series:
    """z for univariate series, xy for bivariate ones."""
    if isinstance(series, BiSeries):
        return BiSeries.monomial(1, 1, series.order_x, series.order_y)
    return UniSeries.monomial(1, series.order)


def golod(poincare: Series, term: Series) -> Series:
    """P' with 1/P' = 1/P + term."""
    return (poincare.reciprocal() + term).reciprocal()


def gulliksen(poincare: Series, module_series: Series) -> Series:
    """Poincare series of the trivial extension: P_S / (1 - z P_S^M)."""
    return poincare * (1 - _variable_term(poincare) * module_series).reciprocal()


def levin_golod_m3(poincare: UniSeries) -> UniSeries:
    """P_{S/m^3} = P_S / (1 - z^2 P_S)."""
    return poincare * (1 - UniSeries.monomial(2, poincare.order) * poincare).reciprocal()


def lofwall(hilbert: Union[Sequence[int], RationalFn], dual: UniSeries, order: int) -> UniSeries:
    """1/P_T = (1 + 1/z)/T^!(z) - T(-z)/z, exact to the given order."""
    if dual.order < order + 1:
        raise SeriesError(f"the dual series must be known to order {order + 1}")
    if isinstance(hilbert, RationalFn):
        hilbert_series = hilbert.expand(order + 1)
    else:
        hilbert_series = UniSeries(list(hilbert), order + 1)
    if hilbert_series[0] != 1 or dual[0] != 1:
        raise SeriesError("both Hilbert series must have constant term 1")
    inverse_dual = dual.truncate(order + 1).reciprocal()
    laurent_part = (inverse_dual - hilbert_series.at_negative_argument()).divide_by_z()
    return (inverse_dual.truncate(order) + laurent_part).reciprocal()


def bigraded_lofwall(hilbert: Sequence[int], dual: UniSeries, order_x: int, order_y: int) -> BiSeries:
    """1/P(x,y) = (1 + 1/x)/T^!(xy) - T(-xy)/x."""
    inverse_dual = BiSeries.from_xy(dual.reciprocal(), order_x + 1, order_y)
    negated = BiSeries.from_xy(UniSeries(list(hilbert), dual.order).at_negative_argument(), order_x + 1, order_y)
    laurent_part = (inverse_dual - negated).divide_by_x()
    return (inverse_dual.truncate(order_x, order_y) + laurent_part).reciprocal()


def module_series(poincare: UniSeries) -> UniSeries:
    """P^M(z) = 1 + (4 + 5z) P_S(z) for the module of the trivial extension."""
    linear = UniSeries([4, 5], poincare.order)
    return 1 + linear * poincare


def module_series_bigraded(poincare: BiSeries) -> BiSeries:
    """P^M(x,y) = 1 + (4y + 4xy^2 + xy^3) P_S(x,y)."""
    nx, ny = poincare.order_x, poincare.order_y
    weights = (BiSeries.monomial(0, 1, nx, ny, 4) + BiSeries.monomial(1, 2, nx, ny, 4)
               + BiSeries.monomial(1, 3, nx, ny))
    return 1 + weights * poincare


def trivial_extension_series(poincare: UniSeries) -> UniSeries:
    return gulliksen(poincare, module_series(poincare))


def golod_quotient_series(poincare: BiSeries) -> BiSeries:
    """Bigraded Levin map S -> S/(bdg): 1/P_T = 1/P_S - x^2 y^3."""
    return golod(poincare, BiSeries.monomial(2, 3, poincare.order_x, poincare.order_y, -1))


#####################################################################
# The closed formula for R197
#####################################################################

@dataclass
class Theorem1Assembly:
    p_s_xy: BiSeries
    p_rbar197_xy: BiSeries
    p_r197_xy: BiSeries
    p_rbar197_z: UniSeries
    p_r197_z: UniSeries
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def assemble_theorem1(koszul_dual: UniSeries, order_x: int = 12, order_y: int = 24,
                      hilbert: Sequence[int] = S_HILBERT) -> Theorem1Assembly:
    if order_y < 2 * order_x:
        raise SeriesError(
            f"order_y must be at least 2*order_x so that y=1 is exact (got {order_x}, {order_y})"
        )
    if koszul_dual.order < order_x + 1:
        raise SeriesError(f"the Koszul dual series must be known to order {order_x + 1}")
    nx, ny = order_x, order_y

    inverse_p_s = bigraded_lofwall(hilbert, koszul_dual, nx, ny).reciprocal()
    p_s = inverse_p_s.reciprocal()

    # two-step route: trivial extension, then the Golod map dividing out h^2
    p_rbar = gulliksen(p_s, module_series_bigraded(p_s))
    two_step = golod(p_rbar, BiSeries.monomial(2, 4, nx, ny))

    xy = BiSeries.monomial(1, 1, nx, ny)
    closed = ((1 - xy) * inverse_p_s
              - BiSeries.monomial(1, 2, nx, ny, 4)
              - BiSeries.monomial(2, 3, nx, ny, 4)).reciprocal()

    p_rbar197_z = closed.specialize_y1()
    z = UniSeries.monomial(1, nx)
    p_s_z = lofwall(hilbert, koszul_dual, nx)
    univariate = ((1 - z) * p_s_z.reciprocal() - 4 * z - 4 * z.shift(1)).reciprocal()

    assembly = Theorem1Assembly(
        p_s_xy=p_s,
        p_rbar197_xy=closed,
        p_r197_xy=(1 + xy) * closed,
        p_rbar197_z=p_rbar197_z,
        p_r197_z=(1 + z) * p_rbar197_z,
    )
    assembly.checks = {
        "two_routes_agree": two_step.agrees_with(closed),
        "y1_matches_univariate_formula": p_rbar197_z == univariate,
        "p_s_y1_matches_univariate": p_s.specialize_y1() == p_s_z,
        "nonnegative_integral": all(
            s.is_nonnegative_integral()
            for s in (p_s, closed, assembly.p_r197_xy, p_rbar197_z, assembly.p_r197_z)
        ),
    }
    logger.info("assembled Poincare series to order (%d, %d): %s", nx, ny, assembly.checks)
    return assembly

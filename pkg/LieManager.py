"""
LieManager Module Contract

IDENTITY:
- Module: LieManager
- Purpose: Finitely presented graded Lie superalgebras with odd degree-one generators:
  quotient dimensions, labeled bases, ideals, annihilators, products, subalgebras,
  enveloping algebra dimensions, and the lambda table used by the cocycle construction
- Interface: EnvelopingAlgebra, GradedLieAlgebra, LieElement, LieSubspace,
  parse_thread(), lambda_table()

GUARANTEES:
- Enveloping algebra: U = k<gens>/(relations) is built degree by degree on normal
  words; U_d is (U_(d-1) x A_1) modulo the products w*r for normal words w, with the
  pivot of every row at its deglex-largest word
- Lie quotient: eta_d is the span of [x, b] for generators x and b in eta_(d-1),
  computed inside U_d (eta injects into U)
- Basis order: candidates are tried generator-first, then previous basis index, and
  accepted greedily; labels are modbas[d,i] with i starting at 1

INPUT CONTRACTS:
GradedLieAlgebra(presentation, max_degree, field=None)
    REJECTS: queries above max_degree (DegreeCapExceeded)
ann(elements, s)
    ACCEPTS: homogeneous elements of one common degree

FAILURE MODES:
- DegreeCapExceeded for degrees above the cap
- LieEngineError for inhomogeneous input or labels out of range

THREAD SAFETY:
- Not thread-safe; caches grow as degrees are requested
"""
import logging
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from LieExpressionManager import (
    Bracket,
    DegreeCapExceeded,
    Generator,
    LieEngineError,
    LieExpr,
    LiePresentation,
    Square,
    degree,
    expand_to_words,
    parse_lie_expression,
    super_sign,
)
from RowReductionManager import EchelonBasis, RationalField, axpy

logger = logging.getLogger(__name__)

DEFAULT_LIE_DEGREE = 7
DEFAULT_ASSOC_DEGREE = 8

Vector = Dict[int, object]

# marks per-degree progress records so the CLI can hide them
PROGRESS = {"degree_progress": True}


class EnvelopingAlgebra:
    """
    Graded algebra k<gens>/(R) on prefix-closed normal words.

    Contract:
    - dimension(d) is dim U_d; degree 0 is the empty word.
    - Vectors are sparse maps from normal-word index to coefficient.
    - multiply() and right_multiply() return normal forms.
    """

    def __init__(self, presentation: LiePresentation, max_degree: int = DEFAULT_ASSOC_DEGREE,
                 field=None) -> None:
        self.presentation = presentation
        self.max_degree = max_degree
        self.field = field or RationalField()
        self.rank = presentation.rank
        self._relations: Dict[int, List[Dict[Tuple[int, ...], object]]] = {}
        for relation in presentation.relations:
            words = expand_to_words(relation, presentation.generators)
            coerced = {w: self.field.coerce(c) for w, c in words.items()}
            self._relations.setdefault(degree(relation), []).append(coerced)
        # words[d][i] = (parent index in degree d-1, last letter)
        self._words: List[List[Tuple[int, int]]] = [[(-1, -1)]]
        self._position: List[Dict[int, int]] = [{}]
        self._normal: List[Dict[int, Vector]] = [{}]
        self._left_cache: Dict[Tuple[int, int, int], Vector] = {}

    def _ensure(self, d: int) -> None:
        if d > self.max_degree:
            raise DegreeCapExceeded(d, self.max_degree)
        while len(self._words) <= d:
            self._build(len(self._words))

    def dimension(self, d: int) -> int:
        if d < 0:
            return 0
        self._ensure(d)
        return len(self._words[d])

    def dims(self, max_degree: int) -> List[int]:
        return [self.dimension(d) for d in range(max_degree + 1)]

    def word(self, d: int, index: int) -> Tuple[int, ...]:
        letters = []
        while d > 0:
            index, letter = self._words[d][index]
            letters.append(letter)
            d -= 1
        return tuple(reversed(letters))

    def word_text(self, d: int, index: int) -> str:
        return "".join(self.presentation.generators[a] for a in self.word(d, index))

    def _build(self, d: int) -> None:
        started = time.perf_counter()
        g = self.rank
        previous = len(self._words[d - 1])
        basis = EchelonBasis(self.field)
        for k, relations in self._relations.items():
            if k > d:
                continue
            for w in range(len(self._words[d - k])):
                for relation in relations:
                    row: Vector = {}
                    for letters, coefficient in relation.items():
                        head = {w: 1}
                        for offset, letter in enumerate(letters[:-1]):
                            head = self.right_multiply(head, d - k + offset, letter)
                        for index, value in head.items():
                            key = index * g + letters[-1]
                            row[key] = row.get(key, 0) + coefficient * value
                    basis.add(row)
        basis.rref()
        pivots = set(basis.pivots)
        words, position = [], {}
        for key in range(previous * g):
            if key not in pivots:
                position[key] = len(words)
                words.append((key // g, key % g))
        normal = {}
        for pivot in pivots:
            normal[pivot] = {
                position[q]: self.field.normalize(-c) for q, c in basis.row(pivot).items() if q != pivot
            }
        self._words.append(words)
        self._position.append(position)
        self._normal.append(normal)
        logger.info("U_%d: %d normal words (%d leading words removed) in %.2fs",
                    d, len(words), len(pivots), time.perf_counter() - started, extra=PROGRESS)

    def right_multiply(self, vector: Vector, d: int, letter: int) -> Vector:
        """vector in U_d times a generator, as a vector in U_(d+1)."""
        self._ensure(d + 1)
        position, normal = self._position[d + 1], self._normal[d + 1]
        result: Vector = {}
        for index, value in vector.items():
            key = index * self.rank + letter
            if key in position:
                axpy(result, value, {position[key]: 1}, self.field)
            else:
                axpy(result, value, normal[key], self.field)
        return result

    def _generator_times_word(self, letter: int, d: int, index: int) -> Vector:
        cached = self._left_cache.get((letter, d, index))
        if cached is None:
            if d == 0:
                cached = {letter: 1}
            else:
                parent, last = self._words[d][index]
                cached = self.right_multiply(self._generator_times_word(letter, d - 1, parent), d, last)
            self._left_cache[(letter, d, index)] = cached
        return cached

    def multiply(self, left: Vector, dl: int, right: Vector, dr: int) -> Vector:
        self._ensure(dl + dr)
        result: Vector = {}
        if dl == 1:
            for letter, a in left.items():
                for index, b in right.items():
                    axpy(result, a * b, self._generator_times_word(letter, dr, index), self.field)
            return result
        memo: Dict[Tuple[int, int], Vector] = {}

        def times(d: int, index: int) -> Vector:
            if d == 0:
                return left
            if (d, index) not in memo:
                parent, letter = self._words[d][index]
                memo[(d, index)] = self.right_multiply(times(d - 1, parent), dl + d - 1, letter)
            return memo[(d, index)]

        for index, b in right.items():
            axpy(result, b, times(dr, index), self.field)
        return result

    def bracket(self, left: Vector, dl: int, right: Vector, dr: int) -> Vector:
        result = self.multiply(left, dl, right, dr)
        axpy(result, -super_sign(dl, dr), self.multiply(right, dr, left, dl), self.field)
        return result

    def element(self, expr: LieExpr) -> Tuple[int, Vector]:
        """Image of a Lie expression in U."""
        if isinstance(expr, Generator):
            if expr.name not in self.presentation.generators:
                raise LieEngineError(f"unknown generator {expr.name!r}")
            return 1, {self.presentation.generators.index(expr.name): 1}
        if isinstance(expr, Bracket):
            dl, left = self.element(expr.left)
            dr, right = self.element(expr.right)
            return dl + dr, self.bracket(left, dl, right, dr)
        if isinstance(expr, Square):
            d, inner = self.element(expr.operand)
            if d % 2 == 0:
                raise LieEngineError(f"sq[{expr.operand}] needs an odd element")
            return 2 * d, self.multiply(inner, d, inner, d)
        d = degree(expr)
        total: Vector = {}
        for coefficient, term in expr.terms:
            _, vector = self.element(term)
            axpy(total, self.field.coerce(coefficient), vector, self.field)
        return d, total


@dataclass
class LieElement:
    degree: int
    vector: Vector

    @property
    def is_zero(self) -> bool:
        return not self.vector


class LieSubspace:
    """A subspace of eta_d held as an echelon basis in U_d coordinates."""

    def __init__(self, degree: int, vectors: Sequence[Vector] = (), field=None) -> None:
        self.degree = degree
        self._basis = EchelonBasis(field)
        self._basis.extend(vectors)

    @property
    def dimension(self) -> int:
        return self._basis.rank

    @property
    def vectors(self) -> List[Vector]:
        return [self._basis.row(p) for p in self._basis.pivots]

    def contains(self, vector: Vector) -> bool:
        return self._basis.contains(vector)

    def __contains__(self, element: LieElement) -> bool:
        return element.degree == self.degree and self.contains(element.vector)

    def __add__(self, other: "LieSubspace") -> "LieSubspace":
        if other.degree != self.degree:
            raise LieEngineError(f"cannot add subspaces of degrees {self.degree} and {other.degree}")
        return LieSubspace(self.degree, self.vectors + other.vectors, self._basis.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieSubspace):
            return NotImplemented
        return (self.degree == other.degree and self.dimension == other.dimension
                and all(self.contains(v) for v in other.vectors))

    def __repr__(self) -> str:
        return f"LieSubspace(degree={self.degree}, dimension={self.dimension})"


@dataclass
class BasisElement:
    label: str
    degree: int
    index: int
    definition: LieExpr
    vector: Vector


class GradedLieAlgebra:
    """
    The quotient eta = L(gens)/(relations) inside its enveloping algebra.

    Contract:
    - quotient_dims(n)[d-1] == dim eta_d.
    - definition(d, i) returns the bracket expression that produced modbas[d,i].
    - coordinates(element) expresses an element of eta_d in the modbas basis.
    """

    def __init__(self, presentation: LiePresentation, max_degree: int = DEFAULT_LIE_DEGREE,
                 field=None, assoc_max_degree: Optional[int] = None) -> None:
        self.presentation = presentation
        self.max_degree = max_degree
        self.algebra = EnvelopingAlgebra(presentation, max(max_degree, assoc_max_degree or 0), field)
        self.field = self.algebra.field
        self._echelon: Dict[int, EchelonBasis] = {}
        self._vectors: Dict[int, List[Vector]] = {}
        self._definitions: Dict[int, List[LieExpr]] = {}

    def _ensure(self, d: int) -> None:
        if d < 1:
            raise LieEngineError(f"degree must be at least 1 (got {d})")
        if d > self.max_degree:
            raise DegreeCapExceeded(d, self.max_degree)
        for current in range(1, d + 1):
            if current not in self._vectors:
                self._build(current)

    def _build(self, d: int) -> None:
        started = time.perf_counter()
        basis = EchelonBasis(self.field, track=True)
        vectors, definitions = [], []
        if d == 1:
            candidates = (
                ({a: 1}, Generator(name)) for a, name in enumerate(self.presentation.generators)
            )
        else:
            candidates = (
                (self.algebra.bracket({a: 1}, 1, vector, d - 1), Bracket(Generator(name), definition))
                for a, name in enumerate(self.presentation.generators)
                for vector, definition in zip(self._vectors[d - 1], self._definitions[d - 1])
            )
        for vector, definition in candidates:
            if basis.add(vector, tag=len(vectors)):
                vectors.append(vector)
                definitions.append(definition)
        self._echelon[d] = basis
        self._vectors[d] = vectors
        self._definitions[d] = definitions
        logger.info("eta_%d: dimension %d in %.2fs", d, len(vectors), time.perf_counter() - started,
                    extra=PROGRESS)

    # -- dimensions and bases -------------------------------------------------

    def dimension(self, d: int) -> int:
        self._ensure(d)
        return len(self._vectors[d])

    def quotient_dims(self, max_degree: Optional[int] = None) -> List[int]:
        max_degree = self.max_degree if max_degree is None else max_degree
        logger.info("computing Lie quotient dimensions up to degree %d", max_degree)
        return [self.dimension(d) for d in range(1, max_degree + 1)]

    def assoc_quotient_dims(self, max_degree: int) -> List[int]:
        return self.algebra.dims(max_degree)

    def quotient_basis(self, d: int) -> List[BasisElement]:
        self._ensure(d)
        return [
            BasisElement(f"modbas[{d},{i + 1}]", d, i + 1, definition, vector)
            for i, (vector, definition) in enumerate(zip(self._vectors[d], self._definitions[d]))
        ]

    def definition(self, d: int, i: int) -> LieExpr:
        """def[modbas[d,i]] with 1-based i."""
        self._ensure(d)
        if not 1 <= i <= len(self._definitions[d]):
            raise LieEngineError(f"modbas[{d},{i}] is out of range (eta_{d} has dimension {self.dimension(d)})")
        return self._definitions[d][i - 1]

    def basis_element(self, d: int, i: int) -> LieElement:
        self.definition(d, i)
        return LieElement(d, self._vectors[d][i - 1])

    def coordinates(self, element: LieElement) -> List[object]:
        """fed: the coordinates of an element in the modbas basis of its degree."""
        self._ensure(element.degree)
        combination = self._echelon[element.degree].express(element.vector)
        return [combination.get(i, 0) for i in range(self.dimension(element.degree))]

    # -- elements -------------------------------------------------------------

    def element(self, expr: LieExpr) -> LieElement:
        d, vector = self.algebra.element(expr)
        if d > self.max_degree:
            raise DegreeCapExceeded(d, self.max_degree)
        return LieElement(d, vector)

    def resolve(self, text: str) -> LieElement:
        """A Lie expression or a modbas[d,i] reference."""
        match = re.fullmatch(r"\s*modbas\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*", text)
        if match:
            return self.basis_element(int(match.group(1)), int(match.group(2)))
        return self.element(parse_lie_expression(text))

    def resolve_list(self, text: str) -> List[LieElement]:
        items, depth, current = [], 0, ""
        for char in text:
            if char == "[":
                depth += 1
            elif char == "]":
                depth -= 1
            if char == "," and depth == 0:
                items.append(current)
                current = ""
            else:
                current += char
        if current.strip():
            items.append(current)
        return [self.resolve(item) for item in items if item.strip()]

    def combine(self, terms: Sequence[Tuple[object, LieElement]]) -> LieElement:
        degrees = {element.degree for _, element in terms}
        if len(degrees) != 1:
            raise LieEngineError(f"cannot combine elements of degrees {sorted(degrees)}")
        total: Vector = {}
        for coefficient, element in terms:
            axpy(total, self.field.coerce(coefficient), element.vector, self.field)
        return LieElement(degrees.pop(), total)

    # -- operations -----------------------------------------------------------

    def bracket(self, left: LieElement, right: LieElement) -> LieElement:
        d = left.degree + right.degree
        if d > self.max_degree:
            raise DegreeCapExceeded(d, self.max_degree)
        return LieElement(d, self.algebra.bracket(left.vector, left.degree, right.vector, right.degree))

    def mult(self, left: LieElement, right: LieElement) -> List[object]:
        """[x,y] in the modbas coordinates of degree |x|+|y|."""
        return self.coordinates(self.bracket(left, right))

    def ideal(self, n: int, generators: Sequence[LieElement]) -> LieSubspace:
        """Degree-n part of the ideal generated by the given elements."""
        if n > self.max_degree:
            raise DegreeCapExceeded(n, self.max_degree)
        lowest = min((g.degree for g in generators), default=n + 1)
        current: Optional[LieSubspace] = None
        for d in range(lowest, n + 1):
            vectors = [g.vector for g in generators if g.degree == d]
            if current is not None:
                for a in range(self.presentation.rank):
                    for vector in current.vectors:
                        vectors.append(self.algebra.bracket({a: 1}, 1, vector, d - 1))
            current = LieSubspace(d, vectors, self.field)
            logger.debug("ideal component in degree %d: dimension %d", d, current.dimension)
        return current if current is not None and current.degree == n else LieSubspace(n, (), self.field)

    def ann(self, elements: Sequence[LieElement], s: int) -> LieSubspace:
        """{x in eta_s : [x, a] = 0 for every a}."""
        self._ensure(s)
        degrees = {a.degree for a in elements}
        if len(degrees) > 1:
            raise LieEngineError(f"annihilator needs elements of one degree (got {sorted(degrees)})")
        basis = EchelonBasis(self.field, track=True)
        if elements:
            t = degrees.pop()
            size = self.algebra.dimension(s + t)
        for i, vector in enumerate(self._vectors[s]):
            image: Vector = {}
            for j, a in enumerate(elements):
                product = self.algebra.bracket(vector, s, a.vector, a.degree)
                image.update({j * size + k: c for k, c in product.items()})
            basis.add(image, tag=i)
        kernel = []
        for combination in basis.dependencies:
            total: Vector = {}
            for i, coefficient in combination.items():
                axpy(total, coefficient, self._vectors[s][i], self.field)
            kernel.append(total)
        return LieSubspace(s, kernel, self.field)

    def suba(self, generators: Sequence[LieElement], max_degree: int) -> List[LieSubspace]:
        """Components of the subalgebra generated by the given elements, degrees 1..max_degree."""
        if max_degree > self.max_degree:
            raise DegreeCapExceeded(max_degree, self.max_degree)
        components: List[LieSubspace] = []
        left_normed = all(g.degree == 1 for g in generators)
        for d in range(1, max_degree + 1):
            vectors = [g.vector for g in generators if g.degree == d]
            if left_normed and d > 1:
                for g in generators:
                    for vector in components[d - 2].vectors:
                        vectors.append(self.algebra.bracket(g.vector, 1, vector, d - 1))
            elif d > 1:
                for i in range(1, d // 2 + 1):
                    j = d - i
                    for left in components[i - 1].vectors:
                        for right in components[j - 1].vectors:
                            vectors.append(self.algebra.bracket(left, i, right, j))
            components.append(LieSubspace(d, vectors, self.field))
        return components

    def suba_dims(self, generators: Sequence[LieElement], max_degree: int) -> List[int]:
        return [c.dimension for c in self.suba(generators, max_degree)]

    def subspace(self, elements: Sequence[LieElement]) -> LieSubspace:
        degrees = {e.degree for e in elements}
        if len(degrees) != 1:
            raise LieEngineError("a subspace needs elements of one degree")
        return LieSubspace(degrees.pop(), [e.vector for e in elements], self.field)


def parse_thread(shorthand: str) -> LieExpr:
    """'ebfbb' -> lie[e, lie[b, lie[f, lie[b, b]]]]."""
    letters = [c for c in shorthand if not c.isspace()]
    if len(letters) < 2:
        raise LieEngineError(f"a thread element needs at least two letters (got {shorthand!r})")
    expr: LieExpr = Generator(letters[-1])
    for letter in reversed(letters[:-1]):
        expr = Bracket(Generator(letter), expr)
    return expr


# Radical elements listed degree by degree in the shorthand of parse_thread
RADICAL_THREADS = {
    4: ("eebb", "ffeb"),
    5: ("ebfbb", "ffeeb"),
    6: ("eebfbb", "ffdeeb"),
    7: ("ebfbfbb", "ffedeeb"),
}


#####################################################################
# Lambda table
#####################################################################

@dataclass
class LambdaTable:
    order: int
    values: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        return self.values[index]

    def violations(self) -> List[str]:
        problems = []
        for (m, n), value in sorted(self.values.items()):
            if m % 2 == 0 and n % 2 == 0 and value != 0:
                problems.append(f"lambda[{m},{n}] = {value} but both indices are even")
            mirrored = -(-1) ** (m * n) * self.values[(n, m)]
            if value != mirrored:
                problems.append(f"lambda[{m},{n}] = {value} but the symmetry law gives {mirrored}")
            if m + n + 1 <= self.order:
                step = self.values[(m, n)] + (-1) ** (m + 1) * self.values[(m, n + 1)]
                if self.values[(m + 1, n)] != step:
                    problems.append(f"lambda[{m + 1},{n}] = {self.values[(m + 1, n)]} but the recursion gives {step}")
        return problems

    def check_conditions(self) -> bool:
        return not self.violations()


def lambda_table(order: int) -> LambdaTable:
    """All lambda[m,n] with m+n <= order, free choices set to 0."""
    if order < 2:
        raise ValueError(f"order must be at least 2 (got {order})")
    values: Dict[Tuple[int, int], Fraction] = {(1, 1): Fraction(2)}
    for k in range(3, order + 1):
        if k % 2 == 0:
            values[(1, k - 1)] = values[(k - 2, 1)]
            for m in range(2, k):
                n = k - m
                values[(m, n)] = values[(m - 1, n)] if m % 2 else Fraction(0)
            continue
        # lambda[m,k-m] = alpha + beta * x with x = lambda[1,k-1]
        forms = {1: (Fraction(0), Fraction(1))}
        for m in range(2, k):
            n = k - m
            alpha, beta = forms[m - 1]
            sign = (-1) ** m
            forms[m] = (values[(m - 1, n)] + sign * alpha, sign * beta)
        alpha, beta = forms[k - 1]
        if beta + 1 != 0:
            x = -alpha / (beta + 1)
        elif alpha == 0:
            x = Fraction(0)
        else:
            raise LieEngineError(f"no consistent choice on antidiagonal {k}")
        for m in range(1, k):
            a, b = forms[m]
            values[(m, k - m)] = a + b * x
    return LambdaTable(order, values)

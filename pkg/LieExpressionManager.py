"""
LieExpressionManager Module Contract

IDENTITY:
- Module: LieExpressionManager
- Purpose: Lie superalgebra expressions and presentations in liedim syntax, their
  expansion into the free associative algebra, and a word-space oracle that computes
  free Lie components and quotient dimensions by brute force over all words
- Interface: Generator / Bracket / Square / LinearCombination, parse_lie_expression,
  parse_lie, read_presentation, expand_to_words, WordSpace, free_lie_component

GUARANTEES:
- Super bracket: [x,y] = xy - (-1)^(|x||y|) yx with |x| the degree mod 2
- Squares: sq[x] = x*x for odd x, which is half of [x,x]
- Homogeneity: every expression has a single degree, or degree() raises

INPUT CONTRACTS:
parse_lie_expression(text)
    ACCEPTS: lie[., .], sq[.], generator names, integer or rational coefficients, +, -
    REJECTS: malformed text or mixed degrees (LieParseError with position)
parse_lie(text)
    ACCEPTS: generators={..} gensigns={..} relations={..}, with (* *) or # comments
    REJECTS: even generators, undeclared names, relations of degree < 2

FAILURE MODES:
- DegreeCapExceeded when the word space would exceed its configured degree

THREAD SAFETY:
- Expressions and presentations are immutable; a WordSpace caches per degree and is
  not meant to be shared between threads
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pyparsing as pp

from RowReductionManager import EchelonBasis

logger = logging.getLogger(__name__)

DEFAULT_WORD_SPACE_DEGREE = 5


class LieParseError(Exception):
    def __init__(self, message: str, position: Optional[int] = None) -> None:
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class LieEngineError(Exception):
    """Raised when a Lie computation cannot be carried out"""
    pass


class DegreeCapExceeded(LieEngineError):
    def __init__(self, degree: int, cap: int) -> None:
        super().__init__(f"degree {degree} is above the configured cap {cap}")
        self.degree = degree
        self.cap = cap


#####################################################################
# Expressions
#####################################################################

@dataclass(frozen=True)
class Generator:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Bracket:
    left: "LieExpr"
    right: "LieExpr"

    def __str__(self) -> str:
        return f"lie[{self.left}, {self.right}]"


@dataclass(frozen=True)
class Square:
    operand: "LieExpr"

    def __str__(self) -> str:
        return f"sq[{self.operand}]"


@dataclass(frozen=True)
class LinearCombination:
    terms: Tuple[Tuple[Fraction, "LieExpr"], ...]

    def __str__(self) -> str:
        pieces = []
        for coefficient, expr in self.terms:
            sign = "-" if coefficient < 0 else "+"
            size = abs(coefficient)
            text = f"({expr})" if isinstance(expr, LinearCombination) else str(expr)
            body = text if size == 1 else f"{size}*{text}"
            pieces.append(f"{sign}{body}")
        text = "".join(pieces)
        return text[1:] if text.startswith("+") else text


LieExpr = Union[Generator, Bracket, Square, LinearCombination]


def lie(left: LieExpr, right: LieExpr) -> Bracket:
    return Bracket(left, right)


def sq(operand: LieExpr) -> Square:
    return Square(operand)


def degree(expr: LieExpr) -> int:
    if isinstance(expr, Generator):
        return 1
    if isinstance(expr, Bracket):
        return degree(expr.left) + degree(expr.right)
    if isinstance(expr, Square):
        return 2 * degree(expr.operand)
    degrees = {degree(term) for _, term in expr.terms}
    if len(degrees) != 1:
        raise LieParseError(f"expression {expr} mixes degrees {sorted(degrees)}")
    return degrees.pop()


def generator_names(expr: LieExpr) -> set:
    if isinstance(expr, Generator):
        return {expr.name}
    if isinstance(expr, Bracket):
        return generator_names(expr.left) | generator_names(expr.right)
    if isinstance(expr, Square):
        return generator_names(expr.operand)
    names = set()
    for _, term in expr.terms:
        names |= generator_names(term)
    return names


#####################################################################
# Grammar
#####################################################################

@dataclass(frozen=True)
class _Term:
    coefficient: Fraction
    expr: LieExpr


def _combine(tokens) -> LieExpr:
    terms = []
    sign = 1
    for token in tokens:
        if token == "+":
            sign = 1
        elif token == "-":
            sign = -1
        else:
            terms.append((sign * token.coefficient, token.expr))
            sign = 1
    if len(terms) == 1 and terms[0][0] == 1:
        return terms[0][1]
    return LinearCombination(tuple(terms))


def _build_grammar():
    lbrack, rbrack, comma = pp.Suppress("["), pp.Suppress("]"), pp.Suppress(",")
    keyword = pp.Keyword("lie") | pp.Keyword("sq")
    name = ~keyword + pp.Word(pp.alphas, pp.alphanums + "_'")
    name.set_parse_action(lambda t: Generator(t[0]))
    number = pp.Regex(r"\d+(/\d+)?")
    number.set_parse_action(lambda t: Fraction(t[0]))

    expression = pp.Forward()
    bracket = pp.Suppress(pp.Keyword("lie")) + lbrack + expression + comma + expression + rbrack
    bracket.set_parse_action(lambda t: Bracket(t[0], t[1]))
    square = pp.Suppress(pp.Keyword("sq")) + lbrack + expression + rbrack
    square.set_parse_action(lambda t: Square(t[0]))
    atom = bracket | square | name | (pp.Suppress("(") + expression + pp.Suppress(")"))

    term = pp.Optional(number + pp.Optional(pp.Suppress("*"))) + atom
    term.set_parse_action(lambda t: _Term(t[0], t[1]) if len(t) == 2 else _Term(Fraction(1), t[0]))
    sign = pp.one_of("+ -")
    combination = pp.Optional(sign) + term + pp.ZeroOrMore(sign + term)
    combination.set_parse_action(lambda t: _combine(t))
    expression <<= combination

    comment = pp.Regex(r"\(\*.*?\*\)", flags=re.S) | pp.python_style_comment
    expression.ignore(comment)

    def braced(item):
        return (pp.Suppress("{") + pp.Optional(item + pp.ZeroOrMore(comma + item)) + pp.Suppress("}"))

    plain_name = pp.Word(pp.alphas, pp.alphanums + "_'")
    generators = pp.Suppress(pp.Keyword("generators") + "=") + pp.Group(braced(plain_name))("generators")
    gensigns = pp.Suppress(pp.Keyword("gensigns") + "=") + pp.Group(braced(pp.Word(pp.nums)))("gensigns")
    relations = pp.Suppress(pp.Keyword("relations") + "=") + pp.Group(braced(expression))("relations")
    document = generators + pp.Optional(gensigns) + relations
    document.ignore(comment)
    return expression, document


_EXPRESSION, _DOCUMENT = _build_grammar()


def parse_lie_expression(text: str) -> LieExpr:
    try:
        expr = _EXPRESSION.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        raise LieParseError(f"cannot parse {text!r}: {exc.msg}", exc.loc) from exc
    degree(expr)
    return expr


def parse_expression_list(text: str) -> List[LieExpr]:
    """Comma-separated expressions; commas inside brackets belong to the expression."""
    if not text.strip():
        return []
    item_list = _EXPRESSION + pp.ZeroOrMore(pp.Suppress(",") + _EXPRESSION)
    try:
        parsed = list(item_list.parse_string(text, parse_all=True))
    except pp.ParseBaseException as exc:
        raise LieParseError(f"cannot parse {text!r}: {exc.msg}", exc.loc) from exc
    for expr in parsed:
        degree(expr)
    return parsed


@dataclass(frozen=True)
class LiePresentation:
    generators: Tuple[str, ...]
    relations: Tuple[LieExpr, ...]
    gensigns: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not self.generators:
            raise LieParseError("a presentation needs at least one generator")
        if len(set(self.generators)) != len(self.generators):
            raise LieParseError(f"duplicate generators in {self.generators}")
        signs = self.gensigns or (1,) * len(self.generators)
        if len(signs) != len(self.generators):
            raise LieParseError("gensigns must have one entry per generator")
        if any(s % 2 == 0 for s in signs):
            raise LieParseError("only odd generators (gensign 1) are supported")
        object.__setattr__(self, "gensigns", tuple(signs))
        known = set(self.generators)
        for relation in self.relations:
            unknown = generator_names(relation) - known
            if unknown:
                raise LieParseError(f"relation {relation} uses undeclared {sorted(unknown)}")
            if degree(relation) < 2:
                raise LieParseError(f"relation {relation} has degree below 2")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def with_relations(self, extra: Sequence[LieExpr]) -> "LiePresentation":
        return LiePresentation(self.generators, self.relations + tuple(extra), self.gensigns)

    def __str__(self) -> str:
        return (f"generators={{{','.join(self.generators)}}}\n"
                f"gensigns={{{','.join(str(s) for s in self.gensigns)}}}\n"
                f"relations={{{', '.join(str(r) for r in self.relations)}}}")


def parse_lie(text: str) -> LiePresentation:
    try:
        parsed = _DOCUMENT.parse_string(text, parse_all=True)
    except pp.ParseBaseException as exc:
        raise LieParseError(f"malformed presentation: {exc.msg}", exc.loc) from exc
    gensigns = tuple(int(s) for s in parsed.get("gensigns", []))
    relations = tuple(parsed["relations"])
    for relation in relations:
        degree(relation)
    return LiePresentation(tuple(parsed["generators"]), relations, gensigns)


def read_presentation(path: str) -> LiePresentation:
    with open(path, "r") as f:
        return parse_lie(f.read())


#####################################################################
# Expansion into words
#####################################################################

WordVector = Dict[Tuple[int, ...], Fraction]


def _concatenate(left: WordVector, right: WordVector, scale=1) -> WordVector:
    result: WordVector = {}
    for u, a in left.items():
        for v, b in right.items():
            result[u + v] = result.get(u + v, 0) + scale * a * b
    return result


def _accumulate(target: WordVector, source: WordVector, scale=1) -> None:
    for word, value in source.items():
        updated = target.get(word, 0) + scale * value
        if updated:
            target[word] = updated
        else:
            target.pop(word, None)


def super_sign(left_degree: int, right_degree: int) -> int:
    return -1 if (left_degree * right_degree) % 2 else 1


def expand_to_words(expr: LieExpr, generators: Sequence[str]) -> WordVector:
    """Words are tuples of generator indices."""
    index = {name: i for i, name in enumerate(generators)}

    def expand(node) -> Tuple[int, WordVector]:
        if isinstance(node, Generator):
            if node.name not in index:
                raise LieParseError(f"unknown generator {node.name!r}")
            return 1, {(index[node.name],): Fraction(1)}
        if isinstance(node, Bracket):
            dl, left = expand(node.left)
            dr, right = expand(node.right)
            result = _concatenate(left, right)
            _accumulate(result, _concatenate(right, left), -super_sign(dl, dr))
            return dl + dr, {w: c for w, c in result.items() if c}
        if isinstance(node, Square):
            d, inner = expand(node.operand)
            if d % 2 == 0:
                raise LieEngineError(f"sq[{node.operand}] needs an odd element")
            return 2 * d, {w: c for w, c in _concatenate(inner, inner).items() if c}
        total: WordVector = {}
        d = degree(node)
        for coefficient, term in node.terms:
            _, vector = expand(term)
            _accumulate(total, vector, coefficient)
        return d, total

    return expand(expr)[1]


#####################################################################
# Word-space oracle
#####################################################################

class WordSpace:
    """
    Linear algebra in the full free associative algebra, 6^d columns at degree d.

    Lie components are spans of left-normed brackets; the relation ideal is closed
    under ad of the generators. Only meant for small degrees.
    """

    def __init__(self, presentation: LiePresentation, max_degree: int = DEFAULT_WORD_SPACE_DEGREE,
                 field=None) -> None:
        self.presentation = presentation
        self.max_degree = max_degree
        self.field = field
        self.rank = presentation.rank
        self._lie: Dict[int, List[Dict[int, object]]] = {}
        self._relations: Dict[int, List[Dict[int, object]]] = {}
        for relation in presentation.relations:
            d = degree(relation)
            self._relations.setdefault(d, []).append(self.encode_vector(expand_to_words(relation, presentation.generators)))

    @classmethod
    def free(cls, rank: int, max_degree: int = DEFAULT_WORD_SPACE_DEGREE, field=None) -> "WordSpace":
        return cls(LiePresentation(tuple(f"x{i}" for i in range(rank)), ()), max_degree, field)

    def _check(self, d: int) -> None:
        if d > self.max_degree:
            raise DegreeCapExceeded(d, self.max_degree)

    def encode(self, word: Sequence[int]) -> int:
        code = 0
        for letter in word:
            code = code * self.rank + letter
        return code

    def encode_vector(self, vector: WordVector) -> Dict[int, object]:
        return {self.encode(w): c for w, c in vector.items()}

    def vector(self, expr: LieExpr) -> Dict[int, object]:
        return self.encode_vector(expand_to_words(expr, self.presentation.generators))

    def bracket(self, left: Dict[int, object], dl: int, right: Dict[int, object], dr: int) -> Dict[int, object]:
        sign = super_sign(dl, dr)
        shift_right, shift_left = self.rank ** dr, self.rank ** dl
        result: Dict[int, object] = {}
        for u, a in left.items():
            for v, b in right.items():
                forward = u * shift_right + v
                backward = v * shift_left + u
                result[forward] = result.get(forward, 0) + a * b
                result[backward] = result.get(backward, 0) - sign * a * b
        return {k: c for k, c in result.items() if c}

    def _generator(self, letter: int) -> Dict[int, object]:
        return {letter: 1}

    def lie_component(self, d: int) -> List[Dict[int, object]]:
        """Row-reduced spanning set of the free Lie superalgebra in degree d."""
        self._check(d)
        if d not in self._lie:
            if d == 1:
                self._lie[1] = [self._generator(a) for a in range(self.rank)]
            else:
                basis = EchelonBasis(self.field)
                for a in range(self.rank):
                    for row in self.lie_component(d - 1):
                        basis.add(self.bracket(self._generator(a), 1, row, d - 1))
                self._lie[d] = [basis.row(p) for p in basis.pivots]
        return self._lie[d]

    def _ideal(self, max_degree: int, slow: bool) -> Dict[int, EchelonBasis]:
        ideal: Dict[int, EchelonBasis] = {}
        for d in range(1, max_degree + 1):
            self._check(d)
            basis = EchelonBasis(self.field)
            basis.extend(self._relations.get(d, []))
            if slow:
                for j in range(1, d):
                    if d - j not in ideal:
                        continue
                    for left in self.lie_component(j):
                        for pivot in ideal[d - j].pivots:
                            basis.add(self.bracket(left, j, ideal[d - j].row(pivot), d - j))
            elif d - 1 in ideal:
                for a in range(self.rank):
                    for pivot in ideal[d - 1].pivots:
                        basis.add(self.bracket(self._generator(a), 1, ideal[d - 1].row(pivot), d - 1))
            ideal[d] = basis
        return ideal

    def lie_quotient_dims(self, max_degree: int, slow: bool = False) -> List[int]:
        ideal = self._ideal(max_degree, slow)
        return [len(self.lie_component(d)) - ideal[d].rank for d in range(1, max_degree + 1)]

    def assoc_quotient_dims(self, max_degree: int) -> List[int]:
        """dim U_d for d = 0..max_degree with I_d = A_1 I_(d-1) + R A_(d-k)."""
        dims = [1]
        previous: Optional[EchelonBasis] = None
        for d in range(1, max_degree + 1):
            self._check(d)
            basis = EchelonBasis(self.field)
            if previous is not None:
                offset = self.rank ** (d - 1)
                for a in range(self.rank):
                    for pivot in previous.pivots:
                        basis.add({a * offset + k: c for k, c in previous.row(pivot).items()})
            for k, relations in self._relations.items():
                if k > d:
                    continue
                shift = self.rank ** (d - k)
                for relation in relations:
                    for tail in range(shift):
                        basis.add({code * shift + tail: c for code, c in relation.items()})
            dims.append(self.rank ** d - basis.rank)
            previous = basis
            logger.debug("word space degree %d: ideal rank %d", d, basis.rank)
        return dims


def free_lie_component(rank: int, d: int, field=None) -> List[Dict[int, object]]:
    if d < 1:
        raise ValueError(f"degree must be at least 1 (got {d})")
    return WordSpace.free(rank, max(d, 1), field).lie_component(d)

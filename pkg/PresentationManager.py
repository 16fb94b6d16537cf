"""
PresentationManager Module Contract

IDENTITY:
- Module: PresentationManager
- Purpose: Read binomial relation lists, check them against a semigroup, and check by
  exact linear algebra that they present k[S] degree by degree
- Interface: ExponentVector, Binomial, WeightedRing, and the module-level operations
  parse_relations, verify_kernel, substitute_zero, quotient_dims, verify_presentation,
  minimal_generators, hilbert_function, restrict, monomial_in_ideal

GUARANTEES:
- Relation order: parse_relations preserves declaration order
- Pure monomials: a relation with no right-hand side is a monomial relation; every
  operation handles it on the same code path as a binomial
- Exactness: dimensions come from RowReductionManager over Q (or GF(p) when asked)

INPUT CONTRACTS:
parse_relations(text)
    ACCEPTS: comma- or newline-separated terms like "b^2-af", "ehl", "# comment"
    REJECTS: malformed terms (RelationParseError with line and column)
quotient_dims(relations, ring, max_degree)
    ACCEPTS: relations homogeneous for the ring weights
    REJECTS: non-homogeneous relations (PresentationError), a degree with more than
             `monomial_cap` monomials (MonomialCapExceeded)

FAILURE MODES:
- Yes/no checks return a VerificationResult carrying the first failing item

THREAD SAFETY:
- All functions are pure; each call owns its monomial tables
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pyparsing as pp

from RowReductionManager import EchelonBasis
from SemigroupManager import NumericalSemigroup

logger = logging.getLogger(__name__)

DEFAULT_MONOMIAL_CAP = 2_000_000


class PresentationError(Exception):
    """Raised when a relation list cannot be processed"""
    pass


class RelationParseError(PresentationError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class MonomialCapExceeded(PresentationError):
    def __init__(self, degree: int, count: int, cap: int) -> None:
        super().__init__(f"degree {degree} has more than {cap} monomials (reached {count})")
        self.degree = degree
        self.count = count
        self.cap = cap


@dataclass
class VerificationResult:
    """Outcome of a yes/no check; truthy on success."""
    ok: bool
    detail: str = ""
    failing: object = None

    def __bool__(self) -> bool:
        return self.ok


#####################################################################
# Types
#####################################################################

@dataclass(frozen=True, order=True)
class ExponentVector:
    exponents: Tuple[Tuple[str, int], ...] = ()

    @classmethod
    def from_dict(cls, exponents: Dict[str, int]) -> "ExponentVector":
        if any(e < 0 for e in exponents.values()):
            raise PresentationError(f"exponents must be non-negative (got {exponents})")
        return cls(tuple(sorted((v, e) for v, e in exponents.items() if e)))

    def as_dict(self) -> Dict[str, int]:
        return dict(self.exponents)

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(v for v, _ in self.exponents)

    @property
    def total_degree(self) -> int:
        return sum(e for _, e in self.exponents)

    def __mul__(self, other: "ExponentVector") -> "ExponentVector":
        merged = self.as_dict()
        for v, e in other.exponents:
            merged[v] = merged.get(v, 0) + e
        return ExponentVector.from_dict(merged)

    def __str__(self) -> str:
        return "".join(v if e == 1 else f"{v}^{e}" for v, e in self.exponents) or "1"


@dataclass(frozen=True)
class Binomial:
    """lhs - rhs; rhs is None for a pure monomial relation."""
    lhs: ExponentVector
    rhs: Optional[ExponentVector] = None

    def __post_init__(self) -> None:
        if self.rhs is not None and self.lhs == self.rhs:
            raise PresentationError(f"binomial {self.lhs}-{self.rhs} is zero")

    @property
    def is_monomial(self) -> bool:
        return self.rhs is None

    @property
    def variables(self) -> Tuple[str, ...]:
        names = set(self.lhs.variables)
        if self.rhs is not None:
            names.update(self.rhs.variables)
        return tuple(sorted(names))

    def __str__(self) -> str:
        return str(self.lhs) if self.rhs is None else f"{self.lhs}-{self.rhs}"


class WeightedRing:
    """Polynomial ring with a positive integer weight per variable."""

    def __init__(self, variables: Sequence[str], weights: Sequence[int]) -> None:
        if len(variables) != len(weights):
            raise PresentationError(
                f"got {len(variables)} variables but {len(weights)} weights"
            )
        if len(set(variables)) != len(variables):
            raise PresentationError(f"duplicate variable names in {list(variables)}")
        for name, weight in zip(variables, weights):
            if int(weight) <= 0:
                raise PresentationError(f"weight of {name} must be positive (got {weight})")
        self._variables = tuple(variables)
        self._weights = {v: int(w) for v, w in zip(variables, weights)}

    @classmethod
    def from_mapping(cls, weights: Dict[str, int]) -> "WeightedRing":
        names = sorted(weights)
        return cls(names, [weights[n] for n in names])

    @classmethod
    def from_header(cls, text: str) -> "WeightedRing":
        """Read a '# weights: a=36 b=48 ...' line from a relation file."""
        for line in text.splitlines():
            match = re.match(r"\s*#\s*weights:\s*(.*)", line)
            if match:
                pairs = dict(item.split("=") for item in match.group(1).split())
                return cls.from_mapping({k: int(v) for k, v in pairs.items()})
        raise PresentationError("no '# weights:' header found")

    @property
    def variables(self) -> Tuple[str, ...]:
        return self._variables

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(self._weights[v] for v in self._variables)

    def weight(self, variable: str) -> int:
        if variable not in self._weights:
            raise PresentationError(f"unknown variable {variable!r} (ring has {''.join(self._variables)})")
        return self._weights[variable]

    def without(self, variable: str) -> "WeightedRing":
        kept = [v for v in self._variables if v != variable]
        return WeightedRing(kept, [self._weights[v] for v in kept])

    def __repr__(self) -> str:
        return f"WeightedRing({dict(zip(self._variables, self.weights))})"


#####################################################################
# Parsing
#####################################################################

_FACTOR = pp.Group(pp.Char(pp.alphas)("name") + pp.Optional(pp.Suppress("^") + pp.Word(pp.nums)("power")))
_MONOMIAL = pp.Group(pp.OneOrMore(_FACTOR))
_RELATION = _MONOMIAL("lhs") + pp.Optional(pp.Suppress("-") + _MONOMIAL("rhs"))


def _to_exponents(group) -> ExponentVector:
    exponents: Dict[str, int] = {}
    for factor in group:
        power = int(factor.get("power", 1))
        exponents[factor["name"]] = exponents.get(factor["name"], 0) + power
    return ExponentVector.from_dict(exponents)


def parse_relation(token: str) -> Binomial:
    parsed = _RELATION.parse_string(token, parse_all=True)
    rhs = _to_exponents(parsed["rhs"]) if "rhs" in parsed else None
    return Binomial(_to_exponents(parsed["lhs"]), rhs)


def parse_relations(text: str) -> List[Binomial]:
    relations = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        for chunk in re.finditer(r"[^,]+", body):
            token = chunk.group(0)
            if not token.strip():
                continue
            try:
                relations.append(parse_relation(token))
            except pp.ParseBaseException as exc:
                raise RelationParseError(
                    f"malformed relation {token.strip()!r}", line_number, chunk.start() + exc.col
                ) from exc
            except PresentationError as exc:
                column = chunk.start() + len(token) - len(token.lstrip()) + 1
                raise RelationParseError(str(exc), line_number, column) from exc
    logger.debug("parsed %d relations", len(relations))
    return relations


def read_relations(path: str) -> Tuple[List[Binomial], Optional[WeightedRing]]:
    """Relations and, when the file declares one, its weighted ring."""
    with open(path, "r") as f:
        text = f.read()
    try:
        ring = WeightedRing.from_header(text)
    except PresentationError:
        ring = None
    return parse_relations(text), ring


def format_relations(relations: Iterable[Binomial]) -> str:
    return ", ".join(str(r) for r in relations)


#####################################################################
# Degrees and kernel checks
#####################################################################

def weighted_degree(monomial: ExponentVector, ring: WeightedRing) -> int:
    return sum(e * ring.weight(v) for v, e in monomial.exponents)


def relation_degree(relation: Binomial, ring: WeightedRing) -> int:
    degree = weighted_degree(relation.lhs, ring)
    if relation.rhs is not None and weighted_degree(relation.rhs, ring) != degree:
        raise PresentationError(f"relation {relation} is not homogeneous for {ring}")
    return degree


def verify_kernel(relations: Sequence[Binomial], ring: WeightedRing,
                  semigroup: NumericalSemigroup) -> VerificationResult:
    """Every binomial must have both terms of the same t-degree under phi."""
    for name, weight in zip(ring.variables, ring.weights):
        if not semigroup.contains(weight):
            return VerificationResult(False, f"weight {name}={weight} is not in {semigroup}", name)
    for relation in relations:
        if relation.is_monomial:
            return VerificationResult(False, f"monomial {relation} is not in the kernel", relation)
        left = weighted_degree(relation.lhs, ring)
        right = weighted_degree(relation.rhs, ring)
        if left != right:
            return VerificationResult(
                False, f"{relation}: degree {left} on the left, {right} on the right", relation
            )
    return VerificationResult(True, f"{len(relations)} relations are homogeneous")


def substitute_zero(relations: Iterable[Binomial], variable: str) -> List[Binomial]:
    result = []
    for relation in relations:
        terms = [t for t in (relation.lhs, relation.rhs) if t is not None and variable not in t.variables]
        if not terms:
            continue
        if len(terms) == 1:
            result.append(Binomial(terms[0]))
        else:
            result.append(relation)
    return result


def restrict(relations: Iterable[Binomial], variables: Iterable[str]) -> List[Binomial]:
    allowed = set(variables)
    return [r for r in relations if set(r.variables) <= allowed]


#####################################################################
# Degree-by-degree linear algebra
#####################################################################

class _MonomialTable:
    """Monomials of the ring by weighted degree, built once up to a bound."""

    def __init__(self, ring: WeightedRing, max_degree: int, cap: int) -> None:
        self.ring = ring
        table: List[List[Tuple[int, ...]]] = [[] for _ in range(max_degree + 1)]
        table[0].append(())
        for weight in ring.weights:
            grown: List[List[Tuple[int, ...]]] = [[] for _ in range(max_degree + 1)]
            for degree in range(max_degree + 1):
                power = 0
                while power * weight <= degree:
                    for monomial in table[degree - power * weight]:
                        grown[degree].append(monomial + (power,))
                    power += 1
                if len(grown[degree]) > cap:
                    raise MonomialCapExceeded(degree, len(grown[degree]), cap)
            table = grown
        self._by_degree = table
        self._index = [{m: i for i, m in enumerate(row)} for row in table]

    def monomials(self, degree: int) -> List[Tuple[int, ...]]:
        if degree < 0:
            return []
        return self._by_degree[degree]

    def index(self, degree: int, monomial: Tuple[int, ...]) -> int:
        return self._index[degree][monomial]

    def as_tuple(self, monomial: ExponentVector) -> Tuple[int, ...]:
        exponents = monomial.as_dict()
        for name in exponents:
            self.ring.weight(name)
        return tuple(exponents.get(v, 0) for v in self.ring.variables)


def _multiple(table: _MonomialTable, degree: int, factor: Tuple[int, ...],
              relation: Tuple[Tuple[int, ...], Optional[Tuple[int, ...]]]) -> Dict[int, int]:
    lhs, rhs = relation
    row = {table.index(degree, tuple(a + b for a, b in zip(factor, lhs))): 1}
    if rhs is not None:
        row[table.index(degree, tuple(a + b for a, b in zip(factor, rhs)))] = -1
    return row


def _prepared(relations: Sequence[Binomial], ring: WeightedRing, table: _MonomialTable):
    prepared = []
    for relation in relations:
        degree = relation_degree(relation, ring)
        rhs = table.as_tuple(relation.rhs) if relation.rhs is not None else None
        prepared.append((degree, (table.as_tuple(relation.lhs), rhs)))
    return prepared


def _ideal_component(table: _MonomialTable, prepared, degree: int, field=None,
                     strictly_below: bool = False) -> EchelonBasis:
    basis = EchelonBasis(field)
    for relation_deg, relation in prepared:
        if relation_deg > degree or (strictly_below and relation_deg == degree):
            continue
        for factor in table.monomials(degree - relation_deg):
            basis.add(_multiple(table, degree, factor, relation))
    return basis


def quotient_dims(relations: Sequence[Binomial], ring: WeightedRing, max_degree: int,
                  field=None, monomial_cap: int = DEFAULT_MONOMIAL_CAP) -> List[Tuple[int, int]]:
    """dim T_d - dim J_d for every weighted degree d <= max_degree."""
    table = _MonomialTable(ring, max_degree, monomial_cap)
    prepared = _prepared(relations, ring, table)
    dims = []
    for degree in range(max_degree + 1):
        size = len(table.monomials(degree))
        rank = _ideal_component(table, prepared, degree, field).rank if size else 0
        dims.append((degree, size - rank))
        logger.debug("degree %d: %d monomials, quotient dimension %d", degree, size, size - rank)
    return dims


def hilbert_function(relations: Sequence[Binomial], ring: WeightedRing, max_degree: int,
                     field=None) -> List[int]:
    return [dim for _, dim in quotient_dims(relations, ring, max_degree, field)]


def verify_presentation(relations: Sequence[Binomial], ring: WeightedRing,
                        semigroup: NumericalSemigroup, max_degree: int, field=None,
                        monomial_cap: int = DEFAULT_MONOMIAL_CAP) -> VerificationResult:
    logger.info("checking %d relations up to weighted degree %d", len(relations), max_degree)
    for degree, dim in quotient_dims(relations, ring, max_degree, field, monomial_cap):
        expected = 1 if semigroup.contains(degree) else 0
        if dim != expected:
            return VerificationResult(
                False, f"degree {degree}: quotient has dimension {dim}, expected {expected}", degree
            )
    return VerificationResult(True, f"quotient matches k[S] up to degree {max_degree}")


def minimal_generators(relations: Sequence[Binomial], ring: WeightedRing, max_degree: int,
                       field=None) -> List[Binomial]:
    """
    Relations not lying in m*J plus the earlier relations of the same degree.

    The kept relations come back ordered by (weighted degree, position in the input).
    """
    table = _MonomialTable(ring, max_degree, DEFAULT_MONOMIAL_CAP)
    prepared = _prepared(relations, ring, table)
    kept = []
    by_degree: Dict[int, List[int]] = {}
    for position, (degree, _) in enumerate(prepared):
        by_degree.setdefault(degree, []).append(position)
    for degree in sorted(by_degree):
        positions = by_degree[degree]
        if degree > max_degree:
            logger.warning("%d relations above degree %d were not checked", len(positions), max_degree)
            kept.extend(relations[p] for p in positions)
            continue
        basis = _ideal_component(table, prepared, degree, field, strictly_below=True)
        for position in positions:
            _, relation = prepared[position]
            if basis.add(_multiple(table, degree, tuple(0 for _ in ring.variables), relation)):
                kept.append(relations[position])
    return kept


def monomial_in_ideal(relations: Sequence[Binomial], ring: WeightedRing,
                      monomial: ExponentVector, field=None) -> bool:
    degree = weighted_degree(monomial, ring)
    table = _MonomialTable(ring, degree, DEFAULT_MONOMIAL_CAP)
    prepared = _prepared(relations, ring, table)
    basis = _ideal_component(table, prepared, degree, field)
    return basis.contains({table.index(degree, table.as_tuple(monomial)): 1})

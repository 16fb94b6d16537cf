"""
RowReductionManager Module Contract

IDENTITY:
- Module: RowReductionManager
- Purpose: Exact sparse Gaussian elimination shared by the presentation, Lie and
  enveloping-algebra computations
- Interface: EchelonBasis (incremental echelon form), RationalField / PrimeField

GUARANTEES:
- Exactness: coefficients are Fractions (rational mode) or residues mod p (prime mode);
  no floating point is ever produced
- Pivot rule: every stored row has its pivot at its LARGEST key, so the leading term
  of a row is the deglex-largest column when keys enumerate words in that order
- Determinism: the same sequence of add() calls yields the same rows

INPUT CONTRACTS:
EchelonBasis.add(vector: dict[int, number], tag: int | None = None) -> bool
    ACCEPTS: sparse vectors keyed by non-negative integers
    RETURNS: True when the vector enlarged the span
    TRACKING: when constructed with track=True, each stored row remembers the
              combination of tagged input vectors it came from

EchelonBasis.express(vector) -> dict[int, number]
    RETURNS: coefficients over the tags of accepted vectors
    REJECTS: vectors outside the span (RowReductionError)

INVARIANTS:
- Keys of a stored row are <= its pivot
- After rref() every stored row is zero on every other pivot column

FAILURE MODES:
- Division by a zero pivot is impossible by construction
- express() of a vector outside the span raises RowReductionError

THREAD SAFETY:
- Not thread-safe; each computation owns its EchelonBasis
"""
import heapq
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional

logger = logging.getLogger(__name__)

MERSENNE_PRIME = 2 ** 31 - 1

SparseVector = Dict[int, object]


class RowReductionError(Exception):
    """Raised when a vector cannot be expressed in the current span"""
    pass


class RationalField:
    """Exact arithmetic over Q with Python Fractions."""
    name = "rational"

    def coerce(self, value):
        if isinstance(value, (int, Fraction)):
            return value
        return Fraction(value)

    def inverse(self, value):
        return Fraction(1) / value

    def normalize(self, value):
        return value

    def __repr__(self) -> str:
        return "RationalField()"


class PrimeField:
    """Arithmetic modulo a prime; only dimensions are meaningful in this mode."""
    name = "prime"

    def __init__(self, prime: int = MERSENNE_PRIME) -> None:
        if prime < 2:
            raise ValueError(f"prime must be at least 2 (got {prime})")
        self.prime = prime

    def coerce(self, value):
        value = Fraction(value)
        return value.numerator * pow(value.denominator, -1, self.prime) % self.prime

    def inverse(self, value):
        return pow(value, -1, self.prime)

    def normalize(self, value):
        return value % self.prime

    def __repr__(self) -> str:
        return f"PrimeField({self.prime})"


def make_field(name: str = "rational", prime: int = MERSENNE_PRIME):
    """Return the field object named by the configuration ('rational' or 'prime')."""
    if name == "rational":
        return RationalField()
    if name == "prime":
        return PrimeField(prime)
    raise ValueError(f"field must be 'rational' or 'prime' (got {name!r})")


def axpy(target: SparseVector, scale, source: SparseVector, field) -> None:
    """target += scale * source, in place, dropping zeros."""
    for key, value in source.items():
        updated = field.normalize(target.get(key, 0) + scale * value)
        if updated:
            target[key] = updated
        else:
            target.pop(key, None)


def scaled(vector: SparseVector, scale, field) -> SparseVector:
    result = {}
    for key, value in vector.items():
        product = field.normalize(scale * value)
        if product:
            result[key] = product
    return result


class EchelonBasis:
    def __init__(self, field=None, track: bool = False) -> None:
        self.field = field or RationalField()
        self.track = track
        self._rows: Dict[int, SparseVector] = {}
        self._combos: Dict[int, SparseVector] = {}
        self.dependencies: List[SparseVector] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def row(self, pivot: int) -> SparseVector:
        return self._rows[pivot]

    def combination(self, pivot: int) -> SparseVector:
        return self._combos[pivot]

    def _eliminate(self, vector: SparseVector, combo: Optional[SparseVector]) -> SparseVector:
        field = self.field
        residual = {}
        for key, value in vector.items():
            value = field.normalize(field.coerce(value))
            if value:
                residual[key] = value
        heap = [-key for key in residual]
        heapq.heapify(heap)
        while heap:
            key = -heapq.heappop(heap)
            value = residual.get(key)
            if not value or key not in self._rows:
                continue
            row = self._rows[key]
            for other in row:
                if other not in residual:
                    heapq.heappush(heap, -other)
            axpy(residual, -value, row, field)
            if combo is not None:
                axpy(combo, -value, self._combos[key], field)
        return residual

    def reduce(self, vector: SparseVector) -> SparseVector:
        """Remainder of vector after full reduction by the stored rows."""
        return self._eliminate(vector, None)

    def contains(self, vector: SparseVector) -> bool:
        return not self._eliminate(vector, None)

    def add(self, vector: SparseVector, tag: Optional[int] = None) -> bool:
        combo = None
        if self.track:
            combo = {tag: 1} if tag is not None else {}
        residual = self._eliminate(vector, combo)
        if not residual:
            if combo:
                self.dependencies.append(combo)
            return False
        pivot = max(residual)
        scale = self.field.inverse(residual[pivot])
        self._rows[pivot] = scaled(residual, scale, self.field)
        if combo is not None:
            self._combos[pivot] = scaled(combo, scale, self.field)
        return True

    def extend(self, vectors: Iterable[SparseVector]) -> int:
        added = 0
        for vector in vectors:
            if self.add(vector):
                added += 1
        return added

    def express(self, vector: SparseVector) -> SparseVector:
        if not self.track:
            raise RowReductionError("express() needs an EchelonBasis built with track=True")
        combo: SparseVector = {}
        residual = self._eliminate(vector, combo)
        if residual:
            raise RowReductionError(f"vector is not in the span (remainder has {len(residual)} terms)")
        return {tag: self.field.normalize(-value) for tag, value in combo.items() if value}

    def rref(self) -> None:
        """Back-substitute so that each row vanishes on every other pivot."""
        field = self.field
        for pivot in sorted(self._rows):
            row = self._rows[pivot]
            for other in [key for key in row if key != pivot and key in self._rows]:
                value = row.get(other)
                if not value:
                    continue
                axpy(row, -value, self._rows[other], field)
                if self.track:
                    axpy(self._combos[pivot], -value, self._combos[other], field)


def rank_of(vectors: Iterable[SparseVector], field=None) -> int:
    basis = EchelonBasis(field)
    basis.extend(vectors)
    return basis.rank

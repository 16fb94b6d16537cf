"""
SemigroupManager Module Contract

IDENTITY:
- Module: SemigroupManager
- Purpose: Numerical semigroups: membership, gaps, Frobenius and pseudo-Frobenius
  numbers, symmetry, and the symmetrization construction S -> S-bar
- Interface: NumericalSemigroup class, GapData record, symmetrize() helper

GUARANTEES:
- Minimality: generators are reduced to the minimal generating set on construction
- Membership: decided from the Apery set of the smallest generator, computed once
- Symmetrization: the result is checked to be symmetric, to halve back to S, and to
  have Frobenius number gbar before it is returned

INPUT CONTRACTS:
NumericalSemigroup(generators)
    ACCEPTS: positive integers with gcd 1
    REJECTS: empty input, non-positive entries, gcd > 1 (SemigroupError)
symmetrize(gbar)
    ACCEPTS: odd gbar >= max(3F(S) + 1, 1); for S = N the result is <2, gbar + 2>
    REJECTS: anything else (SymmetrizationError)

INVARIANTS:
- apery[r] is the least element of S congruent to r modulo the multiplicity
- frobenius() == max(apery) - multiplicity

FAILURE MODES:
- SemigroupError for invalid generators
- SymmetrizationError for an invalid gbar or a failed postcondition

THREAD SAFETY:
- The Apery table is built under a lock; everything else is read-only afterwards
"""
import heapq
import logging
import threading
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, List, Optional, Tuple

from SeriesManager import UniSeries

logger = logging.getLogger(__name__)

# The seven-generated semigroup whose symmetrizations carry the Poincare series examples
BASE_SEMIGROUP = (18, 24, 25, 26, 28, 30, 33)


class SemigroupError(Exception):
    """Raised for invalid semigroup input"""
    pass


class SymmetrizationError(SemigroupError, ValueError):
    """Raised when gbar is not admissible or the symmetrization check fails"""
    pass


@dataclass(frozen=True)
class GapData:
    frobenius: int
    gaps: Tuple[int, ...]
    pseudo_frobenius: Tuple[int, ...]

    @property
    def genus(self) -> int:
        return len(self.gaps)

    @property
    def type(self) -> int:
        return len(self.pseudo_frobenius)


class NumericalSemigroup:
    """
    A numerical semigroup given by generators.

    Contract:
    - Generators passed in are minimalized; the `generators` property is sorted and minimal.
    - contains(n) is O(1) after the first call.
    - Not meant to be mutated; derived semigroups are new instances.
    """

    def __init__(self, generators: Iterable[int]) -> None:
        values = sorted(set(int(g) for g in generators))
        if not values:
            raise SemigroupError("a numerical semigroup needs at least one generator")
        if values[0] <= 0:
            raise SemigroupError(f"generators must be positive (got {values[0]})")
        if reduce(gcd, values) != 1:
            raise SemigroupError(f"generators must have gcd 1 (got gcd {reduce(gcd, values)})")
        self._lock = threading.Lock()
        self._apery: Optional[List[int]] = None
        self._generators = self._minimalize(values)

    @staticmethod
    def _minimalize(values: List[int]) -> Tuple[int, ...]:
        # a generator is redundant when it is a sum of smaller kept generators
        kept: List[int] = []
        for g in values:
            reachable = [False] * (g + 1)
            reachable[0] = True
            for n in range(1, g + 1):
                reachable[n] = any(n >= k and reachable[n - k] for k in kept)
            if not reachable[g]:
                kept.append(g)
        return tuple(kept)

    @property
    def generators(self) -> Tuple[int, ...]:
        return self._generators

    @property
    def multiplicity(self) -> int:
        return self._generators[0]

    @property
    def embedding_dimension(self) -> int:
        return len(self._generators)

    @property
    def apery(self) -> List[int]:
        """Apery set with respect to the multiplicity, indexed by residue."""
        if self._apery is None:
            with self._lock:
                if self._apery is None:
                    self._apery = self._compute_apery()
        return self._apery

    def _compute_apery(self) -> List[int]:
        m = self.multiplicity
        best = [None] * m
        best[0] = 0
        queue = [(0, 0)]
        while queue:
            value, residue = heapq.heappop(queue)
            if value != best[residue]:
                continue
            for g in self._generators[1:]:
                candidate = value + g
                slot = candidate % m
                if best[slot] is None or candidate < best[slot]:
                    best[slot] = candidate
                    heapq.heappush(queue, (candidate, slot))
        logger.debug("Apery set of %s computed (max %d)", self._generators, max(best))
        return best

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        return n >= self.apery[n % self.multiplicity]

    __contains__ = contains

    def frobenius(self) -> int:
        """Largest integer not in S; -1 when S is all of N."""
        return max(self.apery) - self.multiplicity

    def gap_data(self) -> GapData:
        f = self.frobenius()
        gaps = tuple(n for n in range(1, f + 1) if not self.contains(n))
        pseudo = tuple(sorted(
            (z for z in gaps if all(self.contains(z + g) for g in self._generators)),
            reverse=True,
        ))
        return GapData(frobenius=f, gaps=gaps, pseudo_frobenius=pseudo)

    def is_symmetric(self) -> bool:
        f = self.frobenius()
        return all(self.contains(n) != self.contains(f - n) for n in range(f + 1))

    def symmetrize(self, gbar: int) -> "NumericalSemigroup":
        return symmetrize(self, gbar)

    def halve(self) -> "NumericalSemigroup":
        """The semigroup {n : 2n in S}."""
        bound = self.frobenius() // 2 + 1
        candidates = [n for n in range(1, 2 * bound + self.multiplicity + 1) if self.contains(2 * n)]
        return NumericalSemigroup(candidates)

    def hilbert_series(self, order: int):
        """Generating function of S, sum over s in S of z^s, truncated at the given order."""
        return UniSeries([1 if self.contains(n) else 0 for n in range(order + 1)], order)

    def __eq__(self, other) -> bool:
        return isinstance(other, NumericalSemigroup) and self._generators == other._generators

    def __hash__(self) -> int:
        return hash(self._generators)

    def __repr__(self) -> str:
        return f"NumericalSemigroup({list(self._generators)})"


def symmetrize(semigroup: NumericalSemigroup, gbar: int) -> NumericalSemigroup:
    """S-bar = <2S, gbar - 2PF(S)> for odd gbar >= 3F(S) + 1."""
    data = semigroup.gap_data()
    f = data.frobenius
    if gbar % 2 == 0:
        raise SymmetrizationError(f"gbar must be odd (got {gbar})")
    if gbar < max(3 * f + 1, 1):
        raise SymmetrizationError(f"gbar must be at least {max(3 * f + 1, 1)} (got {gbar})")

    doubled = [2 * g for g in semigroup.generators]
    # S = N has no gaps; the odd part {gbar - 2y : y not in S} starts at y = -1
    pseudo = data.pseudo_frobenius if f >= 0 else (-1,)
    shifted = [gbar - 2 * p for p in pseudo]
    result = NumericalSemigroup(doubled + shifted)

    if not result.is_symmetric():
        raise SymmetrizationError(f"S-bar for gbar={gbar} is not symmetric")
    if result.halve() != semigroup:
        raise SymmetrizationError(f"S-bar for gbar={gbar} does not halve back to S")
    if result.frobenius() != gbar:
        raise SymmetrizationError(f"F(S-bar) = {result.frobenius()} but gbar = {gbar}")
    logger.info("symmetrized %s with gbar=%d -> %s", semigroup, gbar, result)
    return result


def symmetrization_sweep(semigroup: NumericalSemigroup, start: int, stop: int) -> List[Tuple[int, Tuple[int, ...]]]:
    """Every admissible odd gbar in [start, stop] with the generators of S-bar."""
    f = semigroup.frobenius()
    first = max(start, 3 * f + 1, 1)
    if first % 2 == 0:
        first += 1
    return [(g, symmetrize(semigroup, g).generators) for g in range(first, stop + 1, 2)]

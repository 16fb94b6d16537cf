"""
MonomialManager Module Contract

IDENTITY:
- Module: MonomialManager
- Purpose: Hilbert series of a free associative algebra modulo a monomial ideal,
  by counting words that avoid forbidden factors
- Interface: MonomialAlgebraSpec, FactorAutomaton, hilbert_series()

GUARANTEES:
- Counting: coefficient n is the number of words of length n with no forbidden factor
- Rational form: numerator and denominator come from the transfer matrix A of the
  automaton, H(t) = e_root (I - tA)^-1 1 with det(I - tA) as denominator

INPUT CONTRACTS:
MonomialAlgebraSpec(alphabet, forbidden)
    REJECTS: words of length < 2, unknown letters, a forbidden word that contains
             another one as a factor (MonomialAlgebraError)

THREAD SAFETY:
- Pure; the automaton is immutable once built
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np
import sympy

from SeriesManager import VARIABLE, RationalFn, UniSeries

logger = logging.getLogger(__name__)


class MonomialAlgebraError(Exception):
    """Raised for an invalid monomial algebra description"""
    pass


def _is_factor(short: Tuple[str, ...], long: Tuple[str, ...]) -> bool:
    return any(long[i:i + len(short)] == short for i in range(len(long) - len(short) + 1))


def parse_word(text: str, alphabet: Sequence[str]) -> Tuple[str, ...]:
    """Split a word into letters, longest letter first."""
    letters = sorted(alphabet, key=len, reverse=True)
    word, position = [], 0
    while position < len(text):
        for letter in letters:
            if text.startswith(letter, position):
                word.append(letter)
                position += len(letter)
                break
        else:
            raise MonomialAlgebraError(f"{text!r} has no letter of {list(alphabet)} at position {position}")
    return tuple(word)


@dataclass(frozen=True)
class MonomialAlgebraSpec:
    alphabet: Tuple[str, ...]
    forbidden: Tuple[Tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if not self.alphabet:
            raise MonomialAlgebraError("the alphabet is empty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise MonomialAlgebraError(f"repeated letters in {self.alphabet}")
        for word in self.forbidden:
            if len(word) < 2:
                raise MonomialAlgebraError(f"forbidden word {''.join(word)!r} must have length at least 2")
            unknown = set(word) - set(self.alphabet)
            if unknown:
                raise MonomialAlgebraError(f"forbidden word {''.join(word)!r} uses {sorted(unknown)}")
        for i, short in enumerate(self.forbidden):
            for j, long in enumerate(self.forbidden):
                if i != j and _is_factor(short, long):
                    raise MonomialAlgebraError(
                        f"forbidden set is not reduced: {''.join(short)} is a factor of {''.join(long)}"
                    )

    @classmethod
    def parse(cls, alphabet: str, forbidden: str) -> "MonomialAlgebraSpec":
        letters = tuple(a.strip() for a in alphabet.split(",") if a.strip())
        words = tuple(parse_word(w.strip(), letters) for w in forbidden.split(",") if w.strip())
        return cls(letters, words)


class FactorAutomaton:
    """Aho-Corasick automaton of the forbidden words; dead states have read one."""

    def __init__(self, spec: MonomialAlgebraSpec) -> None:
        self.spec = spec
        letters = {a: i for i, a in enumerate(spec.alphabet)}
        children: List[Dict[int, int]] = [{}]
        terminal = [False]
        for word in spec.forbidden:
            state = 0
            for letter in word:
                index = letters[letter]
                if index not in children[state]:
                    children.append({})
                    terminal.append(False)
                    children[state][index] = len(children) - 1
                state = children[state][index]
            terminal[state] = True

        size, width = len(children), len(spec.alphabet)
        delta = [[0] * width for _ in range(size)]
        failure = [0] * size
        queue = [0]
        for state in queue:
            for a in range(width):
                child = children[state].get(a)
                if child is None:
                    delta[state][a] = delta[failure[state]][a] if state else 0
                    continue
                failure[child] = delta[failure[state]][a] if state else 0
                terminal[child] = terminal[child] or terminal[failure[child]]
                delta[state][a] = child
                queue.append(child)

        self.live = [s for s in range(size) if not terminal[s]]
        index = {s: i for i, s in enumerate(self.live)}
        matrix = np.zeros((len(self.live), len(self.live)), dtype=object)
        for s in self.live:
            for a in range(width):
                target = delta[s][a]
                if target in index:
                    matrix[index[s], index[target]] += 1
        self.transfer_matrix = matrix
        logger.debug("factor automaton: %d states, %d live", size, len(self.live))

    def counts(self, order: int) -> List[int]:
        vector = np.zeros(len(self.live), dtype=object)
        vector[0] = 1
        counts = []
        for _ in range(order + 1):
            counts.append(int(vector.sum()))
            vector = vector.dot(self.transfer_matrix)
        return counts

    def rational_function(self) -> RationalFn:
        size = len(self.live)
        system = sympy.eye(size) - VARIABLE * sympy.Matrix(self.transfer_matrix.tolist())
        denominator = sympy.expand(system.det())
        numerator = sympy.expand((system.adjugate() * sympy.ones(size, 1))[0])
        return RationalFn(numerator, denominator)


def hilbert_series(spec: MonomialAlgebraSpec, order: int) -> Tuple[UniSeries, RationalFn]:
    automaton = FactorAutomaton(spec)
    return UniSeries(automaton.counts(order)), automaton.rational_function()


def count_words(spec: MonomialAlgebraSpec, length: int) -> int:
    """Brute-force count of words of the given length avoiding every forbidden factor."""
    return sum(
        1 for word in product(spec.alphabet, repeat=length)
        if not any(_is_factor(f, word) for f in spec.forbidden)
    )

"""Evolution words over spin exchanges: induced permutations, orbit structure,
block Hamiltonians, the uniform polynomial form, and exact spectra.

An exchange word is an ordered product of two-spin exchanges; the rightmost
factor acts first on states, so "P23 P12 P34" exchanges spins 3,4 first.
One application of the word permutes the 2^N configurations; each cycle of
that permutation is a cogwheel, and the Hamiltonian is assembled cycle by
cycle from the closed-form cogwheel logarithms.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cogwheel import cogwheel_hamiltonian, polynomial_coefficients
from .permutation import Permutation
from .spins import SPIN_CAP, exchange_permutation


class WordParseError(ValueError):
    """Syntax or validation error in an exchange-word string, with position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UntouchedSpinWarning(UserWarning):
    """The word never addresses some spin; its blocks are pure bystanders."""


@dataclass(frozen=True)
class ExchangeWord:
    """An ordered sequence of spin pairs; the last listed pair acts first."""

    n_spins: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not 2 <= self.n_spins <= SPIN_CAP:
            raise ValueError(f"n_spins must be in 2..{SPIN_CAP}")
        factors = tuple((int(i), int(j)) for i, j in self.factors)
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise ValueError("a word must have at least one factor")
        for i, j in factors:
            if not (1 <= i <= self.n_spins and 1 <= j <= self.n_spins):
                raise ValueError(f"spin labels must be in 1..{self.n_spins}, got ({i}, {j})")
            if i == j:
                raise ValueError(f"a factor needs two distinct spins, got ({i}, {j})")

    @property
    def touched(self) -> frozenset[int]:
        return frozenset(label for pair in self.factors for label in pair)

    def __str__(self) -> str:
        if self.n_spins <= 9:
            return " ".join(f"P{i}{j}" for i, j in self.factors)
        return " ".join(f"({i} {j})" for i, j in self.factors)


_P_FACTOR = re.compile(r"P([1-9])([1-9])")
_PAIR_FACTOR = re.compile(r"\(\s*(\d+)[\s,]+(\d+)\s*\)")


def parse_word(text: str, n_spins: int) -> ExchangeWord:
    """Parse "P23 P12 P34" or "(2 3)(1 2)(3 4)" into an ExchangeWord.

    Factors appear in textual order (leftmost in the text acts last on states).
    P-notation carries one digit per spin and covers labels 1..9; the pair
    notation covers all labels up to the spin cap.
    """
    factors: list[tuple[int, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        for pattern in (_P_FACTOR, _PAIR_FACTOR):
            match = pattern.match(text, pos)
            if match:
                i, j = int(match.group(1)), int(match.group(2))
                if not (1 <= i <= n_spins and 1 <= j <= n_spins):
                    raise WordParseError(f"spin label out of range 1..{n_spins}", pos)
                if i == j:
                    raise WordParseError("a factor needs two distinct spins", pos)
                factors.append((i, j))
                pos = match.end()
                break
        else:
            raise WordParseError(f"expected a factor like 'P23' or '(2 3)', found {text[pos]!r}", pos)
    if not factors:
        raise WordParseError("empty word", 0)
    return ExchangeWord(n_spins=n_spins, factors=tuple(factors))


def evolution_permutation(word: ExchangeWord) -> Permutation:
    """The permutation of the 2^N configurations effected by one application of the word."""
    untouched = set(range(1, word.n_spins + 1)) - word.touched
    if untouched:
        warnings.warn(
            f"word {word} never touches spin(s) {sorted(untouched)}",
            UntouchedSpinWarning,
            stacklevel=2,
        )
    perm = Permutation.identity(1 << word.n_spins)
    for i, j in word.factors:  # left factor composes on the left = acts last
        perm = perm * exchange_permutation(word.n_spins, i, j)
    return perm


@dataclass(frozen=True)
class OrbitDecomposition:
    """Disjoint cycles of an evolution permutation, in evolution order."""

    cycles: tuple[tuple[int, ...], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles))

    @property
    def fixed_points(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.cycles if len(c) == 1)

    @property
    def size(self) -> int:
        return sum(len(c) for c in self.cycles)


def orbit_decomposition(perm: Permutation) -> OrbitDecomposition:
    """Cycles sorted by smallest member, each starting at its smallest member."""
    return OrbitDecomposition(cycles=perm.cycles())


@dataclass(frozen=True, eq=False)
class BlockHamiltonianReport:
    """The assembled Hamiltonian plus the per-cycle cogwheel blocks it came from."""

    matrix: np.ndarray
    per_cycle: tuple[tuple[tuple[int, ...], np.ndarray], ...]
    timestep: float


def hamiltonian_from_permutation(perm: Permutation, timestep: float = 1.0) -> BlockHamiltonianReport:
    """Assemble the self-adjoint H with expm(-i*H*T) equal to the permutation matrix.

    Each cycle (x_0 -> x_1 -> ...) of length L is identified position-by-position
    with the L-state cogwheel, and the closed-form cogwheel Hamiltonian is
    embedded on its span; fixed points carry energy zero. Cycles start at their
    smallest member, which fixes the (gauge) choice of cogwheel origin.
    """
    if not timestep > 0:
        raise ValueError("timestep must be positive")
    dim = perm.size
    h = np.zeros((dim, dim), dtype=complex)
    per_cycle = []
    for cycle in perm.cycles():
        block = cogwheel_hamiltonian(len(cycle), timestep)
        h[np.ix_(cycle, cycle)] = block
        per_cycle.append((cycle, block))
    return BlockHamiltonianReport(matrix=h, per_cycle=tuple(per_cycle), timestep=timestep)


def polynomial_matrix(perm: Permutation, coefficients) -> np.ndarray:
    """Evaluate sum_k c_k * M^k at the permutation matrix M."""
    coeffs = np.asarray(coefficients, dtype=complex)
    m = perm.matrix()
    power = np.eye(perm.size, dtype=complex)
    total = np.zeros((perm.size, perm.size), dtype=complex)
    for k, c in enumerate(coeffs):
        if k:
            power = m @ power
        total += c * power
    return total


def uniform_polynomial_form(perm: Permutation, timestep: float = 1.0) -> np.ndarray:
    """Coefficients h_0..h_{L-1}, L = lcm of cycle lengths, with H = sum_k h_k U^k.

    The same coefficients work on every cycle because a length-L' cycle with
    L' | L samples the length-L energy grid at every (L/L')-th point, and the
    inverse-DFT coefficients reproduce the energy at every grid point.
    """
    if not timestep > 0:
        raise ValueError("timestep must be positive")
    return polynomial_coefficients(perm.order(), timestep)


@dataclass(frozen=True)
class SpectrumReport:
    """Distinct energies, multiplicities, and the cycles contributing each energy."""

    distinct_energies: tuple[float, ...]
    multiplicities: tuple[int, ...]
    block_provenance: tuple[tuple[int, ...], ...]

    @property
    def total_multiplicity(self) -> int:
        return sum(self.multiplicities)


def spectrum(perm: Permutation, timestep: float = 1.0) -> SpectrumReport:
    """Exact spectrum of the assembled Hamiltonian, by analytic bookkeeping.

    A cycle of length L contributes energies 2*pi*n/(L*T), n = 0..L-1. Levels
    from different cycles are merged by the exact rational n/L, so no float
    comparison is involved; no numerical diagonalization is performed.
    """
    if not timestep > 0:
        raise ValueError("timestep must be positive")
    groups: dict[Fraction, tuple[int, list[int]]] = {}
    for cycle_index, cycle in enumerate(perm.cycles()):
        length = len(cycle)
        for n in range(length):
            key = Fraction(n, length)
            mult, sources = groups.setdefault(key, (0, []))
            groups[key] = (mult + 1, sources)
            if cycle_index not in sources:
                sources.append(cycle_index)
    fractions = sorted(groups)
    energies = tuple(2.0 * np.pi * f.numerator / (f.denominator * timestep) for f in fractions)
    mults = tuple(groups[f][0] for f in fractions)
    provenance = tuple(tuple(groups[f][1]) for f in fractions)
    return SpectrumReport(
        distinct_energies=energies, multiplicities=mults, block_provenance=provenance
    )

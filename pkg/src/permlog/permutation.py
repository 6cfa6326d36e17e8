"""Permutations on {0..n-1} in one-line form, with cycle structure."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Permutation:
    """A bijection on {0..n-1}; ``map[m]`` is the image of m.

    Composition follows matrix convention: ``(p * q)(x) = p(q(x))``, i.e. the
    right factor acts first, and ``(p * q).matrix() == p.matrix() @ q.matrix()``.
    """

    map: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(x) for x in self.map)
        object.__setattr__(self, "map", entries)
        if len(entries) == 0:
            raise ValueError("a permutation needs at least one point")
        if sorted(entries) != list(range(len(entries))):
            raise ValueError("map is not a bijection on 0..n-1")

    @property
    def size(self) -> int:
        return len(self.map)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        if not (0 <= a < n and 0 <= b < n) or a == b:
            raise ValueError(f"transposition needs two distinct points in 0..{n - 1}")
        img = list(range(n))
        img[a], img[b] = b, a
        return cls(tuple(img))

    def __call__(self, index: int) -> int:
        return self.map[index]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.size != other.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")
        return Permutation(tuple(self.map[q] for q in other.map))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for src, dst in enumerate(self.map):
            inv[dst] = src
        return Permutation(tuple(inv))

    def __pow__(self, exponent: int) -> "Permutation":
        base = self if exponent >= 0 else self.inverse()
        k = abs(exponent)
        out = Permutation.identity(self.size)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.map))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles, each starting at its smallest member, sorted by that member."""
        seen: set[int] = set()
        out: list[tuple[int, ...]] = []
        for start in range(self.size):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.map[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.map[x]
            out.append(tuple(cyc))
        return tuple(out)

    def cycle_lengths(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles()))

    def order(self) -> int:
        """Smallest k >= 1 with self**k equal to the identity (lcm of cycle lengths)."""
        return math.lcm(*self.cycle_lengths())

    def matrix(self, dtype=complex) -> np.ndarray:
        """The matrix sending basis vector m to basis vector map[m] (one 1 per column)."""
        m = np.zeros((self.size, self.size), dtype=dtype)
        m[list(self.map), range(self.size)] = 1
        return m

"""Negative continued fractions and the subgroup they select.

A coprime pair (n, k) with n > k >= 1 has a unique expansion

    n/k = n_1 - 1/(n_2 - 1/(... - 1/n_g))

with every n_i >= 2.  The expansion is witnessed by a word in SL(2, Z):
with T = [[1, 1], [0, 1]] and S = [[0, -1], [1, 0]], the product
T^(n_1) S T^(n_2) S ... S T^(n_g) sends 0 to n/k under fractional linear
action.  The entries equal to 2 pick out adjacent transpositions
(i, i+1) and hence a subgroup of Sym({1, ..., g+1}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .sigma import SigmaSubgroup


@dataclass(frozen=True)
class Expansion:
    """Negative continued fraction of n/k with all entries >= 2."""

    n: int
    k: int
    entries: tuple[int, ...]

    @property
    def g(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class PSL2Word:
    """Integer matrix [[a, b], [c, d]] of determinant 1, used up to sign.

    Because the matrix only ever acts by fractional linear
    transformations, the global sign is irrelevant; comparisons go
    through the resulting fractions, never the raw entries.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("matrix must have determinant 1")

    def __matmul__(self, other: "PSL2Word") -> "PSL2Word":
        return PSL2Word(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def apply(self, x: Fraction) -> Fraction:
        """Fractional linear action (a*x + b)/(c*x + d)."""
        num = self.a * x + self.b
        den = self.c * x + self.d
        if den == 0:
            raise ZeroDivisionError("image is the point at infinity")
        return Fraction(num, den)


S = PSL2Word(0, -1, 1, 0)


def T_power(e: int) -> PSL2Word:
    return PSL2Word(1, e, 0, 1)


def hj_expand(n: int, k: int) -> Expansion:
    """The unique expansion of n/k with all entries >= 2.

    Each step takes the ceiling n_1 = ceil(n/k) and recurses on
    (k, n_1 * k - n); coprimality and n > k are preserved, so entries
    stay >= 2 and the recursion terminates.
    """
    if not (isinstance(n, int) and isinstance(k, int)):
        raise ValueError("n and k must be integers")
    if not n > k >= 1:
        raise ValueError(f"need n > k >= 1, got n={n}, k={k}")
    if math.gcd(n, k) != 1:
        raise ValueError(f"need gcd(n, k) = 1, got gcd({n}, {k}) = {math.gcd(n, k)}")
    entries: list[int] = []
    a, b = n, k
    while b:
        q = -(-a // b)
        entries.append(q)
        a, b = b, q * b - a
    return Expansion(n, k, tuple(entries))


def word_matrix(entries: tuple[int, ...] | list[int]) -> PSL2Word:
    """The product T^(n_1) S T^(n_2) S ... S T^(n_g)."""
    if not entries:
        raise ValueError("need at least one entry")
    m = T_power(entries[0])
    for e in entries[1:]:
        m = m @ S @ T_power(e)
    return m


def verify_word(expansion: Expansion) -> Fraction:
    """Evaluate the SL(2, Z) word of the expansion at 0.

    For a correct expansion the result is n/k; the caller compares, so
    this function stays usable as an independent check on hj_expand.
    """
    return word_matrix(expansion.entries).apply(Fraction(0))


def sigma_from_expansion(expansion: Expansion) -> SigmaSubgroup:
    """Transpositions (i, i+1) for the positions i with entry 2."""
    gens = frozenset(i + 1 for i, e in enumerate(expansion.entries) if e == 2)
    return SigmaSubgroup(expansion.g + 1, gens)


@dataclass(frozen=True)
class LineBundleRecipe:
    """Symbolic description of the product polarization on the g-fold
    power attached to an expansion: per-coordinate exponents n_i - 2
    plus one diagonal correction factor for each adjacent pair of
    coordinates."""

    exponents: tuple[int, ...]
    correction_pairs: tuple[tuple[int, int], ...]

    def correction_symbols(self) -> tuple[str, ...]:
        return tuple(
            f"pr_{{{j},{j1}}}^*(L boxtimes L)(-Delta')"
            for j, j1 in self.correction_pairs
        )

    def to_dict(self) -> dict:
        return {
            "exponents": list(self.exponents),
            "correction_pairs": [list(p) for p in self.correction_pairs],
            "correction_symbols": list(self.correction_symbols()),
        }


def line_bundle_recipe(expansion: Expansion) -> LineBundleRecipe:
    """Exponent n_i - 2 on the i-th coordinate, one correction per pair
    (j, j+1) of adjacent coordinates; entries equal to 2 contribute
    exponent 0 and survive only through the corrections."""
    exponents = tuple(e - 2 for e in expansion.entries)
    pairs = tuple((j, j + 1) for j in range(1, expansion.g))
    return LineBundleRecipe(exponents, pairs)

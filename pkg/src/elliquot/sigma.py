"""Subgroups of symmetric groups generated by adjacent transpositions.

A subgroup of Sym({1, ..., g+1}) generated by a set of adjacent
transpositions (i, i+1) is itself a product of full symmetric groups on
the connected components of the path graph whose edges are the chosen
transpositions.  The components of size >= 2 are the blocks the group
permutes transitively; singleton components are the fixed indices.

That combinatorial data determines everything downstream: the block
sizes i_1, ..., i_s, their gcd d, and the fixed-index set J.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations, product

from .torus import TorusPoint

# A point of E^m is a plain tuple of torus points; every operation that
# needs a length constraint checks it explicitly.
GTuple = tuple[TorusPoint, ...]

ORBIT_ENUMERATION_LIMIT = 10**6


@dataclass(frozen=True)
class SigmaSubgroup:
    """Choice of adjacent transpositions (i, i+1), 1 <= i <= g, inside
    Sym({1, ..., g_plus_1})."""

    g_plus_1: int
    generators: frozenset[int]

    def __post_init__(self) -> None:
        gens = frozenset(int(i) for i in self.generators)
        object.__setattr__(self, "generators", gens)
        if self.g_plus_1 < 1:
            raise ValueError(f"ambient size must be >= 1, got {self.g_plus_1}")
        bad = [i for i in gens if not 1 <= i <= self.g_plus_1 - 1]
        if bad:
            raise ValueError(
                f"transposition indices {sorted(bad)} outside 1..{self.g_plus_1 - 1}"
            )

    def to_dict(self) -> dict:
        return {"g_plus_1": self.g_plus_1, "generators": sorted(self.generators)}

    @classmethod
    def from_dict(cls, data: dict) -> "SigmaSubgroup":
        return cls(data["g_plus_1"], data["generators"])


@dataclass(frozen=True)
class OrbitData:
    """Orbit structure of a SigmaSubgroup acting on {1, ..., g+1}.

    ``J`` lists the fixed indices, ``blocks`` the orbits of size >= 2 as
    contiguous integer intervals in increasing order.
    """

    g_plus_1: int
    J: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def s(self) -> int:
        return len(self.blocks)

    @property
    def d(self) -> int:
        return math.gcd(*self.sizes) if self.blocks else 1

    @property
    def g(self) -> int:
        return self.g_plus_1 - 1

    def to_dict(self) -> dict:
        return {
            "g_plus_1": self.g_plus_1,
            "J": list(self.J),
            "blocks": [list(b) for b in self.blocks],
            "sizes": list(self.sizes),
            "s": self.s,
            "d": self.d,
        }


def orbit_decomposition(sigma: SigmaSubgroup) -> OrbitData:
    """Split {1, ..., g+1} into fixed indices and transitive blocks.

    The blocks are the connected components of the path graph on
    {1, ..., g+1} with an edge (i, i+1) for each chosen transposition,
    so they are contiguous intervals of size >= 2.
    """
    components: list[list[int]] = []
    current = [1]
    for i in range(1, sigma.g_plus_1):
        if i in sigma.generators:
            current.append(i + 1)
        else:
            components.append(current)
            current = [i + 1]
    components.append(current)
    blocks = tuple(tuple(c) for c in components if len(c) >= 2)
    fixed = tuple(c[0] for c in components if len(c) == 1)
    return OrbitData(sigma.g_plus_1, fixed, blocks)


def sigma_from_block_sizes(
    sizes: tuple[int, ...] | list[int], fixed: int = 0
) -> SigmaSubgroup:
    """SigmaSubgroup whose orbit blocks have the given sizes, laid out
    consecutively from index 1, followed by ``fixed`` fixed indices."""
    if any(r < 2 for r in sizes):
        raise ValueError(f"block sizes must be >= 2, got {tuple(sizes)}")
    if fixed < 0:
        raise ValueError(f"fixed count must be >= 0, got {fixed}")
    generators: list[int] = []
    start = 1
    for r in sizes:
        generators.extend(range(start, start + r - 1))
        start += r
    return SigmaSubgroup(sum(sizes) + fixed, generators)


def epsilon_embed(z: GTuple) -> GTuple:
    """Difference embedding of E^g into the zero-sum subgroup of E^(g+1):
    (z_1, ..., z_g) -> (z_1, z_2 - z_1, ..., z_g - z_{g-1}, -z_g).

    The image sums to zero because the sum telescopes.
    """
    if len(z) < 1:
        raise ValueError("need at least one coordinate")
    out = [z[0]]
    for a, b in zip(z, z[1:]):
        out.append(b - a)
    out.append(-z[-1])
    return tuple(out)


def _check_length(x: GTuple, od: OrbitData) -> None:
    if len(x) != od.g_plus_1:
        raise ValueError(f"expected {od.g_plus_1} coordinates, got {len(x)}")


def canonicalize(x: GTuple, od: OrbitData) -> GTuple:
    """Sort the coordinates within each block; fixed coordinates stay put.

    Two tuples are in the same orbit of the subgroup exactly when their
    canonical forms agree, because the subgroup realizes every
    permutation within each block and nothing across blocks.
    """
    _check_length(x, od)
    out = list(x)
    for block in od.blocks:
        values = sorted(x[i - 1] for i in block)
        for i, value in zip(block, values):
            out[i - 1] = value
    return tuple(out)


def enumerate_orbit(x: GTuple, od: OrbitData) -> set[GTuple]:
    """The full orbit of x under the subgroup, as a set of tuples.

    Guarded: refuses when the product of block factorials exceeds 10^6.
    """
    _check_length(x, od)
    bound = math.prod(math.factorial(r) for r in od.sizes)
    if bound > ORBIT_ENUMERATION_LIMIT:
        raise ValueError(
            f"orbit enumeration would touch {bound} permutations, "
            f"over the {ORBIT_ENUMERATION_LIMIT} limit"
        )
    orbit: set[GTuple] = set()
    per_block = [list(permutations(block)) for block in od.blocks]
    for arrangement in product(*per_block):
        out = list(x)
        for block, image in zip(od.blocks, arrangement):
            for i, j in zip(block, image):
                out[i - 1] = x[j - 1]
        orbit.add(tuple(out))
    return orbit

"""Exact model of an elliptic curve as the divisible group (Q/Z)^2.

Every set-level statement about torsion points of an elliptic curve over an
algebraically closed field of characteristic zero can be checked on this
model: E[m] is (Z/m)^2, multiplication by r is surjective with kernel of
size r^2, and all arithmetic is exact rational arithmetic, so equality
tests carry no tolerance.

Points are stored as pairs of ``Fraction`` values normalized into [0, 1).
``Fraction`` keeps numerators and denominators reduced and arbitrarily
large, so no overflow is possible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm


@dataclass(frozen=True, order=True)
class TorusPoint:
    """A point of (Q/Z)^2 with both coordinates reduced into [0, 1).

    Instances are immutable, hashable and totally ordered (lexicographic
    on the exact rational coordinates), so they can be sorted and used as
    set or dict members.
    """

    u: Fraction
    v: Fraction

    def __post_init__(self) -> None:
        u = self.u if type(self.u) is Fraction else Fraction(self.u)
        v = self.v if type(self.v) is Fraction else Fraction(self.v)
        if u < 0 or u >= 1:
            u = u % 1
        if v < 0 or v >= 1:
            v = v % 1
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    def __hash__(self) -> int:
        # reduced numerator/denominator pairs determine the point, and
        # hashing them as integers avoids Fraction.__hash__, which pays
        # for a modular inverse on every call
        u, v = self.u, self.v
        return hash((u.numerator, u.denominator, v.numerator, v.denominator))

    def __add__(self, other: "TorusPoint") -> "TorusPoint":
        return TorusPoint(self.u + other.u, self.v + other.v)

    def __neg__(self) -> "TorusPoint":
        return TorusPoint(-self.u, -self.v)

    def __sub__(self, other: "TorusPoint") -> "TorusPoint":
        return self + (-other)

    def scaled(self, m: int) -> "TorusPoint":
        return TorusPoint(m * self.u, m * self.v)

    def order(self) -> int:
        """Smallest m >= 1 with m * self = 0."""
        return lcm(self.u.denominator, self.v.denominator)

    def __str__(self) -> str:
        return format_point(self)


ZERO = TorusPoint(Fraction(0), Fraction(0))


def add(p: TorusPoint, q: TorusPoint) -> TorusPoint:
    return p + q


def neg(p: TorusPoint) -> TorusPoint:
    return -p


def scalar_mul(m: int, p: TorusPoint) -> TorusPoint:
    return p.scaled(m)


def order(p: TorusPoint) -> int:
    return p.order()


def torsion_subgroup(m: int) -> list[TorusPoint]:
    """All m^2 points killed by m, in lexicographic order.

    The listing order is deterministic: (a/m, b/m) sorted by (a, b).
    """
    if m < 1:
        raise ValueError(f"torsion level must be >= 1, got {m}")
    return [
        TorusPoint(Fraction(a, m), Fraction(b, m))
        for a in range(m)
        for b in range(m)
    ]


def division_preimages(p: TorusPoint, r: int) -> list[TorusPoint]:
    """All r^2 points q with r*q = p, sorted.

    Division by r is surjective on a divisible group; the preimages of
    (u, v) are ((u + j)/r, (v + l)/r) for 0 <= j, l < r.
    """
    if r < 1:
        raise ValueError(f"division index must be >= 1, got {r}")
    us = [(p.u + j) / r for j in range(r)]
    vs = [(p.v + l) / r for l in range(r)]
    return sorted(TorusPoint(u, v) for u in us for v in vs)


def sample_point(torsion_level: int, rng: random.Random) -> TorusPoint:
    """Uniform point of E[torsion_level] drawn from an existing generator."""
    if torsion_level < 1:
        raise ValueError(f"torsion level must be >= 1, got {torsion_level}")
    a = rng.randrange(torsion_level)
    b = rng.randrange(torsion_level)
    return TorusPoint(Fraction(a, torsion_level), Fraction(b, torsion_level))


def random_torsion_point(torsion_level: int, seed: int) -> TorusPoint:
    """Reproducible uniform point of E[torsion_level]."""
    return sample_point(torsion_level, random.Random(seed))


def format_point(p: TorusPoint) -> str:
    """Render as "a/b,c/d" with both fractions reduced and in [0, 1)."""
    return (
        f"{p.u.numerator}/{p.u.denominator},"
        f"{p.v.numerator}/{p.v.denominator}"
    )


def parse_point(text: str) -> TorusPoint:
    """Inverse of format_point; accepts any Fraction-readable coordinates."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected 'a/b,c/d', got {text!r}")
    return TorusPoint(Fraction(parts[0].strip()), Fraction(parts[1].strip()))

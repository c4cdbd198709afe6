"""Group-theoretic structure of the quotient and its etale cover.

Everything here is integer linear algebra.  The quotient of E^g by a
subgroup generated by adjacent transpositions fibers over an abelian
base in projective-space bundles, and the induced cover of the quotient
by a product of symmetric powers is Galois with a finite abelian group
that depends only on the block sizes i_1, ..., i_s and on whether any
index is fixed:

* some index fixed: the full deck group E[i_1] x ... x E[i_s];
* no index fixed: the kernel of the map (z_a) -> sum (i_a/d) z_a from
  E[i_1] x ... x E[i_s] to E[d], where d = gcd(i_a).

With E modeled as (Q/Z)^2 the two coordinates contribute identical
factors, so each invariant factor appears with doubled multiplicity.
The kernel case is computed from an integer presentation and reduced by
Smith normal form; an element-order census provides an independent
brute-force route to the same invariants, used to validate the
presentation.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .sigma import OrbitData

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors (d_1, ..., d_t) with d_1 | d_2 | ... and every
    d_i >= 2; the empty tuple is the trivial group."""

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise ValueError(f"factors {self.factors} violate divisibility")
        if any(f < 2 for f in self.factors):
            raise ValueError(f"factors {self.factors} contain a trivial entry")

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    def is_trivial(self) -> bool:
        return not self.factors


@dataclass(frozen=True)
class QuotientDescriptor:
    """Shape of the quotient variety: dimension of the abelian base,
    projective fiber dimensions, and the Galois group of the cover."""

    J_empty: bool
    base_dim: int
    fiber_dims: tuple[int, ...]
    galois: AbelianInvariants
    galois_order: int
    d: int
    component_count_of_ker_theta: int

    def to_dict(self) -> dict:
        return {
            "J_empty": self.J_empty,
            "base_dim": self.base_dim,
            "fiber_dims": list(self.fiber_dims),
            "galois_factors": list(self.galois.factors),
            "galois_order": self.galois_order,
            "d": self.d,
            "component_count_of_ker_theta": self.component_count_of_ker_theta,
        }


@dataclass(frozen=True)
class ThetaKernelStructure:
    """The kernel of (z_a) -> sum i_a z_a on E^s: an extension of a rank
    s-1 torus part by (Z/d)^2, with d^2 connected components."""

    d: int
    torus_rank: int
    torsion: AbelianInvariants
    component_count: int

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "torus_rank": self.torus_rank,
            "torsion_factors": list(self.torsion.factors),
            "component_count": self.component_count,
        }


# --- exact integer linear algebra ---


def _identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a or not b:
        return []
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    return [
        [sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for t in range(n - 1):
        if a[t][t] == 0:
            for i in range(t + 1, n):
                if a[i][t] != 0:
                    a[t], a[i] = a[i], a[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                a[i][j] = (a[i][j] * a[t][t] - a[i][t] * a[t][j]) // prev
            a[i][t] = 0
        prev = a[t][t]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: IntMatrix) -> bool:
    return abs(det(m)) == 1


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """(U, D, V) with D = U a V diagonal, d_1 | d_2 | ..., all d_i >= 0,
    and U, V unimodular.

    Classic elimination: repeatedly move a minimal nonzero pivot to the
    corner, clear its row and column by division steps, and absorb any
    entry the pivot fails to divide; each round strictly shrinks the
    pivot, so the loop terminates with a full divisibility chain.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(r) != cols for r in a):
        raise ValueError("ragged matrix")
    d = [[int(x) for x in row] for row in a]
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in d:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if d[i][j] != 0 and (best is None or abs(d[i][j]) < best):
                        best = abs(d[i][j])
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            clean = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // d[t][t]))
                    if d[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // d[t][t]))
                    if d[t][j]:
                        clean = False
            if not clean:
                continue
            stray = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if d[i][j] % d[t][t] != 0:
                        stray = i
                        break
                if stray is not None:
                    break
            if stray is None:
                break
            # fold the offending row into row t so the next pivot
            # divides it
            add_row(t, stray, 1)
        if t < rows and t < cols and d[t][t] < 0:
            negate_row(t)
    return u, d, v


def snf_diagonal(a: IntMatrix) -> list[int]:
    _, d, _ = smith_normal_form(a)
    return [d[t][t] for t in range(min(len(d), len(d[0]) if d else 0))]


def unimodular_reduction(i_list: tuple[int, ...] | list[int]) -> IntMatrix:
    """A determinant-one integer matrix M with row-vector product
    (i_1, ..., i_s) M = (d, 0, ..., 0) where d = gcd(i_1, ..., i_s).

    Built by folding consecutive coordinates with extended gcd steps;
    each fold is a 2x2 block of determinant 1 placed inside the
    identity.
    """
    s = len(i_list)
    if s < 1:
        raise ValueError("need at least one entry")
    if any(x < 1 for x in i_list):
        raise ValueError(f"entries must be >= 1, got {tuple(i_list)}")
    m = _identity(s)
    g = int(i_list[0])
    for t in range(1, s):
        gg, x, y = xgcd(g, int(i_list[t]))
        a, b = g // gg, int(i_list[t]) // gg
        for r in range(s):
            c0, ct = m[r][0], m[r][t]
            m[r][0] = x * c0 + y * ct
            m[r][t] = -b * c0 + a * ct
        g = gg
    return m


# --- abelian invariants ---


def _double_multiplicities(factors: list[int]) -> tuple[int, ...]:
    out: list[int] = []
    for f in factors:
        out.extend((f, f))
    return tuple(out)


def _cyclic_factors_from_diagonal(diagonal: list[int]) -> list[int]:
    factors = [x for x in diagonal if x not in (0, 1)]
    if 0 in diagonal:
        raise ValueError("presentation does not define a finite group")
    return sorted(factors)


def _solve_integer_columns(b: IntMatrix, r: IntMatrix) -> IntMatrix:
    """Solve b X = r exactly; entries of X must come out integral."""
    n = len(b)
    aug = [
        [Fraction(b[i][j]) for j in range(n)] + [Fraction(x) for x in r[i]]
        for i in range(n)
    ]
    cols = len(r[0])
    for t in range(n):
        piv = next(i for i in range(t, n) if aug[i][t] != 0)
        aug[t], aug[piv] = aug[piv], aug[t]
        scale = aug[t][t]
        aug[t] = [x / scale for x in aug[t]]
        for i in range(n):
            if i != t and aug[i][t] != 0:
                c = aug[i][t]
                aug[i] = [x - c * y for x, y in zip(aug[i], aug[t])]
    out = [[aug[i][n + j] for j in range(cols)] for i in range(n)]
    for row in out:
        for x in row:
            if x.denominator != 1:
                raise ValueError("solution is not integral")
    return [[int(x) for x in row] for row in out]


def _kernel_presentation(sizes: tuple[int, ...]) -> IntMatrix:
    """Integer presentation of {a in prod Z/i_a : sum a_a = 0 mod d}.

    The congruence subgroup of Z^s is free on the columns of
    B = [d e_1, e_2 - e_1, ..., e_s - e_{s-1}]; rewriting the relations
    i_a e_a in that basis gives the relation matrix whose Smith normal
    form lists the cyclic factors.
    """
    s = len(sizes)
    d = math.gcd(*sizes)
    basis = [[0] * s for _ in range(s)]
    basis[0][0] = d
    for j in range(1, s):
        basis[j][j] = 1
        basis[j - 1][j] = -1
    relations = [[sizes[j] if i == j else 0 for j in range(s)] for i in range(s)]
    return _solve_integer_columns(basis, relations)


def galois_group(od: OrbitData) -> AbelianInvariants:
    """Invariant factors of the deck group of the cover, on the model
    E = (Q/Z)^2 (so every factor appears twice).

    With a fixed index the deck group is the full product of torsion
    subgroups; with none it is the kernel of the weighted sum map to
    E[d], presented per coordinate by _kernel_presentation.
    """
    sizes = od.sizes
    if od.s == 0:
        return AbelianInvariants(())
    if od.J:
        diagonal = snf_diagonal(
            [[sizes[j] if i == j else 0 for j in range(od.s)] for i in range(od.s)]
        )
    else:
        diagonal = snf_diagonal(_kernel_presentation(sizes))
    per_coordinate = _cyclic_factors_from_diagonal(diagonal)
    return AbelianInvariants(_double_multiplicities(per_coordinate))


def invariants_from_element_orders(orders: list[int]) -> AbelianInvariants:
    """Recover the invariant factors of a finite abelian group from the
    multiset of its element orders.

    For each prime p, the count of elements killed by p^j is p^(n_j)
    and n_j - n_{j-1} is the number of cyclic p-power factors of order
    at least p^j; assembling those partitions prime by prime gives the
    invariant factors.  This route never touches the presentation
    machinery, so it can audit galois_group.
    """
    size = len(orders)
    if size == 0:
        raise ValueError("a group has at least one element")
    if orders.count(1) != 1:
        raise ValueError("expected exactly one identity element")
    tally = Counter(orders)
    per_prime: dict[int, list[int]] = {}
    for p in _prime_factors(size):
        # counts[j] = #{elements killed by p^j} = p^(n_j); the census
        # stabilizes once p^j exceeds the exponent of the p-part
        counts = [1]
        while True:
            j = len(counts)
            c = sum(n for o, n in tally.items() if p**j % o == 0)
            if c == counts[-1]:
                break
            counts.append(c)
        row_counts = [
            _int_log(counts[j], p) - _int_log(counts[j - 1], p)
            for j in range(1, len(counts))
        ]
        # row_counts[j-1] = number of cyclic p-factors of order >= p^j,
        # i.e. the conjugate of the partition of factor exponents
        per_prime[p] = sorted(_conjugate_partition(row_counts), reverse=True)
    width = max((len(v) for v in per_prime.values()), default=0)
    factors_desc = []
    for idx in range(width):
        f = 1
        for p, exps in per_prime.items():
            if idx < len(exps):
                f *= p ** exps[idx]
        factors_desc.append(f)
    return AbelianInvariants(tuple(reversed(factors_desc)))


def _prime_factors(n: int) -> list[int]:
    primes = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    return primes


def _int_log(n: int, p: int) -> int:
    e = 0
    while n % p == 0 and n > 1:
        n //= p
        e += 1
    if n != 1:
        raise ValueError(f"{n} is not a power of {p}")
    return e


def _conjugate_partition(row_counts: list[int]) -> list[int]:
    """row_counts[j-1] = number of parts >= j; return the parts."""
    parts = []
    for j, count in enumerate(row_counts, start=1):
        while len(parts) < count:
            parts.append(0)
        for i in range(count):
            parts[i] = j
    return parts


def theta_kernel_structure(i_list: tuple[int, ...] | list[int]) -> ThetaKernelStructure:
    """Structure of ker((z_a) -> sum i_a z_a) on E^s."""
    if len(i_list) < 1:
        raise ValueError("need at least one entry")
    if any(x < 1 for x in i_list):
        raise ValueError(f"entries must be >= 1, got {tuple(i_list)}")
    d = math.gcd(*i_list)
    torsion = AbelianInvariants((d, d) if d > 1 else ())
    return ThetaKernelStructure(
        d=d,
        torus_rank=len(i_list) - 1,
        torsion=torsion,
        component_count=d * d,
    )


def describe(od: OrbitData) -> QuotientDescriptor:
    """Assemble the full structural description of the quotient."""
    if od.g_plus_1 < 2:
        raise ValueError("need an ambient power of dimension at least 1")
    sizes = od.sizes
    j_empty = not od.J and od.s > 0
    if od.s == 0:
        base_dim = od.g
    else:
        base_dim = len(od.J) + od.s - 1
    galois = galois_group(od)
    return QuotientDescriptor(
        J_empty=j_empty,
        base_dim=base_dim,
        fiber_dims=tuple(r - 1 for r in sizes),
        galois=galois,
        galois_order=galois.order,
        d=od.d,
        component_count_of_ker_theta=od.d * od.d,
    )

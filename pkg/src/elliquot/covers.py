"""The etale cover of the quotient and its deck transformations.

The quotient of E^g by a subgroup generated by adjacent transpositions
is, after the difference embedding, a product of an abelian factor
indexed by the fixed indices J with symmetric powers S^(i_a)E indexed by
the blocks.  It is covered by translating zero-sum data:

* per block, phi sends a zero-sum multiset x and a point z to the
  multiset x + z (every member translated by z);
* the full cover big_psi applies phi blockwise and passes the free
  J-coordinates through.

Torsion tuples xi with i_a * xi_a = 0 act on the source by
(x_a, z_a) -> (x_a + xi_a, z_a - xi_a) without changing the image, and
the action on the z coordinates alone is already free.  When no index
is fixed the source is cut down to the sheet where the weighted sum
sum (i_a/d) z_a vanishes, and only the xi with sum (i_a/d) xi_a = 0
preserve it.

Fibers are computed exactly: a preimage of w_a forces
i_a * z_a = sym_sum(w_a), so z_a runs over the i_a^2 division preimages
and x_a = w_a - z_a is determined.  The enumeration is complete over
the whole divisible group, independent of the group action, so
comparing a fiber with a deck orbit is a genuine check rather than a
tautology.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

from .sigma import OrbitData
from .structure import describe, invariants_from_element_orders
from .torus import (
    TorusPoint,
    ZERO,
    division_preimages,
    format_point,
    order,
    sample_point,
    scalar_mul,
    torsion_subgroup,
)

FIBER_CANDIDATE_LIMIT = 10**7
FULLSCAN_CANDIDATE_LIMIT = 2 * 10**6


@dataclass(frozen=True)
class SymPoint:
    """A point of the symmetric power S^r E: an unordered multiset of r
    torus points, stored sorted so equality and hashing are canonical."""

    entries: tuple[TorusPoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))

    @property
    def r(self) -> int:
        return len(self.entries)

    def translate(self, z: TorusPoint) -> "SymPoint":
        return SymPoint(tuple(e + z for e in self.entries))


def sym_sum(x: SymPoint) -> TorusPoint:
    total = ZERO
    for e in x.entries:
        total = total + e
    return total


def _tuple_sum(points) -> TorusPoint:
    total = ZERO
    for e in points:
        total = total + e
    return total


def psi_small(x: tuple[TorusPoint, ...], z: TorusPoint) -> tuple[TorusPoint, ...]:
    """Translate an ordered zero-sum tuple diagonally by z."""
    if _tuple_sum(x) != ZERO:
        raise ValueError("tuple must sum to zero")
    return tuple(e + z for e in x)


def xi_action_small(
    xi: TorusPoint, x: tuple[TorusPoint, ...], z: TorusPoint
) -> tuple[tuple[TorusPoint, ...], TorusPoint]:
    """(x, z) -> (x + xi, z - xi) for xi killed by r = len(x); leaves
    psi_small(x, z) unchanged."""
    if scalar_mul(len(x), xi) != ZERO:
        raise ValueError(f"xi must be {len(x)}-torsion")
    return tuple(e + xi for e in x), z - xi


def phi(x: SymPoint, z: TorusPoint) -> SymPoint:
    """Translate a zero-sum multiset diagonally by z."""
    if sym_sum(x) != ZERO:
        raise ValueError("multiset must sum to zero")
    return x.translate(z)


def xi_action_sym(
    xi: TorusPoint, x: SymPoint, z: TorusPoint
) -> tuple[SymPoint, TorusPoint]:
    """(x, z) -> (x + xi, z - xi) on S_0^r E x E for r-torsion xi."""
    if scalar_mul(x.r, xi) != ZERO:
        raise ValueError(f"xi must be {x.r}-torsion")
    if sym_sum(x) != ZERO:
        raise ValueError("multiset must sum to zero")
    return x.translate(xi), z - xi


def theta(z: tuple[TorusPoint, ...], i_list: tuple[int, ...]) -> TorusPoint:
    """Weighted sum i_1 z_1 + ... + i_s z_s."""
    if len(z) != len(i_list):
        raise ValueError(f"expected {len(i_list)} points, got {len(z)}")
    total = ZERO
    for i, za in zip(i_list, z):
        total = total + scalar_mul(i, za)
    return total


def in_sheet0(z: tuple[TorusPoint, ...], i_list: tuple[int, ...]) -> bool:
    """Whether sum (i_a/d) z_a = 0, the component of ker(theta) through
    the origin; theta itself vanishes on d^2 such components."""
    if not i_list:
        raise ValueError("need at least one block")
    if len(z) != len(i_list):
        raise ValueError(f"expected {len(i_list)} points, got {len(z)}")
    d = math.gcd(*i_list)
    total = ZERO
    for i, za in zip(i_list, z):
        total = total + scalar_mul(i // d, za)
    return total == ZERO


@dataclass(frozen=True)
class CoverPoint:
    """A point of the covering space: free coordinates y (one fewer
    than the fixed indices), one zero-sum multiset x_a and one
    translation z_a per block."""

    y: tuple[TorusPoint, ...]
    z: tuple[TorusPoint, ...]
    x: tuple[SymPoint, ...]

    def to_dict(self) -> dict:
        return {
            "y": [format_point(p) for p in self.y],
            "z": [format_point(p) for p in self.z],
            "x": [[format_point(p) for p in xa.entries] for xa in self.x],
        }


@dataclass(frozen=True)
class QuotientPoint:
    """A point of the quotient: free coordinates y for all but the last
    fixed index, one multiset w_a per block.  The dropped fixed
    coordinate is recovered from the zero-sum constraint."""

    y: tuple[TorusPoint, ...]
    w: tuple[SymPoint, ...]

    def last_fixed_coordinate(self) -> TorusPoint:
        total = _tuple_sum(self.y)
        for wa in self.w:
            total = total + sym_sum(wa)
        return -total

    def to_dict(self) -> dict:
        return {
            "y": [format_point(p) for p in self.y],
            "w": [[format_point(p) for p in wa.entries] for wa in self.w],
        }


def _free_y_length(od: OrbitData) -> int:
    return max(len(od.J) - 1, 0)


def check_cover_point(c: CoverPoint, od: OrbitData) -> None:
    if len(c.y) != _free_y_length(od):
        raise ValueError(f"expected {_free_y_length(od)} free coordinates, got {len(c.y)}")
    if len(c.z) != od.s or len(c.x) != od.s:
        raise ValueError(f"expected {od.s} blocks, got {len(c.z)} and {len(c.x)}")
    for r, xa in zip(od.sizes, c.x):
        if xa.r != r:
            raise ValueError(f"block multiset has {xa.r} members, expected {r}")
        if sym_sum(xa) != ZERO:
            raise ValueError("block multiset must sum to zero")
    if not od.J and od.s > 0 and not in_sheet0(c.z, od.sizes):
        raise ValueError("translations must lie in the zero sheet")


def check_quotient_point(q: QuotientPoint, od: OrbitData) -> None:
    if len(q.y) != _free_y_length(od):
        raise ValueError(f"expected {_free_y_length(od)} free coordinates, got {len(q.y)}")
    if len(q.w) != od.s:
        raise ValueError(f"expected {od.s} blocks, got {len(q.w)}")
    for r, wa in zip(od.sizes, q.w):
        if wa.r != r:
            raise ValueError(f"block multiset has {wa.r} members, expected {r}")
    if not od.J and od.s > 0:
        total = ZERO
        for wa in q.w:
            total = total + sym_sum(wa)
        if total != ZERO:
            raise ValueError("block sums must cancel when no index is fixed")


def big_psi(c: CoverPoint, od: OrbitData) -> QuotientPoint:
    """Apply phi blockwise; the free coordinates pass through."""
    check_cover_point(c, od)
    return QuotientPoint(
        y=c.y,
        w=tuple(phi(xa, za) for xa, za in zip(c.x, c.z)),
    )


def gamma_action(
    xi: tuple[TorusPoint, ...], c: CoverPoint, od: OrbitData
) -> CoverPoint:
    """Deck transformation by a torsion tuple: z_a -> z_a - xi_a and
    x_a -> x_a + xi_a; fixes big_psi."""
    if len(xi) != od.s:
        raise ValueError(f"expected {od.s} torsion points, got {len(xi)}")
    for i, xia in zip(od.sizes, xi):
        if scalar_mul(i, xia) != ZERO:
            raise ValueError(f"component must be {i}-torsion")
    return CoverPoint(
        y=c.y,
        z=tuple(za - xia for za, xia in zip(c.z, xi)),
        x=tuple(xa.translate(xia) for xa, xia in zip(c.x, xi)),
    )


def gamma_elements(od: OrbitData) -> list[tuple[TorusPoint, ...]]:
    """The full torsion group E[i_1] x ... x E[i_s], enumerated."""
    count = math.prod(r * r for r in od.sizes)
    if count > FIBER_CANDIDATE_LIMIT:
        raise ValueError(f"group of size {count} is over the enumeration limit")
    return list(product(*(torsion_subgroup(r) for r in od.sizes)))


def sheet_stabilizer_elements(od: OrbitData) -> list[tuple[TorusPoint, ...]]:
    """Torsion tuples whose weighted sum vanishes; exactly the deck
    transformations that preserve the zero sheet."""
    return [xi for xi in gamma_elements(od) if in_sheet0(xi, od.sizes)]


def deck_group_elements(od: OrbitData) -> list[tuple[TorusPoint, ...]]:
    """The deck transformations of the restricted cover: everything
    when an index is fixed, the sheet stabilizer when none is."""
    if od.J or od.s == 0:
        return gamma_elements(od)
    return sheet_stabilizer_elements(od)


def working_level(od: OrbitData, torsion_level: int) -> int:
    """Torsion level containing every fiber coordinate over targets in
    E[torsion_level]: dividing an E[N] point by i_a lands in E[i_a N]."""
    if od.s == 0:
        return torsion_level
    return torsion_level * math.lcm(*od.sizes, od.d)


def fiber_bruteforce(
    target: QuotientPoint, od: OrbitData, torsion_level: int
) -> list[CoverPoint]:
    """All cover points mapping to the target, in deterministic order.

    Per block, i_a * z_a = sym_sum(w_a) pins z_a to the i_a^2 division
    preimages and x_a = w_a - z_a; when no index is fixed the sheet
    condition then filters the combinations.  The search is complete
    over the whole divisible group (not just a torsion level), so its
    output genuinely measures the fiber; every coordinate nevertheless
    lands inside E[working_level(od, torsion_level)], which is checked.
    """
    check_quotient_point(target, od)
    for p in target.y:
        if torsion_level % order(p) != 0:
            raise ValueError(f"target coordinate {format_point(p)} outside E[{torsion_level}]")
    for wa in target.w:
        for p in wa.entries:
            if torsion_level % order(p) != 0:
                raise ValueError(f"target coordinate {format_point(p)} outside E[{torsion_level}]")
    combinations = math.prod(r * r for r in od.sizes)
    if combinations > FIBER_CANDIDATE_LIMIT:
        raise ValueError(f"{combinations} candidate translations exceed the enumeration limit")
    per_block: list[list[tuple[TorusPoint, SymPoint]]] = []
    for r, wa in zip(od.sizes, target.w):
        sa = sym_sum(wa)
        block = []
        for za in division_preimages(sa, r):
            xa = wa.translate(-za)
            block.append((za, xa))
        per_block.append(block)
    level = working_level(od, torsion_level)
    fiber = []
    for combo in product(*per_block):
        z = tuple(za for za, _ in combo)
        if not od.J and od.s > 0 and not in_sheet0(z, od.sizes):
            continue
        x = tuple(xa for _, xa in combo)
        point = CoverPoint(y=target.y, z=z, x=x)
        for za in z:
            assert level % order(za) == 0
        fiber.append(point)
    return fiber


def fiber_fullscan(
    target: QuotientPoint, od: OrbitData, torsion_level: int
) -> list[CoverPoint]:
    """Naive complete fiber search: try every combination of torsion
    points at the working level and keep those that map to the target.

    Exponentially slower than fiber_bruteforce and kept only as an
    independent cross-check at the smallest torsion levels.
    """
    check_quotient_point(target, od)
    level = working_level(od, torsion_level)
    free_coords = od.s + sum(r - 1 for r in od.sizes)
    candidates = (level * level) ** free_coords
    if candidates > FULLSCAN_CANDIDATE_LIMIT:
        raise ValueError(f"{candidates} scan candidates exceed the full-scan limit")
    points = torsion_subgroup(level)
    fiber = []
    z_space = product(*(points for _ in range(od.s)))
    for z in z_space:
        if not od.J and od.s > 0 and not in_sheet0(z, od.sizes):
            continue
        frees = product(*(product(*(points for _ in range(r - 1))) for r in od.sizes))
        for free in frees:
            x = tuple(
                SymPoint((*fa, -_tuple_sum(fa))) for fa in free
            )
            c = CoverPoint(y=target.y, z=z, x=x)
            if big_psi(c, od) == target:
                fiber.append(c)
    return fiber


def random_quotient_point(
    od: OrbitData, torsion_level: int, rng: random.Random
) -> QuotientPoint:
    """Uniform target with coordinates in E[torsion_level]; when no
    index is fixed the last multiset member absorbs the zero-sum
    constraint (it stays inside the torsion level)."""
    y = tuple(sample_point(torsion_level, rng) for _ in range(_free_y_length(od)))
    if od.J or od.s == 0:
        w = tuple(
            SymPoint(tuple(sample_point(torsion_level, rng) for _ in range(r)))
            for r in od.sizes
        )
        return QuotientPoint(y=y, w=w)
    entries: list[list[TorusPoint]] = [
        [sample_point(torsion_level, rng) for _ in range(r)] for r in od.sizes
    ]
    running = ZERO
    for block in entries:
        running = running + _tuple_sum(block)
    # retune the last member of the last block so the sums cancel
    last = entries[-1]
    last[-1] = last[-1] - running
    return QuotientPoint(y=y, w=tuple(SymPoint(tuple(b)) for b in entries))


def random_cover_point(
    od: OrbitData, torsion_level: int, rng: random.Random
) -> CoverPoint:
    """Uniform cover point with block data in E[torsion_level]; when no
    index is fixed, z_1 is solved from the sheet condition and drawn
    uniformly among the division preimages."""
    y = tuple(sample_point(torsion_level, rng) for _ in range(_free_y_length(od)))
    x = []
    for r in od.sizes:
        frees = [sample_point(torsion_level, rng) for _ in range(r - 1)]
        x.append(SymPoint((*frees, -_tuple_sum(frees))))
    if od.J or od.s == 0:
        z = tuple(sample_point(torsion_level, rng) for _ in range(od.s))
    else:
        d = od.d
        tail = [sample_point(torsion_level, rng) for _ in range(od.s - 1)]
        rhs = ZERO
        for i, za in zip(od.sizes[1:], tail):
            rhs = rhs + scalar_mul(i // d, za)
        z1 = rng.choice(division_preimages(-rhs, od.sizes[0] // d))
        z = (z1, *tail)
    return CoverPoint(y=y, z=z, x=tuple(x))


def _orbit_report(
    target: QuotientPoint,
    od: OrbitData,
    torsion_level: int,
    deck: list[tuple[TorusPoint, ...]],
    expected: int,
) -> dict:
    fiber = fiber_bruteforce(target, od, torsion_level)
    fiber_set = set(fiber)
    maps_back = all(big_psi(c, od) == target for c in fiber)
    if fiber:
        orbit = {gamma_action(xi, fiber[0], od) for xi in deck}
        orbit_match = orbit == fiber_set
        free = len(orbit) == len(deck)
    else:
        orbit_match = False
        free = False
    return {
        "target": target.to_dict(),
        "fiber_size": len(fiber),
        "expected": expected,
        "maps_back": maps_back,
        "orbit_match": orbit_match,
        "free": free,
    }


def verify_cover(
    od: OrbitData,
    torsion_level: int = 6,
    samples: int = 20,
    seed: int = 0,
    workers: int = 1,
) -> dict:
    """Sample targets and check that every fiber of the cover has the
    predicted size, is a single orbit of the deck group, and that the
    action on it is free.

    When no index is fixed, additionally audits the predicted deck
    group against an element-order census of the actual sheet
    stabilizer.  The report is deterministic given (od, torsion_level,
    samples, seed) and independent of the worker count.
    """
    descriptor = describe(od)
    deck = deck_group_elements(od)
    config: dict = {
        "orbit_data": od.to_dict(),
        "torsion_level": torsion_level,
        "samples": samples,
        "seed": seed,
        "descriptor": descriptor.to_dict(),
        "deck_group_size": len(deck),
    }
    structure_ok = len(deck) == descriptor.galois_order
    if not od.J and od.s > 0:
        orders = [math.lcm(*(order(p) for p in xi)) for xi in deck]
        census = invariants_from_element_orders(orders)
        config["stabilizer_census_factors"] = list(census.factors)
        structure_ok = structure_ok and census == descriptor.galois
        # cosets of the stabilizer move the sheet to the other
        # components, d^2 in total
        full_size = math.prod(r * r for r in od.sizes)
        structure_ok = structure_ok and full_size == len(deck) * od.d**2
    config["structure_ok"] = structure_ok

    rng = random.Random(seed)
    targets = [
        random_quotient_point(od, torsion_level, rng) for _ in range(samples)
    ]
    expected = descriptor.galois_order

    def check(target: QuotientPoint) -> dict:
        return _orbit_report(target, od, torsion_level, deck, expected)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            checks = list(pool.map(check, targets))
    else:
        checks = [check(t) for t in targets]

    ok = structure_ok and all(
        c["fiber_size"] == c["expected"]
        and c["maps_back"]
        and c["orbit_match"]
        and c["free"]
        for c in checks
    )
    return {"config": config, "checks": checks, "pass": ok}

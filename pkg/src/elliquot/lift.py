"""Translation automorphisms of the quotient and their lifts to the cover.

A tuple that is invariant under the chosen subgroup of permutations is
constant on each block, so it is described by one value per fixed
coordinate plus one diagonal value per block, subject to a single
zero-sum constraint.  Translating by such a tuple descends to the
quotient, and this module implements the induced map on quotient data
(``sigma_bar``), its lift to the etale cover (``lift_translation``),
and an exact commuting-square verifier.  When no coordinate is fixed
the lift needs an auxiliary division point q; the choice of q is not
unique and the verifier records how the different choices relate.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .covers import (
    CoverPoint,
    QuotientPoint,
    big_psi,
    check_cover_point,
    check_quotient_point,
    gamma_action,
    in_sheet0,
    random_cover_point,
)
from .sigma import OrbitData
from .structure import describe
from .torus import (
    ZERO,
    TorusPoint,
    division_preimages,
    format_point,
    sample_point,
    scalar_mul,
)


@dataclass(frozen=True)
class TranslationDatum:
    """An invariant translation: one value per fixed coordinate and one
    diagonal value per block.

    The expanded tuple (each diagonal value repeated block-size times)
    must sum to zero; use check_translation_datum to test that against
    a specific orbit decomposition.
    """

    tJ: tuple[TorusPoint, ...]
    t_diag: tuple[TorusPoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tJ", tuple(self.tJ))
        object.__setattr__(self, "t_diag", tuple(self.t_diag))

    def negated(self) -> "TranslationDatum":
        return TranslationDatum(
            tJ=tuple(-p for p in self.tJ),
            t_diag=tuple(-p for p in self.t_diag),
        )

    def to_dict(self) -> dict:
        return {
            "tJ": [format_point(p) for p in self.tJ],
            "t_diag": [format_point(p) for p in self.t_diag],
        }


def datum_from_points(
    points: list[TorusPoint] | tuple[TorusPoint, ...], od: OrbitData
) -> TranslationDatum:
    """Split a flat list of points (fixed-coordinate values first, then
    one diagonal value per block) into a TranslationDatum."""
    expected = len(od.J) + od.s
    if len(points) != expected:
        raise ValueError(
            f"expected {expected} points ({len(od.J)} fixed + {od.s} diagonal), "
            f"got {len(points)}"
        )
    split = len(od.J)
    return TranslationDatum(tJ=tuple(points[:split]), t_diag=tuple(points[split:]))


def check_translation_datum(t: TranslationDatum, od: OrbitData) -> bool:
    """True iff the expanded tuple sums to zero.  Raises on a shape
    mismatch with the orbit decomposition."""
    if len(t.tJ) != len(od.J):
        raise ValueError(f"expected {len(od.J)} fixed values, got {len(t.tJ)}")
    if len(t.t_diag) != od.s:
        raise ValueError(f"expected {od.s} diagonal values, got {len(t.t_diag)}")
    total = ZERO
    for p in t.tJ:
        total = total + p
    for i, ta in zip(od.sizes, t.t_diag):
        total = total + scalar_mul(i, ta)
    return total == ZERO


def sigma_bar(w: QuotientPoint, t: TranslationDatum, od: OrbitData) -> QuotientPoint:
    """The descended translation on quotient data: every block multiset
    moves diagonally, the stored fixed coordinates move by their values,
    and the dropped last fixed coordinate implicitly moves by the last
    value (forced by the zero-sum constraints)."""
    if not check_translation_datum(t, od):
        raise ValueError("datum violates the zero-sum constraint")
    check_quotient_point(w, od)
    out = QuotientPoint(
        y=tuple(p + tp for p, tp in zip(w.y, t.tJ)),
        w=tuple(wa.translate(ta) for wa, ta in zip(w.w, t.t_diag)),
    )
    check_quotient_point(out, od)
    return out


def q_solutions(t: TranslationDatum, od: OrbitData) -> list[TorusPoint]:
    """All q with (i_1/d) q = sum_a (i_a/d) t_a, sorted.  Every solution
    is automatically i_1-torsion because the datum sums to zero."""
    if od.J:
        raise ValueError("q is only needed when no coordinate is fixed")
    if not check_translation_datum(t, od):
        raise ValueError("datum violates the zero-sum constraint")
    d = od.d
    rhs = ZERO
    for i, ta in zip(od.sizes, t.t_diag):
        rhs = rhs + scalar_mul(i // d, ta)
    return division_preimages(rhs, od.sizes[0] // d)


def compute_q(t: TranslationDatum, od: OrbitData) -> TorusPoint:
    """The canonical q: coordinatewise-lexicographically smallest
    solution of the defining division."""
    q = q_solutions(t, od)[0]
    assert scalar_mul(od.sizes[0], q) == ZERO
    return q


def lift_translation(
    c: CoverPoint,
    t: TranslationDatum,
    od: OrbitData,
    q: TorusPoint | None = None,
) -> CoverPoint:
    """Lift the descended translation to the cover.

    With a fixed coordinate present the lift translates the stored fixed
    coordinates and the block base points and leaves the projective data
    alone.  With none present the sheet condition forces a correction:
    the first base point absorbs t_1 - q and the first multiset is
    translated by q, where (i_1/d) q = sum (i_a/d) t_a.  Pass q to use a
    non-canonical solution; any solution gives a lift of the same
    quotient map.
    """
    if not check_translation_datum(t, od):
        raise ValueError("datum violates the zero-sum constraint")
    check_cover_point(c, od)
    if od.J:
        if q is not None:
            raise ValueError("q plays no role when a coordinate is fixed")
        out = CoverPoint(
            y=tuple(p + tp for p, tp in zip(c.y, t.tJ)),
            z=tuple(za + ta for za, ta in zip(c.z, t.t_diag)),
            x=c.x,
        )
    else:
        if q is None:
            q = compute_q(t, od)
        else:
            d = od.d
            rhs = ZERO
            for i, ta in zip(od.sizes, t.t_diag):
                rhs = rhs + scalar_mul(i // d, ta)
            if scalar_mul(od.sizes[0] // d, q) != rhs:
                raise ValueError("q does not solve the defining division")
        z_first = c.z[0] + t.t_diag[0] - q
        z_rest = tuple(za + ta for za, ta in zip(c.z[1:], t.t_diag[1:]))
        out = CoverPoint(
            y=(),
            z=(z_first, *z_rest),
            x=(c.x[0].translate(q), *c.x[1:]),
        )
    check_cover_point(out, od)
    return out


def random_translation_datum(
    od: OrbitData, torsion_level: int, rng: random.Random
) -> TranslationDatum:
    """A random admissible datum: all values but one sampled freely from
    the given torsion level, the last solved from the zero-sum
    constraint by exact division (canonical preimage)."""
    if od.s:
        tJ = tuple(sample_point(torsion_level, rng) for _ in od.J)
        head = tuple(sample_point(torsion_level, rng) for _ in range(od.s - 1))
        partial = ZERO
        for p in tJ:
            partial = partial + p
        for i, ta in zip(od.sizes, head):
            partial = partial + scalar_mul(i, ta)
        last = division_preimages(-partial, od.sizes[-1])[0]
        datum = TranslationDatum(tJ=tJ, t_diag=(*head, last))
    else:
        head = tuple(sample_point(torsion_level, rng) for _ in range(len(od.J) - 1))
        total = ZERO
        for p in head:
            total = total + p
        datum = TranslationDatum(tJ=(*head, -total), t_diag=())
    assert check_translation_datum(datum, od)
    return datum


def _lift_report(
    c: CoverPoint,
    od: OrbitData,
    t: TranslationDatum,
    t_neg: TranslationDatum,
    q_alt: TorusPoint | None,
) -> dict:
    target = big_psi(c, od)
    translated = sigma_bar(target, t, od)
    lifted = lift_translation(c, t, od)
    entry: dict = {"commutes": big_psi(lifted, od) == translated}
    round_trip = lift_translation(lifted, t_neg, od)
    entry["inverse_on_quotient"] = big_psi(round_trip, od) == target
    if od.J:
        entry["dropped_coordinate"] = (
            translated.last_fixed_coordinate()
            == target.last_fixed_coordinate() + t.tJ[-1]
        )
    else:
        entry["sheet_preserved"] = in_sheet0(lifted.z, od.sizes)
        if q_alt is not None:
            alt = lift_translation(c, t, od, q=q_alt)
            entry["noncanonical_commutes"] = big_psi(alt, od) == translated
            shift = (q_alt - compute_q(t, od),) + (ZERO,) * (od.s - 1)
            entry["q_shift_is_deck_translation"] = (
                in_sheet0(shift, od.sizes) and gamma_action(shift, lifted, od) == alt
            )
    if not all(v for k, v in entry.items() if k != "q_shift_is_deck_translation"):
        entry["witness"] = c.to_dict()
    return entry


def verify_lift(
    od: OrbitData,
    t: TranslationDatum | None = None,
    torsion_level: int = 6,
    samples: int = 20,
    seed: int = 0,
    workers: int = 1,
) -> dict:
    """Check the commuting square on sampled cover points: lifting and
    then projecting equals projecting and then translating, exactly.

    Also checks, per sample: the lift composed with the lift of the
    negated datum covers the identity; with a fixed coordinate, the
    dropped coordinate moves by the last fixed value; without one, the
    sheet is preserved and the square also commutes for a non-canonical
    q.  The relation between the two q-lifts (they differ by a deck
    transformation) is recorded but not required for the pass flag.
    """
    rng = random.Random(seed)
    if t is None:
        t = random_translation_datum(od, torsion_level, rng)
    if not check_translation_datum(t, od):
        raise ValueError("datum violates the zero-sum constraint")
    t_neg = t.negated()
    q_alt = None
    config: dict = {
        "orbit_data": od.to_dict(),
        "datum": t.to_dict(),
        "torsion_level": torsion_level,
        "samples": samples,
        "seed": seed,
        "descriptor": describe(od).to_dict(),
    }
    if not od.J and od.s:
        solutions = q_solutions(t, od)
        config["q"] = format_point(compute_q(t, od))
        config["q_candidates"] = len(solutions)
        if len(solutions) > 1:
            q_alt = solutions[-1]
            config["q_noncanonical"] = format_point(q_alt)
    points = [random_cover_point(od, torsion_level, rng) for _ in range(samples)]

    def check(c: CoverPoint) -> dict:
        return _lift_report(c, od, t, t_neg, q_alt)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            checks = list(pool.map(check, points))
    else:
        checks = [check(c) for c in points]
    passed = all(
        v
        for entry in checks
        for k, v in entry.items()
        if k not in ("q_shift_is_deck_translation", "witness")
    )
    report = {"config": config, "checks": checks, "pass": passed}
    if q_alt is not None:
        report["q_ambiguity_is_deck_translation"] = all(
            entry.get("q_shift_is_deck_translation", True) for entry in checks
        )
    return report

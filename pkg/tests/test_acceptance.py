"""Acceptance gate: eight exact-arithmetic criteria, one test each.

Every check is exact (zero tolerance); the two timed criteria assert
their stated wall-clock budgets.  Each test records a pass/fail line
that the terminal summary echoes.
"""

import math
import random
import time
from fractions import Fraction
from itertools import product

from elliquot.covers import (
    SymPoint,
    phi,
    sym_sum,
    theta,
    verify_cover,
    xi_action_sym,
)
from elliquot.hj import hj_expand, sigma_from_expansion, verify_word
from elliquot.lift import q_solutions, random_translation_datum, verify_lift
from elliquot.sigma import SigmaSubgroup, orbit_decomposition, sigma_from_block_sizes
from elliquot.structure import (
    describe,
    det,
    invariants_from_element_orders,
    unimodular_reduction,
)
from elliquot.torus import (
    ZERO,
    division_preimages,
    sample_point,
    scalar_mul,
    torsion_subgroup,
)

from conftest import ACCEPTANCE_RESULTS

J_EMPTY_SIZE_LISTS = [(2, 2), (2, 4), (2, 3), (3, 3)]


def record(number: int, description: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS.append((number, description, passed, detail))
    assert passed, f"criterion {number} ({description}) failed: {detail}"


def od_from_sizes(sizes, fixed=0):
    return orbit_decomposition(sigma_from_block_sizes(sizes, fixed))


def test_criterion_1_expansion_round_trip():
    started = time.perf_counter()
    pairs = 0
    ok = True
    for n in range(2, 51):
        for k in range(1, n):
            if math.gcd(n, k) != 1:
                continue
            pairs += 1
            exp = hj_expand(n, k)
            if verify_word(exp) != Fraction(n, k) or any(e < 2 for e in exp.entries):
                ok = False
    elapsed = time.perf_counter() - started
    record(
        1,
        "expansion round trip, n <= 50",
        ok and elapsed < 1.0,
        f"{pairs} pairs in {elapsed:.3f}s",
    )


def test_criterion_2_symmetric_power_cover():
    started = time.perf_counter()
    level = 24
    rng = random.Random(2024)
    ok = True
    checked = 0
    for r in (2, 3, 4):
        torsion = torsion_subgroup(r)
        for _ in range(20):
            w = SymPoint(tuple(sample_point(level, rng) for _ in range(r)))
            # the diagonal sum forces r z = sym_sum(w); every candidate
            # z gives the unique zero-sum multiset x = w - z
            fiber = []
            for z in division_preimages(sym_sum(w), r):
                x = w.translate(-z)
                if sym_sum(x) == ZERO and phi(x, z) == w:
                    fiber.append((x, z))
            checked += 1
            if len(fiber) != r * r or len(set(fiber)) != r * r:
                ok = False
                continue
            orbit = {xi_action_sym(xi, *fiber[0]) for xi in torsion}
            if orbit != set(fiber):
                ok = False
            # trivial stabilizers: the orbit of one point exhausts E[r]
            if len(orbit) != r * r:
                ok = False
    elapsed = time.perf_counter() - started
    record(
        2,
        "symmetric-power cover fibers, r in {2,3,4}",
        ok and elapsed < 30.0,
        f"{checked} fibers at torsion level {level} in {elapsed:.2f}s",
    )


def test_criterion_3_fixed_coordinate_fibers():
    od = orbit_decomposition(sigma_from_expansion(hj_expand(7, 3)))
    assert od.J and od.sizes == (3,)
    expected = math.prod(i * i for i in od.sizes)
    report = verify_cover(od, torsion_level=6, samples=20, seed=7)
    ok = (
        report["pass"]
        and expected == 9
        and all(
            c["fiber_size"] == expected and c["orbit_match"] and c["free"]
            for c in report["checks"]
        )
    )
    record(
        3,
        "fibers with a fixed coordinate, pair (7,3)",
        ok,
        f"20 fibers of size {expected}",
    )


def test_criterion_4_no_fixed_coordinate_fibers_and_stabilizer():
    ok = True
    details = []
    for sizes in J_EMPTY_SIZE_LISTS:
        od = od_from_sizes(sizes)
        expected = math.prod(i * i for i in sizes) // (od.d * od.d)
        report = verify_cover(od, torsion_level=6, samples=20, seed=11)
        predicted = describe(od).galois.factors
        census = tuple(report["config"]["stabilizer_census_factors"])
        if not report["pass"]:
            ok = False
        if any(c["fiber_size"] != expected for c in report["checks"]):
            ok = False
        if census != predicted:
            ok = False
        details.append(f"{sizes}->{list(census)}")
    # the worked example: equal invariant factors (4, 4), group order 16
    od24 = od_from_sizes((2, 4))
    if describe(od24).galois.factors != (4, 4) or describe(od24).galois_order != 16:
        ok = False
    # independent cross-check of that example by an element-order census
    stabilizer = [
        (z1, z2)
        for z1 in torsion_subgroup(2)
        for z2 in torsion_subgroup(4)
        if z1 + scalar_mul(2, z2) == ZERO
    ]
    orders = [math.lcm(*(p.order() for p in xi)) for xi in stabilizer]
    if invariants_from_element_orders(orders).factors != (4, 4):
        ok = False
    record(
        4,
        "fibers and sheet stabilizer without fixed coordinates",
        ok,
        "; ".join(details),
    )


def test_criterion_5_sheet_classes_and_unimodular_reduction():
    ok = True
    details = []
    for sizes in J_EMPTY_SIZE_LISTS:
        d = math.gcd(*sizes)
        level = math.lcm(*sizes)
        classes = set()
        for z in product(*(torsion_subgroup(level) for _ in sizes)):
            if theta(z, sizes) == ZERO:
                reduced = ZERO
                for i, za in zip(sizes, z):
                    reduced = reduced + scalar_mul(i // d, za)
                classes.add(reduced)
        if len(classes) != d * d or classes != set(torsion_subgroup(d)):
            ok = False
        m = unimodular_reduction(sizes)
        row = [
            sum(sizes[r] * m[r][c] for r in range(len(sizes)))
            for c in range(len(sizes))
        ]
        if row != [d] + [0] * (len(sizes) - 1) or abs(det(m)) != 1:
            ok = False
        details.append(f"{sizes}: {d * d} classes")
    record(5, "sheet-class count and unimodular reduction", ok, "; ".join(details))


def test_criterion_6_translation_commuting_square():
    ok = True
    details = []
    configs = [
        ("fixed coordinate", orbit_decomposition(sigma_from_expansion(hj_expand(7, 3)))),
        ("no fixed coordinate, unique q", od_from_sizes((2, 2))),
        ("no fixed coordinate, ambiguous q", od_from_sizes((2, 3))),
    ]
    for label, od in configs:
        report = verify_lift(od, torsion_level=6, samples=100, seed=13)
        if not report["pass"] or len(report["checks"]) < 100:
            ok = False
        if not od.J:
            if not all(entry["sheet_preserved"] for entry in report["checks"]):
                ok = False
        details.append(f"{label}: {len(report['checks'])} points")
    # the ambiguous-q configuration must actually exercise a
    # non-canonical q in every sampled square
    od23 = od_from_sizes((2, 3))
    rng = random.Random(17)
    assert len(q_solutions(random_translation_datum(od23, 6, rng), od23)) == 4
    ambiguous = verify_lift(od23, torsion_level=6, samples=100, seed=13)
    if not all(entry.get("noncanonical_commutes") for entry in ambiguous["checks"]):
        ok = False
    record(6, "commuting square for translation lifts", ok, "; ".join(details))


def test_criterion_7_full_symmetric_projective_space():
    ok = True
    details = []
    for g in (1, 2, 3):
        od = orbit_decomposition(SigmaSubgroup(g + 1, set(range(1, g + 1))))
        desc = describe(od)
        if desc.galois_order != 1 or desc.galois.factors != ():
            ok = False
        if desc.base_dim != 0 or desc.fiber_dims != (g,):
            ok = False
        report = verify_cover(od, torsion_level=6, samples=5, seed=19)
        if not report["pass"] or any(c["fiber_size"] != 1 for c in report["checks"]):
            ok = False
        details.append(f"g={g}: singleton fibers over P^{g}")
    record(7, "full symmetric group gives projective space", ok, "; ".join(details))


def test_criterion_8_dimension_bookkeeping():
    ok = True
    pairs = 0
    for n in range(2, 31):
        for k in range(1, n):
            if math.gcd(n, k) != 1:
                continue
            pairs += 1
            exp = hj_expand(n, k)
            od = orbit_decomposition(sigma_from_expansion(exp))
            desc = describe(od)
            if desc.base_dim + sum(i - 1 for i in od.sizes) != exp.g:
                ok = False
            if desc.fiber_dims != tuple(i - 1 for i in od.sizes):
                ok = False
    record(8, "dimension bookkeeping over the sweep n <= 30", ok, f"{pairs} pairs")

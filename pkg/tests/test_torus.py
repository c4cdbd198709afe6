"""Tests for the exact (Q/Z)^2 model of an elliptic curve."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from elliquot.torus import (
    TorusPoint,
    ZERO,
    add,
    neg,
    scalar_mul,
    order,
    torsion_subgroup,
    division_preimages,
    random_torsion_point,
    sample_point,
    parse_point,
    format_point,
)


def pt(un, ud=1, vn=0, vd=1) -> TorusPoint:
    return TorusPoint(Fraction(un, ud), Fraction(vn, vd))


@st.composite
def torus_points(draw, max_den: int = 12) -> TorusPoint:
    m = draw(st.integers(min_value=1, max_value=max_den))
    a = draw(st.integers(min_value=0, max_value=m - 1))
    m2 = draw(st.integers(min_value=1, max_value=max_den))
    b = draw(st.integers(min_value=0, max_value=m2 - 1))
    return TorusPoint(Fraction(a, m), Fraction(b, m2))


# --- construction and normalization ---


def test_coordinates_normalized_into_unit_square():
    p = TorusPoint(Fraction(5, 2), Fraction(-1, 6))
    assert p == pt(1, 2, 5, 6)
    assert 0 <= p.u < 1 and 0 <= p.v < 1


def test_equality_is_on_reduced_representatives():
    assert TorusPoint(Fraction(2, 4), Fraction(0)) == pt(1, 2)
    assert pt(1, 2) != pt(1, 3)


def test_total_order_is_lexicographic():
    points = [pt(1, 2, 1, 3), pt(0, 1, 9, 10), pt(1, 2, 0, 1)]
    assert sorted(points) == [pt(0, 1, 9, 10), pt(1, 2, 0, 1), pt(1, 2, 1, 3)]


# --- group operations ---


def test_add_identity_and_two_torsion():
    assert add(ZERO, ZERO) == ZERO
    assert add(pt(1, 2), pt(1, 2)) == ZERO


def test_add_wraps_modulo_one():
    assert add(pt(2, 3, 1, 4), pt(2, 3, 3, 4)) == pt(1, 3, 0, 1)


def test_neg_examples():
    assert neg(ZERO) == ZERO
    assert neg(pt(1, 3, 1, 2)) == pt(2, 3, 1, 2)


def test_scalar_mul_examples():
    assert scalar_mul(3, pt(1, 3, 2, 3)) == ZERO
    assert scalar_mul(2, pt(1, 8)) == pt(1, 4)
    assert scalar_mul(0, pt(3, 7, 2, 5)) == ZERO
    assert scalar_mul(-1, pt(1, 3)) == pt(2, 3)


@given(torus_points(), torus_points(), torus_points())
def test_group_axioms(p, q, r):
    assert add(p, q) == add(q, p)
    assert add(add(p, q), r) == add(p, add(q, r))
    assert add(p, neg(p)) == ZERO
    assert add(p, ZERO) == p


@given(torus_points(), st.integers(min_value=-5, max_value=20))
def test_scalar_mul_is_repeated_addition(p, m):
    acc = ZERO
    step = p if m >= 0 else neg(p)
    for _ in range(abs(m)):
        acc = add(acc, step)
    assert scalar_mul(m, p) == acc


def test_group_axioms_exhaustive_on_small_torsion():
    points = torsion_subgroup(4)
    for p in points:
        assert add(p, neg(p)) == ZERO
        for q in points:
            assert add(p, q) == add(q, p)


# --- order ---


def test_order_examples():
    assert order(ZERO) == 1
    assert order(pt(1, 2, 1, 3)) == 6
    assert order(pt(1, 4, 1, 2)) == 4


@given(torus_points())
def test_order_is_the_exact_annihilator(p):
    m = order(p)
    assert scalar_mul(m, p) == ZERO
    for k in range(1, m):
        assert scalar_mul(k, p) != ZERO


# --- torsion subgroups ---


def test_torsion_subgroup_level_one_is_trivial():
    assert torsion_subgroup(1) == [ZERO]


def test_torsion_subgroup_level_two():
    assert torsion_subgroup(2) == [
        pt(0, 1, 0, 1),
        pt(0, 1, 1, 2),
        pt(1, 2, 0, 1),
        pt(1, 2, 1, 2),
    ]


@pytest.mark.parametrize("m", range(1, 13))
def test_torsion_subgroup_has_m_squared_points(m):
    points = torsion_subgroup(m)
    assert len(points) == m * m
    assert len(set(points)) == m * m
    assert all(scalar_mul(m, p) == ZERO for p in points)
    assert points == sorted(points)


@pytest.mark.parametrize("m", range(1, 7))
def test_torsion_subgroup_closed_under_operations(m):
    points = set(torsion_subgroup(m))
    for p in points:
        assert neg(p) in points
        for q in points:
            assert add(p, q) in points


def test_torsion_subgroup_rejects_bad_level():
    with pytest.raises(ValueError):
        torsion_subgroup(0)


# --- division ---


def test_division_preimages_of_zero_are_torsion():
    assert division_preimages(ZERO, 2) == torsion_subgroup(2)


def test_division_preimages_example():
    got = division_preimages(pt(1, 2), 2)
    assert got == sorted([pt(1, 4), pt(3, 4), pt(1, 4, 1, 2), pt(3, 4, 1, 2)])


@given(torus_points(), st.integers(min_value=1, max_value=6))
def test_division_preimages_are_complete_and_exact(p, r):
    pre = division_preimages(p, r)
    assert len(pre) == r * r
    assert len(set(pre)) == r * r
    assert all(scalar_mul(r, q) == p for q in pre)
    assert pre == sorted(pre)


@given(torus_points(), st.integers(min_value=1, max_value=4))
def test_division_preimages_differ_by_r_torsion(p, r):
    pre = division_preimages(p, r)
    base = pre[0]
    assert {q - base for q in pre} == set(torsion_subgroup(r))


def test_division_preimages_rejects_bad_index():
    with pytest.raises(ValueError):
        division_preimages(ZERO, 0)


# --- random sampling ---


def test_random_torsion_point_level_one_is_zero():
    assert random_torsion_point(1, seed=7) == ZERO


def test_random_torsion_point_is_reproducible():
    assert random_torsion_point(12, seed=3) == random_torsion_point(12, seed=3)


def test_random_torsion_point_lands_in_requested_torsion():
    for seed in range(50):
        p = random_torsion_point(10, seed=seed)
        assert scalar_mul(10, p) == ZERO


def test_random_sampling_covers_two_torsion():
    import random as _random

    rng = _random.Random(0)
    seen = {sample_point(2, rng) for _ in range(10_000)}
    assert seen == set(torsion_subgroup(2))


# --- text format ---


def test_format_point_examples():
    assert format_point(ZERO) == "0/1,0/1"
    assert format_point(pt(1, 2, 2, 3)) == "1/2,2/3"


def test_parse_point_accepts_unnormalized_input():
    assert parse_point("3/2,-1/3") == pt(1, 2, 2, 3)


@given(torus_points())
def test_format_parse_round_trip(p):
    assert parse_point(format_point(p)) == p


def test_parse_point_rejects_malformed_text():
    with pytest.raises(ValueError):
        parse_point("1/2")

"""Exact arithmetic for quotients of powers of an elliptic curve.

The package computes, from either a coprime pair (n, k) or a choice of
adjacent transpositions inside a symmetric group, the structure of the
quotient of a power of an elliptic curve by the induced permutation
action: the base abelian variety, the projective-space fiber dimensions,
and the Galois group of the associated etale cover.  Every claim is
verifiable by brute-force enumeration on torsion-point models, and all
arithmetic is exact.
"""

from .torus import (
    TorusPoint,
    ZERO,
    add,
    neg,
    scalar_mul,
    order,
    torsion_subgroup,
    division_preimages,
    random_torsion_point,
    parse_point,
    format_point,
)
from .sigma import (
    SigmaSubgroup,
    OrbitData,
    orbit_decomposition,
    sigma_from_block_sizes,
)
from .hj import (
    Expansion,
    hj_expand,
    verify_word,
    word_matrix,
    sigma_from_expansion,
    line_bundle_recipe,
)
from .structure import (
    AbelianInvariants,
    QuotientDescriptor,
    describe,
    galois_group,
    smith_normal_form,
    unimodular_reduction,
    invariants_from_element_orders,
    theta_kernel_structure,
)
from .covers import (
    SymPoint,
    CoverPoint,
    QuotientPoint,
    phi,
    big_psi,
    gamma_action,
    deck_group_elements,
    fiber_bruteforce,
    verify_cover,
)
from .lift import (
    TranslationDatum,
    check_translation_datum,
    compute_q,
    lift_translation,
    sigma_bar,
    verify_lift,
)

__version__ = "0.1.0"

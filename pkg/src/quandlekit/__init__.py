"""Finite quandles, knot colorings and 2-cocycle invariants."""

from .quandle import (
    Quandle, verify_quandle, trivial, dihedral, alexander, alexander_module,
    generalized_alexander, conjugation, conjugation_sym, product, dual,
    inner_group, is_connected, is_faithful, is_kei, is_latin, is_homogeneous,
    automorphisms, are_isomorphic, faithful_quotient, congruences, proper_quotients,
)
from .abelian import AbelianGroup
from .perm import Permutation, PermutationGroup

__version__ = "0.1.0"

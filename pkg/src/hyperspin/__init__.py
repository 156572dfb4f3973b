"""Spin structures of hyperelliptic curves under branch-point permutations.

A hyperelliptic curve of genus g double-covers the sphere with 2g+2 branch
points, and permuting those points acts on the curve's 2^(2g) spin
structures.  This package materialises that action on bit-packed 2 x g
matrices over Z/2 and verifies the resulting classification end to end:
orbit counts and sizes, canonical and stabilizer-adapted normal forms,
traced reductions, fixed points, exact stabilizer orders, and the
cross-check against the full transvection action.
"""

from .braid import (
    Permutation,
    Word,
    apply_generator,
    apply_word,
    flip_word,
    format_word,
    generator_class,
    generator_label,
    parse_word,
    permutation_of_word,
    word_for_permutation,
)
from .gf2 import (
    ALPHA,
    BETA,
    BETA_PAIR,
    BasisLabel,
    HomologyClass,
    SpinMatrix,
    alpha,
    arf,
    beta,
    beta_pair,
    class_of,
    dehn_twist,
    evaluate,
    format_matrix,
    intersection,
    parse_matrix,
)
from .normalform import (
    CANCEL_TOPS,
    FLIP_BOTTOM,
    FLIP_TOP_FIRST,
    FLIP_TOP_LAST,
    SWAP_TOPS,
    Move,
    ReductionInvariantError,
    ReductionStep,
    ReductionTrace,
    alternating_block,
    canonical_form,
    class_index,
    classify_canonical,
    fixed_point_matrix,
    move_word,
    reduce_to_canonical,
    stabilizer_form,
)
from .orbits import (
    IsotropyReport,
    OrbitPartition,
    OrbitRecord,
    SelfCheckError,
    SpPartition,
    census,
    enumerate_orbits,
    fixed_matrices,
    predicted_orbit_size,
    predicted_stabilizer_order,
    sp_transvection_orbits,
    verify_isotropy,
)

__version__ = "1.0.0"

__all__ = [
    "ALPHA",
    "BETA",
    "BETA_PAIR",
    "BasisLabel",
    "CANCEL_TOPS",
    "FLIP_BOTTOM",
    "FLIP_TOP_FIRST",
    "FLIP_TOP_LAST",
    "HomologyClass",
    "IsotropyReport",
    "Move",
    "OrbitPartition",
    "OrbitRecord",
    "Permutation",
    "ReductionInvariantError",
    "ReductionStep",
    "ReductionTrace",
    "SelfCheckError",
    "SpPartition",
    "SpinMatrix",
    "SWAP_TOPS",
    "Word",
    "alpha",
    "alternating_block",
    "apply_generator",
    "apply_word",
    "arf",
    "beta",
    "beta_pair",
    "canonical_form",
    "census",
    "class_index",
    "class_of",
    "classify_canonical",
    "dehn_twist",
    "enumerate_orbits",
    "evaluate",
    "fixed_matrices",
    "fixed_point_matrix",
    "flip_word",
    "format_matrix",
    "format_word",
    "generator_class",
    "generator_label",
    "intersection",
    "move_word",
    "parse_matrix",
    "parse_word",
    "permutation_of_word",
    "predicted_orbit_size",
    "predicted_stabilizer_order",
    "reduce_to_canonical",
    "sp_transvection_orbits",
    "stabilizer_form",
    "verify_isotropy",
    "word_for_permutation",
]

"""Exact computations with truncated symmetric polynomials over Q and F_p."""
from .exact_linalg import GF, QQ, ExactMatrix, FieldSpec, RowSpace, echelonize, in_row_space, rank
from .orbit_algebra import (
    DensePolynomial,
    NotSymmetric,
    Partition,
    SymPolynomial,
    dense_mul,
    elementary_symmetric,
    expand_to_monomials,
    newton_next,
    orbit_mul,
    parse_partition,
    parse_sym,
    partitions,
    power_sum,
    sym_mul,
    symmetrize,
)
from .poly_ring import ideal_slice, powers_lemma_check, serre_collapses
from .series import (
    SeriesPoly,
    complete_intersection_series,
    exterior_series,
    flag_series,
    hilbert_Rn,
    quotient_series,
    w_series,
)
from .truncated_ideal import (
    HypothesisViolation,
    TruncatedIdeal,
    certify_generation,
    contains,
    ideal_slice_sym,
    is_regular_sequence,
    min_generators,
    quotient_basis,
    socle,
    span_of_generators,
    verify_theorem,
)

__version__ = "0.1.0"

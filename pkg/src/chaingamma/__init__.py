"""Exact and arbitrary-precision invariants of chain exponent lists."""

from .chain import (
    ChainDescriptor,
    SectorIndex,
    SymmetryElement,
    exponent_matrix,
    exponents_for_kappa,
    index_set,
    monomial_basis,
    monomial_exponents,
    new_chain,
    psi,
    psi_inverse,
    rational_weights,
    symmetry_generator,
)
from .errors import (
    ChainGammaError,
    DimensionTooLarge,
    EmptyChain,
    IndexNotInSet,
    IndexOutOfRange,
    InvalidExponent,
    MalformedWord,
    MonomialOutOfRange,
    PrecisionUnachievable,
    QuadratureNonConvergent,
    SingularChGamma,
    SizeLimitExceeded,
    WrongLevel,
)
from .exact import (
    IntPolynomial,
    RationalMatrix,
    euler_matrix,
    grading_matrix,
    intersection_matrix,
    p_polynomial,
    pairing_matrix,
    serre_matrix,
    x_value,
)
from .gamma import (
    PrecComplexMatrix,
    c_kappa,
    central_charge,
    central_charges,
    ch_gamma_column,
    ch_gamma_matrix,
    gepner_step,
    orthant_integral_closed_form,
)
from .lattice import (
    ExceptionalSequence,
    VanishingLattice,
    braid_word_apply,
    mutate,
    parity,
    picard_lefschetz,
    standard_sequence,
    vanishing_lattice,
)
from .precision import PrecContext, gamma_rational
from .quadrature import orthant_integral_quadrature
from .verify import (
    Materials,
    VerificationReport,
    run_suite,
    verify_d3_relations,
    verify_exact_suite,
    verify_gamma_oracles,
    verify_theorem_identity_1,
    verify_theorem_identity_2,
)

__version__ = "0.1.0"

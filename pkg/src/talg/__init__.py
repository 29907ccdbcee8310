"""Exact computations with ternary algebras, their envelopes, tri-modules
and first order differential calculi.

Scalars live in cyclotomic fields Q(zeta_n) and every check is exact.
"""

from .arrays import FieldArray, einsum
from .binary import BinaryAlgebra, check_binary_associative, matrix_algebra
from .calculus import (
    Calculus,
    build_omega1_binary,
    build_omega1_ternary,
    check_binary_leibniz,
    check_ternary_leibniz,
    derivation_space,
    factor_calculus,
    ternary_D,
)
from .catalog import CATALOG, catalog
from .checks import CheckResult, Counterexample
from .cubic import check_cubic_representation, cubic_triple_product, pauli_check
from .envelope import build_envelope, check_envelope_universal, envelope_multiply
from .errors import (
    DimensionError,
    FieldMismatchError,
    FileFormatError,
    PreconditionError,
    ScalarParseError,
    TalgError,
    TruncationError,
    WellDefinednessError,
)
from .fileio import load_algebra, load_trimodule, save_algebra
from .free import FreeTernary, free_product, lift_hom
from .linalg import nullspace, quotient_basis, rank, rref, solve_linear
from .scalars import Cyc, ScalarField, field, format_scalar, parse_scalar
from .ternary import (
    TernaryAlgebra,
    check_associativity,
    check_star,
    metric_algebra,
    qskew_product,
    star_to_btype,
    symmetrize_product,
    ternary_product,
    trivial_ternary,
)
from .trimodule import TriModule, algebra_as_trimodule, build_UM, trimodule_check, trivial_trimodule

__version__ = "0.1.0"

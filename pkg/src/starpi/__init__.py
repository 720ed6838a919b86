"""Exact computations with the free algebra with involution and the
involutions star and s on 2x2 upper triangular matrices."""
from .catalog import TheoremId, basis_words_for_slice, generators_for, is_lambda
from .commpoly import CommPolynomial, CommVar
from .consequences import ConsequenceStrategy, t_ideal_consequences_in_bound, t_space_consequences_in_bound
from .decision import (EvalMode, Slice, VerificationReport, central_space_of_slice, equal_mod_identities,
                       identity_space_of_slice, is_central_poly, is_identity, membership,
                       quotient_coordinates, slices_up_to)
from .errors import *  # noqa: F401,F403
from .field import Field, FieldElement, get_field
from .freealg import MultiDegree, StarPolynomial, Variable, commutator, left_normed_commutator
from .grammar import format_polynomial, parse_polynomial
from .linalg import SpanBasis
from .ut2 import (Assignment, InvolutionKind, UT2Matrix, enumerate_assignments, evaluate, generic_assignment,
                  involve, is_central, power_formula, skew_basis, symmetric_basis)

__version__ = "0.1.0"

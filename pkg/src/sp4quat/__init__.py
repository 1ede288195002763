"""sp4quat: quaternion-pair representation of 4x4 real symplectic matrices.

Represents elements of the real symplectic group in dimension four by a
quaternion pair (compact factor) times a symmetric coefficient quadruple
(non-compact factor), and computes polar decompositions, symmetric
symplectic square roots, positive definiteness certificates, characteristic
polynomials and Euler-Cartan factorizations entirely in closed form, with no
eigenvalue or singular value computation on the main path.
"""

from .batch import BACKEND, backends, polar_batch
from .errors import (
    InvalidFormError,
    NegativeDiscriminantError,
    NotDecomposableError,
    NotPositiveDefiniteError,
    NotSymplecticError,
    NotSymplecticOrthogonalError,
    SingularGuardError,
    Sp4QuatError,
    ZeroQuaternionError,
)
from .hh_rep import (
    BASIS,
    J4,
    OrthoSymplecticQuat,
    TensorRep,
    basis_matrix,
    coeff_matrix,
    matrix_of_rep,
    matrix_of_tensor,
    rep_of_matrix,
    transpose_rep,
)
from .polar import (
    EulerCartan,
    GramRep,
    PolarFactors,
    SqrtInfo,
    enumerate_sym_symplectic_sqrts,
    euler_cartan,
    full_quaternion_form,
    gram_rep_of,
    polar_decompose,
    recover_pr,
    so4_to_quaternion_pair,
    solve_a_quadratic,
    sqrt_pd_symplectic,
    sqrt_root_candidates,
)
from .quat import Quaternion, cross, dot
from .symplectic import (
    CharPoly,
    SymSymplecticRep,
    charpoly_oracle,
    charpoly_sym_symplectic,
    charpoly_symplectic,
    check_sym_symplectic,
    is_hamiltonian,
    is_pd_symplectic,
    is_symplectic,
    pd_certificate,
    product_tensor_rep,
    sym_rep_of_matrix,
    symplectic_inverse,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BASIS",
    "CharPoly",
    "EulerCartan",
    "GramRep",
    "InvalidFormError",
    "J4",
    "NegativeDiscriminantError",
    "NotDecomposableError",
    "NotPositiveDefiniteError",
    "NotSymplecticError",
    "NotSymplecticOrthogonalError",
    "OrthoSymplecticQuat",
    "PolarFactors",
    "Quaternion",
    "SingularGuardError",
    "Sp4QuatError",
    "SqrtInfo",
    "SymSymplecticRep",
    "TensorRep",
    "ZeroQuaternionError",
    "backends",
    "basis_matrix",
    "charpoly_oracle",
    "charpoly_sym_symplectic",
    "charpoly_symplectic",
    "check_sym_symplectic",
    "coeff_matrix",
    "cross",
    "dot",
    "enumerate_sym_symplectic_sqrts",
    "euler_cartan",
    "full_quaternion_form",
    "gram_rep_of",
    "is_hamiltonian",
    "is_pd_symplectic",
    "is_symplectic",
    "matrix_of_rep",
    "matrix_of_tensor",
    "pd_certificate",
    "polar_batch",
    "polar_decompose",
    "product_tensor_rep",
    "recover_pr",
    "rep_of_matrix",
    "so4_to_quaternion_pair",
    "solve_a_quadratic",
    "sqrt_pd_symplectic",
    "sqrt_root_candidates",
    "sym_rep_of_matrix",
    "symplectic_inverse",
    "transpose_rep",
]

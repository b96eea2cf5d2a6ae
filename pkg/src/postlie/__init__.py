"""Exact toolkit for post-Lie algebra structures on pairs of Lie algebras."""

from .exact import Matrix, Q, Subspace, kernel_basis, rref, solve_affine
from .liealg import LieAlgebra, PairOnSameSpace, Representation, catalog
from .poly import Budget, BudgetExhausted, Ideal, Polynomial, groebner, ideal_equal
from .structures import AxiomReport, BilinearProduct, verify_commutative, verify_pair

__all__ = [
    "AxiomReport", "BilinearProduct", "Budget", "BudgetExhausted", "Ideal", "LieAlgebra",
    "Matrix", "PairOnSameSpace", "Polynomial", "Q", "Representation", "Subspace", "catalog",
    "groebner", "ideal_equal", "kernel_basis", "rref", "solve_affine", "verify_commutative",
    "verify_pair",
]

__version__ = "0.1.0"

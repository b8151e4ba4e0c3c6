"""Exact 2-ranks of point/subspace incidence matrices of symplectic spaces
over GF(2^t), with brute-force and basis-function cross-checks."""

__version__ = "0.1.0"

from .field import FieldCtx, make_field
from .formulas import (
    build_A,
    build_A_prime,
    d_lambda,
    rank_closed_form,
    rank_odd_model,
    rank_via_htypes,
)
from .geometry import SympSpace, Subspace
from .linalg import BitMatrix, QMatrix, rank_gf2_stream, rank_gfq
from .sbf import enumerate_admissible_sbfs, verify_basis_theorem
from .wedge import dim_S, filtration_basis, weyl_basis

__all__ = [
    "BitMatrix",
    "FieldCtx",
    "QMatrix",
    "Subspace",
    "SympSpace",
    "build_A",
    "build_A_prime",
    "d_lambda",
    "dim_S",
    "enumerate_admissible_sbfs",
    "filtration_basis",
    "make_field",
    "rank_closed_form",
    "rank_gf2_stream",
    "rank_gfq",
    "rank_odd_model",
    "rank_via_htypes",
    "verify_basis_theorem",
    "weyl_basis",
]

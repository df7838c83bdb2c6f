"""Exact algebra: Laurent polynomials and integer matrices in one namespace."""

from .intmatrix import IntMatrix, SnfResult, homology_ranks, matrix_rank, smith_normal_form
from .laurent import LaurentPoly, quantum_integer

__all__ = [
    "IntMatrix",
    "LaurentPoly",
    "SnfResult",
    "homology_ranks",
    "matrix_rank",
    "quantum_integer",
    "smith_normal_form",
]

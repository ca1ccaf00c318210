"""Clebsch-Gordan coefficients of U_q(su(2)) and U_q(su(3)) by projection operators."""

from .basis import GTLabel, IrrepLabel, dimension, enumerate_basis, product_multiplicities
from .cgc import CGCTable, cgc_table, projector_matrix_element
from .qnum import ConsistencyError, DomainError, HalfInt, QValue, Radical, q_int
from .wigner import cgc_su2q, q6j, q9j

__all__ = [
    "CGCTable", "ConsistencyError", "DomainError", "GTLabel", "HalfInt", "IrrepLabel",
    "QValue", "Radical", "cgc_su2q", "cgc_table", "dimension", "enumerate_basis",
    "product_multiplicities", "projector_matrix_element", "q6j", "q9j", "q_int",
]

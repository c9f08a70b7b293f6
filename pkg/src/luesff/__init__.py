"""Structure function of the Laguerre unitary ensemble at finite and infinite N."""

from .structure import (
    Method,
    PrecisionError,
    StructureQuery,
    StructureResult,
    s_lue_jue,
    s_lue_kernel_sum,
    s_lue_lhs_quadrature,
)
from .asymptotics import s_inf

__all__ = [
    "Method",
    "PrecisionError",
    "StructureQuery",
    "StructureResult",
    "s_inf",
    "s_lue_jue",
    "s_lue_kernel_sum",
    "s_lue_lhs_quadrature",
]

"""Exact (b,c)-inverses and polarity in matrix rings over Q and GF(p)."""

from .field import GF, QQ, FieldMismatchError, ModP, parse_field
from .matrix import ContractViolation, DimensionError, Mat, identity, rank, zeros
from .classic import drazin, group_inverse, inner_inverse, moore_penrose, verify_polar
from .bc import (
    BcResult,
    DualBcResult,
    bc_inverse,
    bc_invertible,
    bott_duffin,
    dual_bc_polar,
    inverse_along,
    verify_bc_polar,
)
from .subspace import cor43_check, projector_onto_along, thm41_check
from .suite import PROPERTY_IDS, Report, run_suite

__all__ = [
    "GF",
    "QQ",
    "FieldMismatchError",
    "ModP",
    "parse_field",
    "ContractViolation",
    "DimensionError",
    "Mat",
    "identity",
    "rank",
    "zeros",
    "drazin",
    "group_inverse",
    "inner_inverse",
    "moore_penrose",
    "verify_polar",
    "BcResult",
    "DualBcResult",
    "bc_inverse",
    "bc_invertible",
    "bott_duffin",
    "dual_bc_polar",
    "inverse_along",
    "verify_bc_polar",
    "cor43_check",
    "projector_onto_along",
    "thm41_check",
    "PROPERTY_IDS",
    "Report",
    "run_suite",
]

__version__ = "0.1.0"

"""Exact computation of generalised Cartan invariants of symmetric groups."""

from .arith import c_pr, d_p, exponents, r_ell, theta, v_p
from .blocks import (
    block_partition_of_irr,
    cartan_matrix,
    expected_block_diagonal,
    expected_global_diagonal,
    projective_lattice,
)
from .linalg import ExactMatrix, hnf_row, integer_kernel, p_part_of_snf, snf
from .partitions import Partition, ell_core, enumerate_partitions
from .reduction import build_context, chain, n_matrix, reduction_suite
from .report import VerificationReport
from .symfun import ClassFunction, character_table, scalar_product, transition
from .wreath import cartan_A_matrix, sym_power, wreath_pp, wreath_ss, x_matrix

__all__ = [
    "ClassFunction",
    "ExactMatrix",
    "Partition",
    "VerificationReport",
    "block_partition_of_irr",
    "build_context",
    "c_pr",
    "cartan_A_matrix",
    "cartan_matrix",
    "chain",
    "character_table",
    "d_p",
    "ell_core",
    "enumerate_partitions",
    "expected_block_diagonal",
    "expected_global_diagonal",
    "exponents",
    "hnf_row",
    "integer_kernel",
    "n_matrix",
    "p_part_of_snf",
    "projective_lattice",
    "r_ell",
    "reduction_suite",
    "scalar_product",
    "snf",
    "sym_power",
    "theta",
    "transition",
    "v_p",
    "wreath_pp",
    "wreath_ss",
    "x_matrix",
]

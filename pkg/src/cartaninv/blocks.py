"""Cartan matrices of symmetric groups built from character values.

A virtual character is projective exactly when it vanishes on every
``ell``-singular class, so the projective lattice is an integer kernel of a
slice of the character table.  Irreducible characters are orthonormal, hence
the Cartan matrix of a basis ``B`` (rows in character coordinates) is
``B @ B.T``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .arith import r_ell, theta
from .linalg import ExactMatrix, diagonal_invariant_factors, integer_kernel, snf
from .partitions import (
    Partition,
    as_partition,
    count_tuples,
    ell_core,
    enumerate_partitions,
    is_ell_singular,
)
from .report import VerificationReport, compare, run_check
from .symfun import character_table
from .wreath import cartan_A_matrix, wreath_ss


@dataclass(frozen=True)
class BlockId:
    ell: int
    core: Partition
    n: int

    def __post_init__(self):
        if self.ell < 2:
            raise ValueError("ell must be at least 2")
        core = as_partition(self.core)
        object.__setattr__(self, "core", core)
        if ell_core(core, self.ell) != core:
            raise ValueError(f"{core} is not a {self.ell}-core")
        if core.size > self.n or (self.n - core.size) % self.ell:
            raise ValueError(f"{core} is not the core of a block of degree {self.n}")

    @property
    def weight(self) -> int:
        return (self.n - self.core.size) // self.ell


@dataclass(frozen=True)
class ProjectiveLattice:
    ell: int
    n: int
    block: Optional[BlockId]  # None for the whole group
    basis: ExactMatrix  # rows: lattice basis; columns: irreducible characters

    @property
    def rank(self) -> int:
        return self.basis.nrows


def _key(rho: Partition) -> Tuple[int, Partition]:
    return (rho.size, rho)


def block_partition_of_irr(n: int, ell: int) -> Dict[Partition, List[Partition]]:
    """Group the partitions of ``n`` by their ``ell``-core."""
    if ell < 2:
        raise ValueError("ell must be at least 2")
    groups: Dict[Partition, List[Partition]] = {}
    for lam in enumerate_partitions(n):
        groups.setdefault(ell_core(lam, ell), []).append(lam)
    return {rho: groups[rho] for rho in sorted(groups, key=_key)}


def projective_lattice(n: int, ell: int, core=None) -> ProjectiveLattice:
    if ell < 2:
        raise ValueError("ell must be at least 2")
    block = None
    irr = enumerate_partitions(n)
    if core is not None:
        block = BlockId(ell, as_partition(core), n)
        irr = tuple(lam for lam in irr if ell_core(lam, ell) == block.core)
    singular = [mu for mu in enumerate_partitions(n) if is_ell_singular(mu, ell)]
    table = character_table(n).matrix.sub_by_labels(irr, singular)
    basis = integer_kernel(table)
    return ProjectiveLattice(ell, n, block, basis)


def cartan_matrix(lattice: ProjectiveLattice) -> ExactMatrix:
    b = lattice.basis
    return b @ b.T


def expected_block_diagonal(ell: int, w: int) -> List[int]:
    """Predicted invariant factors of a weight ``w`` block's Cartan matrix."""
    if ell < 2:
        raise ValueError("ell must be at least 2")
    out: List[int] = []
    for size in range(w + 1):
        mult = count_tuples(ell - 2, w - size)
        if mult:
            for lam in enumerate_partitions(size):
                out.extend([theta(lam, ell)] * mult)
    return sorted(out)


def expected_global_diagonal(ell: int, n: int) -> List[int]:
    if ell < 1:
        raise ValueError("ell must be positive")
    return sorted(r_ell(lam, ell) for lam in enumerate_partitions(n)
                  if all(a % ell for a in lam))


def _snf_of_cartan(lattice: ProjectiveLattice) -> List[int]:
    return sorted(snf(cartan_matrix(lattice)).factors)


def verify_block_cartan(ell: int, n: int, core) -> VerificationReport:
    core = as_partition(core)
    params = {"ell": ell, "n": n, "core": str(core)}

    def body():
        started = time.perf_counter()
        lattice = projective_lattice(n, ell, core)
        w = lattice.block.weight
        expected = expected_block_diagonal(ell, w)
        detail = ""
        if len(expected) != count_tuples(ell - 1, w):
            detail = "predicted diagonal has the wrong size"
        report = compare("block-cartan", params, diagonal_invariant_factors(expected),
                         _snf_of_cartan(lattice), started, detail)
        if detail:
            report.status = "fail"
        return report

    return run_check("block-cartan", params, body)


def verify_global_cartan(ell: int, n: int) -> VerificationReport:
    params = {"ell": ell, "n": n}

    def body():
        started = time.perf_counter()
        lattice = projective_lattice(n, ell)
        expected = diagonal_invariant_factors(expected_global_diagonal(ell, n))
        return compare("global-cartan", params, expected, _snf_of_cartan(lattice), started)

    return run_check("global-cartan", params, body)


def verify_wreath_shadow(ell: int, n: int, core) -> VerificationReport:
    """Block Cartan matrix against the wreath operator applied to the weight-one Gram matrix."""
    core = as_partition(core)
    params = {"ell": ell, "n": n, "core": str(core)}

    def body():
        started = time.perf_counter()
        lattice = projective_lattice(n, ell, core)
        w = lattice.block.weight
        shadow = wreath_ss(cartan_A_matrix(ell), w)
        return compare("wreath-shadow", params, sorted(snf(shadow).factors),
                       _snf_of_cartan(lattice), started)

    return run_check("wreath-shadow", params, body)


def block_cores(n: int, ell: int) -> List[Partition]:
    return list(block_partition_of_irr(n, ell))

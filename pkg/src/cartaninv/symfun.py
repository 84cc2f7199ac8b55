"""Class functions on symmetric groups as coordinate vectors in graded bases.

Four bases are supported, indexed by partitions of ``w``:

``p``   power sums, ``p_lam(g_mu) = z_lam * [lam == mu]``
``pt``  normalised power sums (class indicators), ``pt_lam = p_lam / z_lam``
``s``   irreducible characters
``h``   complete homogeneous (Young permutation characters)

Transition matrices follow the row convention ``u_lam = sum_mu M[lam, mu] v_mu``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Sequence, Tuple

from .linalg import ExactMatrix, exact, invert
from .partitions import Partition, as_partition, beta_numbers, enumerate_partitions, from_beta_numbers, z_value

BASES = ("p", "pt", "s", "h")
_ALIASES = {"p": "p", "pt": "pt", "p~": "pt", "p̃": "pt", "ptilde": "pt", "s": "s", "h": "h"}


def basis_tag(tag: str) -> str:
    try:
        return _ALIASES[tag]
    except KeyError:
        raise ValueError(f"unknown basis tag {tag!r}; expected one of {BASES}") from None


# -- Murnaghan-Nakayama -------------------------------------------------------


@lru_cache(maxsize=None)
def character_value(lam: Tuple[int, ...], mu: Tuple[int, ...]) -> int:
    """Irreducible character ``lam`` evaluated on cycle type ``mu``."""
    if not mu:
        return 1 if not lam else 0
    k = mu[0]
    rest = mu[1:]
    beta = beta_numbers(Partition(lam))
    occupied = set(beta)
    total = 0
    for b in beta:
        if b - k >= 0 and b - k not in occupied:
            # sign = parity of beads strictly between the two positions
            height = sum(1 for c in beta if b - k < c < b)
            shape = from_beta_numbers([c if c != b else b - k for c in beta])
            val = character_value(tuple(shape), rest)
            total += -val if height % 2 else val
    return total


@dataclass(frozen=True)
class CharTable:
    w: int
    matrix: ExactMatrix  # rows: characters, columns: cycle types

    @property
    def labels(self) -> Tuple[Partition, ...]:
        return self.matrix.row_labels

    def value(self, lam, mu) -> int:
        return self.matrix.entry(as_partition(lam), as_partition(mu))


@lru_cache(maxsize=None)
def character_table(w: int) -> CharTable:
    parts = enumerate_partitions(w)
    rows = [[character_value(tuple(lam), tuple(mu)) for mu in parts] for lam in parts]
    return CharTable(w, ExactMatrix(rows, parts, parts))


# -- permutation characters -----------------------------------------------------


def count_merge_maps(lam: Sequence[int], mu: Sequence[int]) -> int:
    """Number of maps from the parts of ``mu`` to the parts of ``lam`` whose fibres sum exactly."""
    mu = tuple(mu)

    @lru_cache(maxsize=None)
    def go(j: int, caps: Tuple[int, ...]) -> int:
        if j == len(mu):
            return 1 if not any(caps) else 0
        out = 0
        for i, c in enumerate(caps):
            if c >= mu[j]:
                out += go(j + 1, caps[:i] + (c - mu[j],) + caps[i + 1:])
        return out

    if sum(lam) != sum(mu):
        return 0
    return go(0, tuple(lam))


# -- transitions ------------------------------------------------------------------


@dataclass(frozen=True)
class TransitionMatrix:
    source: str
    target: str
    w: int
    matrix: ExactMatrix


@lru_cache(maxsize=None)
def _to_pt(tag: str, w: int) -> ExactMatrix:
    parts = enumerate_partitions(w)
    if tag == "pt":
        return ExactMatrix.identity(parts)
    if tag == "p":
        return ExactMatrix.diagonal([z_value(lam) for lam in parts], parts)
    if tag == "s":
        return character_table(w).matrix
    if tag == "h":
        rows = [[count_merge_maps(lam, mu) for mu in parts] for lam in parts]
        return ExactMatrix(rows, parts, parts)
    raise AssertionError(tag)


@lru_cache(maxsize=None)
def _from_pt(tag: str, w: int) -> ExactMatrix:
    return invert(_to_pt(tag, w))


@lru_cache(maxsize=None)
def _transition(u: str, v: str, w: int) -> TransitionMatrix:
    if u == v:
        mat = ExactMatrix.identity(enumerate_partitions(w))
    elif v == "pt":
        mat = _to_pt(u, w)
    else:
        mat = _to_pt(u, w) @ _from_pt(v, w)
    return TransitionMatrix(u, v, w, mat)


def transition(u: str, v: str, w: int) -> TransitionMatrix:
    """Matrix expressing basis ``u`` of degree ``w`` in basis ``v``."""
    return _transition(basis_tag(u), basis_tag(v), w)


def transition_matrix(u: str, v: str, w: int) -> ExactMatrix:
    return transition(u, v, w).matrix


# -- class functions --------------------------------------------------------------


@dataclass(frozen=True)
class ClassFunction:
    """Coordinates of a class function on ``S_w`` in one of the graded bases."""

    basis: str
    w: int
    coeffs: Tuple

    def __post_init__(self):
        object.__setattr__(self, "basis", basis_tag(self.basis))
        coeffs = tuple(exact(Fraction(c)) for c in self.coeffs)
        if len(coeffs) != len(enumerate_partitions(self.w)):
            raise ValueError("coefficient vector length does not match Par(w)")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def basis_element(cls, basis: str, lam) -> "ClassFunction":
        lam = as_partition(lam)
        parts = enumerate_partitions(lam.size)
        return cls(basis, lam.size, tuple(int(mu == lam) for mu in parts))

    def to(self, basis: str) -> "ClassFunction":
        basis = basis_tag(basis)
        m = transition_matrix(self.basis, basis, self.w)
        row = ExactMatrix([self.coeffs]) @ m
        return ClassFunction(basis, self.w, row.rows[0])

    def values(self) -> Dict[Partition, object]:
        """Values on each cycle type."""
        return dict(zip(enumerate_partitions(self.w), self.to("pt").coeffs))


def scalar_product(f: ClassFunction, g: ClassFunction):
    """Standard inner product of class functions on ``S_w``."""
    if f.w != g.w:
        raise ValueError(f"degree mismatch: {f.w} != {g.w}")
    fv = f.to("pt").coeffs
    gv = g.to("pt").coeffs
    total = Fraction(0)
    for lam, a, b in zip(enumerate_partitions(f.w), fv, gv):
        if a and b:
            total += Fraction(a * b, z_value(lam))
    return exact(total)

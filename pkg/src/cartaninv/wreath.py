"""The wreath operator on matrices and the matrices it produces from scalars.

For a ``T x Q`` matrix ``A`` the operator yields a matrix indexed by maps
from ``T`` (resp. ``Q``) to partitions of total size ``w``.  In the
power-sum / class-indicator pair of bases it is a direct sum of tensor
products of symmetric powers of ``A``; in the Schur basis it is obtained from
that form by conjugation with tensor powers of the Schur-to-power-sum
transition matrix.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, prod
from typing import Dict, List, Sequence, Tuple

from .arith import c_pr, theta
from .linalg import ExactMatrix, as_matrix, diagonal_invariant_factors, p_part_of_snf, snf
from .partitions import Partition, _require_prime, enumerate_partitions, sum_partitions, z_value
from .report import compare, run_check
from .symfun import character_value, transition_matrix

PMap = Tuple[Partition, ...]


# -- index sets ------------------------------------------------------------------


@lru_cache(maxsize=None)
def compositions(n: int, k: int) -> Tuple[Tuple[int, ...], ...]:
    """Weak compositions of ``n`` into ``k`` parts, in descending lexicographic order."""
    if k == 0:
        return ((),) if n == 0 else ()
    if k == 1:
        return ((n,),)
    return tuple((a,) + rest for a in range(n, -1, -1) for rest in compositions(n - a, k - 1))


def _partition_key(lam: Partition):
    return (sum(lam), tuple(lam))


@lru_cache(maxsize=None)
def pmaps(k: int, w: int) -> Tuple[PMap, ...]:
    """Maps from ``k`` ordered indices to partitions with total size ``w``.

    Ordered lexicographically, comparing components by size and then by the
    canonical partition order.
    """
    out: List[PMap] = []
    for sizes in compositions(w, k):
        for combo in product(*(enumerate_partitions(s) for s in sizes)):
            out.append(tuple(combo))
    out.sort(key=lambda lm: tuple(_partition_key(x) for x in lm))
    return tuple(out)


# -- symmetric powers --------------------------------------------------------------


def _multinomial(n: int, ks: Sequence[int]) -> int:
    out = factorial(n)
    for k in ks:
        out //= factorial(k)
    return out


def _sym_entry(a: Tuple[Tuple, ...], i: Tuple[int, ...], j: Tuple[int, ...]) -> object:
    """Entry ``(i, j)`` of a symmetric power of ``a`` in the monomial basis."""
    nq = len(j)

    def go(t: int, remaining: Tuple[int, ...]):
        if t == len(i):
            return 1 if not any(remaining) else 0
        total = 0
        for f in compositions(i[t], nq):
            if any(fq > rq for fq, rq in zip(f, remaining)):
                continue
            coeff = _multinomial(i[t], f)
            for q, fq in enumerate(f):
                if fq:
                    coeff *= a[t][q] ** fq
            if coeff:
                total += coeff * go(t + 1, tuple(rq - fq for rq, fq in zip(remaining, f)))
        return total

    return go(0, j)


def sym_power(A, n: int) -> ExactMatrix:
    """Matrix of the ``n``-th symmetric power of ``A`` on monomials (exponent vectors)."""
    A = as_matrix(A)
    if n < 0:
        raise ValueError("n must be nonnegative")
    rows_idx = compositions(n, A.nrows)
    cols_idx = compositions(n, A.ncols)
    a = A.rows
    rows = [[_sym_entry(a, i, j) for j in cols_idx] for i in rows_idx]
    return ExactMatrix(rows, rows_idx, cols_idx)


class _SymCache:
    def __init__(self, A: ExactMatrix):
        self.A = A
        self._cache: Dict[int, ExactMatrix] = {}

    def entry(self, n: int, i, j):
        m = self._cache.get(n)
        if m is None:
            m = self._cache[n] = sym_power(self.A, n)
        return m.entry(i, j)


def _hat(lam: PMap) -> Dict[int, Tuple[int, ...]]:
    """Multiplicity vectors: ``d -> (m_d(lam(t)))_t``."""
    counters = [Counter(x) for x in lam]
    ds = set()
    for c in counters:
        ds.update(c)
    return {d: tuple(c.get(d, 0) for c in counters) for d in ds}


# -- the operator ------------------------------------------------------------------


def wreath_pp(A, w: int) -> ExactMatrix:
    """The operator in the (power sum, class indicator) pair of bases."""
    A = as_matrix(A)
    rows_idx = pmaps(A.nrows, w)
    cols_idx = pmaps(A.ncols, w)
    cache = _SymCache(A)
    row_hats = [_hat(x) for x in rows_idx]
    col_hats = [_hat(x) for x in cols_idx]
    rows = []
    for rh in row_hats:
        rj = {d: sum(v) for d, v in rh.items()}
        row = []
        for ch in col_hats:
            if {d: sum(v) for d, v in ch.items()} != rj:
                row.append(0)
                continue
            val = 1
            for d, vec in rh.items():
                val *= cache.entry(rj[d], vec, ch[d])
                if not val:
                    break
            row.append(val)
        rows.append(row)
    return ExactMatrix(rows, rows_idx, cols_idx)


def _tensor_power(M_by_degree, k: int, w: int) -> ExactMatrix:
    """``(m^{(x)k})`` restricted to PMap_w, where ``M_by_degree(d)`` is the degree-``d`` block."""
    idx = pmaps(k, w)
    rows = []
    for lam in idx:
        sizes = tuple(sum(x) for x in lam)
        row = []
        for mu in idx:
            if tuple(sum(x) for x in mu) != sizes:
                row.append(0)
                continue
            val = 1
            for t in range(k):
                m = M_by_degree(sizes[t])
                val *= m.entry(lam[t], mu[t])
                if not val:
                    break
            row.append(val)
        rows.append(row)
    return ExactMatrix(rows, idx, idx)


def wreath_ss(A, w: int) -> ExactMatrix:
    """The operator in the Schur basis, by conjugating :func:`wreath_pp`."""
    A = as_matrix(A)
    left = _tensor_power(lambda d: transition_matrix("s", "p", d), A.nrows, w)
    right = _tensor_power(lambda d: transition_matrix("p", "s", d), A.ncols, w)
    return left @ wreath_pp(A, w) @ right


def wreath_ss_direct(A, w: int) -> ExactMatrix:
    """Independent evaluation of :func:`wreath_ss` by summing over partition-valued maps on ``T x Q``.

    Cost grows quickly; intended as a cross-check for ``w <= 4``.
    """
    A = as_matrix(A)
    nt, nq = A.shape
    rows_idx = pmaps(nt, w)
    cols_idx = pmaps(nq, w)
    a = A.rows
    # precompute all nu : T x Q -> Par with |nu| = w, grouped by their row/col sums
    contributions: Dict[Tuple[PMap, PMap], Fraction] = {}
    for nu in pmaps(nt * nq, w):
        grid = [nu[t * nq:(t + 1) * nq] for t in range(nt)]
        alphas = tuple(sum_partitions(grid[t]) for t in range(nt))
        betas = tuple(sum_partitions(grid[t][q] for t in range(nt)) for q in range(nq))
        weight = Fraction(1)
        for t in range(nt):
            for q in range(nq):
                x = grid[t][q]
                weight *= Fraction(a[t][q] ** len(x), z_value(x))
        if weight:
            key = (alphas, betas)
            contributions[key] = contributions.get(key, 0) + weight
    rows = []
    for lam in rows_idx:
        row = []
        for mu in cols_idx:
            total = Fraction(0)
            for (alphas, betas), weight in contributions.items():
                if any(sum(alphas[t]) != sum(lam[t]) for t in range(nt)):
                    continue
                if any(sum(betas[q]) != sum(mu[q]) for q in range(nq)):
                    continue
                val = weight
                for t in range(nt):
                    val *= character_value(tuple(lam[t]), tuple(alphas[t]))
                    if not val:
                        break
                if not val:
                    continue
                for q in range(nq):
                    val *= character_value(tuple(mu[q]), tuple(betas[q]))
                    if not val:
                        break
                total += val
            row.append(total)
        rows.append(row)
    return ExactMatrix(rows, rows_idx, cols_idx)


# -- scalar case ------------------------------------------------------------------------


@dataclass(frozen=True)
class XMatrix:
    ell: int
    w: int
    bases: Tuple[str, str]
    matrix: ExactMatrix


def x_matrix_direct(ell: int, w: int) -> ExactMatrix:
    """Entry ``(lam, mu)`` is ``sum_nu chi_lam(nu) chi_mu(nu) ell**l(nu) / z_nu``."""
    parts = enumerate_partitions(w)
    rows = []
    for lam in parts:
        row = []
        for mu in parts:
            total = Fraction(0)
            for nu in parts:
                c = character_value(tuple(lam), tuple(nu)) * character_value(tuple(mu), tuple(nu))
                if c:
                    total += Fraction(c * ell ** len(nu), z_value(nu))
            row.append(total)
        rows.append(row)
    return ExactMatrix(rows, parts, parts)


def x_matrix_conjugated(ell: int, w: int) -> ExactMatrix:
    parts = enumerate_partitions(w)
    diag = ExactMatrix.diagonal([ell ** len(lam) for lam in parts], parts)
    return transition_matrix("s", "p", w) @ diag @ transition_matrix("p", "s", w)


def x_matrix(ell: int, w: int) -> XMatrix:
    """The operator applied to the ``1 x 1`` matrix ``(ell)`` in the Schur basis.

    Both evaluation routes are computed; a disagreement raises.
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    direct = x_matrix_direct(ell, w)
    conj = x_matrix_conjugated(ell, w)
    if direct != conj:
        raise ArithmeticError(f"direct and conjugated X disagree for ell={ell}, w={w}")
    return XMatrix(ell, w, ("s", "s"), direct)


def cartan_A_matrix(ell: int) -> ExactMatrix:
    """Tridiagonal ``(ell-1) x (ell-1)`` Gram matrix with 2 on the diagonal and 1 beside it."""
    if ell < 2:
        raise ValueError("ell must be at least 2")
    n = ell - 1
    return ExactMatrix([[2 if i == j else 1 if abs(i - j) == 1 else 0 for j in range(n)]
                        for i in range(n)])


def theta_diagonal_for(a_diag: Sequence[int], w: int) -> List[int]:
    """Sorted ``prod_t theta(lam(t), a_t)`` over PMap_w, the predicted invariant factors."""
    out = [prod(theta(lam[t], a_diag[t]) for t in range(len(a_diag)))
           for lam in pmaps(len(a_diag), w)]
    return sorted(out)


def verify_prime_power_x(p: int, r: int, w: int):
    """p-adic invariant factors of the scalar matrix at ``p**r`` against the closed form."""
    _require_prime(p)
    params = {"p": p, "r": r, "w": w}

    def body():
        started = time.perf_counter()
        expected = [c_pr(lam, p, r) for lam in enumerate_partitions(w)]
        return compare("prime-power-x", params, expected,
                       p_part_of_snf(x_matrix(p**r, w).matrix, p), started)

    return run_check("prime-power-x", params, body)


def verify_scalar_x(ell: int, w: int):
    """Invariant factors of the scalar matrix at ``ell`` against those of the theta diagonal."""
    params = {"ell": ell, "w": w}

    def body():
        started = time.perf_counter()
        expected = diagonal_invariant_factors(theta_diagonal_for([ell], w))
        return compare("scalar-x", params, expected, snf(x_matrix(ell, w).matrix).factors, started)

    return run_check("scalar-x", params, body)

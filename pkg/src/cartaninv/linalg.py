"""Exact dense linear algebra over Z and Q.

Entries are Python ints where integral and :class:`fractions.Fraction`
otherwise.  Floats are rejected outright.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Iterable, List, Optional, Sequence, Tuple

Number = Any  # int | Fraction


class SingularMatrixError(ArithmeticError):
    pass


def exact(x) -> Number:
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return exact(Fraction(x.strip()))
    raise TypeError(f"inexact or unsupported entry {x!r}")


def _default_labels(n: int) -> Tuple:
    return tuple(range(n))


class ExactMatrix:
    """Immutable dense matrix with labelled rows and columns."""

    __slots__ = ("_rows", "_ncols", "row_labels", "col_labels", "_row_pos", "_col_pos")

    def __init__(self, rows: Iterable[Iterable], row_labels: Optional[Sequence] = None,
                 col_labels: Optional[Sequence] = None, ncols: Optional[int] = None):
        data = tuple(tuple(exact(x) for x in row) for row in rows)
        if ncols is None:
            if data:
                ncols = len(data[0])
            elif col_labels is not None:
                ncols = len(col_labels)
            else:
                ncols = 0
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
        self._rows = data
        self._ncols = ncols
        self.row_labels = tuple(row_labels) if row_labels is not None else _default_labels(len(data))
        self.col_labels = tuple(col_labels) if col_labels is not None else _default_labels(ncols)
        if len(self.row_labels) != len(data) or len(self.col_labels) != ncols:
            raise ValueError("label count does not match matrix shape")
        self._row_pos = None
        self._col_pos = None

    @classmethod
    def _raw(cls, rows, row_labels, col_labels) -> "ExactMatrix":
        # rows already exact tuples; skips validation on hot paths
        self = object.__new__(cls)
        self._rows = rows
        self._ncols = len(col_labels)
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        self._row_pos = None
        self._col_pos = None
        return self

    @classmethod
    def identity(cls, labels) -> "ExactMatrix":
        if isinstance(labels, int):
            labels = range(labels)
        labels = tuple(labels)
        n = len(labels)
        return cls._raw(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)),
                        labels, labels)

    @classmethod
    def diagonal(cls, values: Iterable, labels=None) -> "ExactMatrix":
        vals = [exact(v) for v in values]
        n = len(vals)
        labels = tuple(labels) if labels is not None else _default_labels(n)
        return cls._raw(tuple(tuple(vals[i] if i == j else 0 for j in range(n)) for i in range(n)),
                        labels, labels)

    @classmethod
    def zeros(cls, row_labels, col_labels) -> "ExactMatrix":
        return cls._raw(tuple((0,) * len(col_labels) for _ in row_labels), row_labels, col_labels)

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self._rows), self._ncols

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def rows(self) -> Tuple[Tuple[Number, ...], ...]:
        return self._rows

    def tolist(self) -> List[List[Number]]:
        return [list(r) for r in self._rows]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row_index(self, label) -> int:
        if self._row_pos is None:
            self._row_pos = {lab: i for i, lab in enumerate(self.row_labels)}
        return self._row_pos[label]

    def col_index(self, label) -> int:
        if self._col_pos is None:
            self._col_pos = {lab: i for i, lab in enumerate(self.col_labels)}
        return self._col_pos[label]

    def entry(self, row_label, col_label) -> Number:
        return self._rows[self.row_index(row_label)][self.col_index(col_label)]

    def diagonal_entries(self) -> List[Number]:
        return [self._rows[i][i] for i in range(min(self.shape))]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"ExactMatrix([{body}])"

    # -- predicates -------------------------------------------------------

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for r in self._rows for x in r)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self._rows) for j, x in enumerate(r) if i != j)

    def is_lower_triangular(self) -> bool:
        return all(x == 0 for i, r in enumerate(self._rows) for x in r[i + 1:])

    # -- arithmetic -------------------------------------------------------

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._raw(tuple(zip(*self._rows)) if self._rows else
                                tuple(() for _ in range(self._ncols)),
                                self.col_labels, self.row_labels)

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self._ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        n = other.ncols
        b = other._rows
        out = []
        for row in self._rows:
            acc = [0] * n
            for k, a in enumerate(row):
                if a:
                    bk = b[k]
                    for j in range(n):
                        x = bk[j]
                        if x:
                            acc[j] += a * x
            out.append(tuple(exact(x) for x in acc))
        return ExactMatrix._raw(tuple(out), self.row_labels, other.col_labels)

    def _binary(self, other: "ExactMatrix", op) -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        rows = tuple(tuple(exact(op(x, y)) for x, y in zip(r, s))
                     for r, s in zip(self._rows, other._rows))
        return ExactMatrix._raw(rows, self.row_labels, self.col_labels)

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y)

    def scale(self, c) -> "ExactMatrix":
        c = exact(c)
        return ExactMatrix._raw(tuple(tuple(exact(c * x) for x in r) for r in self._rows),
                                self.row_labels, self.col_labels)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        """Kronecker product; labels are pairs ``(self_label, other_label)``."""
        rows = []
        for ra in self._rows:
            for rb in other._rows:
                rows.append(tuple(a * b for a in ra for b in rb))
        rl = [(x, y) for x in self.row_labels for y in other.row_labels]
        cl = [(x, y) for x in self.col_labels for y in other.col_labels]
        return ExactMatrix._raw(tuple(rows), rl, cl)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        data = tuple(tuple(self._rows[i][j] for j in cols) for i in rows)
        return ExactMatrix._raw(data, [self.row_labels[i] for i in rows],
                                [self.col_labels[j] for j in cols])

    def sub_by_labels(self, row_labels: Sequence, col_labels: Sequence) -> "ExactMatrix":
        return self.submatrix([self.row_index(x) for x in row_labels],
                              [self.col_index(x) for x in col_labels])

    def relabel(self, row_labels=None, col_labels=None) -> "ExactMatrix":
        return ExactMatrix._raw(self._rows,
                                self.row_labels if row_labels is None else row_labels,
                                self.col_labels if col_labels is None else col_labels)

    def det(self) -> Number:
        return determinant(self)

    def inverse(self) -> "ExactMatrix":
        return invert(self)


def as_matrix(obj) -> ExactMatrix:
    if isinstance(obj, ExactMatrix):
        return obj
    return ExactMatrix(obj)


def block_diagonal(blocks: Sequence[ExactMatrix]) -> ExactMatrix:
    rl = [lab for b in blocks for lab in b.row_labels]
    cl = [lab for b in blocks for lab in b.col_labels]
    rows = []
    offset = 0
    total = len(cl)
    for b in blocks:
        for r in b.rows:
            rows.append((0,) * offset + tuple(r) + (0,) * (total - offset - b.ncols))
        offset += b.ncols
    return ExactMatrix._raw(tuple(rows), rl, cl)


# -- Gaussian elimination over Q --------------------------------------------


def determinant(A) -> Number:
    A = as_matrix(A)
    if not A.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = A.nrows
    if A.is_integral():
        # Bareiss fraction-free elimination
        a = A.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1
    a = [[Fraction(x) for x in r] for r in A.rows]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / a[k][k]
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return exact(det)


def invert(A) -> ExactMatrix:
    A = as_matrix(A)
    if not A.is_square():
        raise ValueError("cannot invert a non-square matrix")
    n = A.nrows
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(A.rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                ak = a[k]
                a[i] = [x - f * y for x, y in zip(a[i], ak)]
    rows = tuple(tuple(exact(x) for x in r[n:]) for r in a)
    return ExactMatrix._raw(rows, A.col_labels, A.row_labels)


def rank(A) -> int:
    A = as_matrix(A)
    a = [[Fraction(x) for x in r] for r in A.rows]
    m, n = A.shape
    rk = 0
    for c in range(n):
        piv = next((i for i in range(rk, m) if a[i][c]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        for i in range(rk + 1, m):
            if a[i][c]:
                f = a[i][c] / a[rk][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rk])]
        rk += 1
    return rk


# -- Smith and Hermite normal forms -------------------------------------------


@dataclass(frozen=True)
class SnfResult:
    """Invariant factors ``d1 | d2 | ...`` (zeros past the rank) and the rank."""

    factors: Tuple[int, ...]
    rank: int
    witnesses: Optional[Tuple[ExactMatrix, ExactMatrix]] = None

    def nonzero(self) -> Tuple[int, ...]:
        return self.factors[: self.rank]


def _require_integral(A: ExactMatrix) -> None:
    if not A.is_integral():
        raise ValueError("matrix must have integer entries")


def snf(A) -> SnfResult:
    """Invariant factors by elimination with a minimal-modulus pivot each round."""
    A = as_matrix(A)
    _require_integral(A)
    a = A.tolist()
    m, n = A.shape
    diag: List[int] = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i0, j0 = best
        a[t], a[i0] = a[i0], a[t]
        if j0 != t:
            for row in a:
                row[t], row[j0] = row[j0], row[t]
        while True:
            p = a[t][t]
            clean = True
            pr = a[t]
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    q = x // p
                    ri = a[i]
                    for j in range(t, n):
                        if pr[j]:
                            ri[j] -= q * pr[j]
                    if ri[t]:
                        clean = False
            for j in range(t + 1, n):
                x = pr[j]
                if x:
                    q = x // p
                    for row in a[t:]:
                        if row[t]:
                            row[j] -= q * row[t]
                    if pr[j]:
                        clean = False
            if not clean:
                # move the smallest remainder in row t / column t onto the pivot
                cand = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, i1, j1 = min(cand)
                if i1 != t:
                    a[t], a[i1] = a[i1], a[t]
                if j1 != t:
                    for row in a:
                        row[t], row[j1] = row[j1], row[t]
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            ri = a[bad]
            a[t] = [x + y for x, y in zip(a[t], ri)]
        diag.append(abs(a[t][t]))
        t += 1
    rk = len(diag)
    return SnfResult(tuple(diag) + (0,) * (min(m, n) - rk), rk)


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _hnf_with_transform(a: List[List[int]], track: bool):
    """Row-reduce ``a`` in place to Hermite normal form.

    Returns ``(rank, u)`` with ``u @ a_original == a_reduced`` when ``track``.
    """
    m = len(a)
    n = len(a[0]) if a else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if a[i][c] == 0:
                continue
            x, y = a[r][c], a[i][c]
            if x == 0:
                a[r], a[i] = a[i], a[r]
                if track:
                    u[r], u[i] = u[i], u[r]
                continue
            if y % x == 0:
                q = y // x
                a[i] = [bi - q * br for bi, br in zip(a[i], a[r])]
                if track:
                    u[i] = [bi - q * br for bi, br in zip(u[i], u[r])]
                continue
            g, s, t = _xgcd(x, y)
            xs, ys = x // g, y // g
            ar, ai = a[r], a[i]
            a[r] = [s * p + t * q for p, q in zip(ar, ai)]
            a[i] = [-ys * p + xs * q for p, q in zip(ar, ai)]
            if track:
                ur, ui = u[r], u[i]
                u[r] = [s * p + t * q for p, q in zip(ur, ui)]
                u[i] = [-ys * p + xs * q for p, q in zip(ur, ui)]
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            if track:
                u[r] = [-x for x in u[r]]
        piv = a[r][c]
        for i in range(r):
            q = a[i][c] // piv
            if q:
                a[i] = [bi - q * br for bi, br in zip(a[i], a[r])]
                if track:
                    u[i] = [bi - q * br for bi, br in zip(u[i], u[r])]
        r += 1
    return r, u


def hnf_row(A) -> ExactMatrix:
    """Row Hermite normal form with zero rows dropped."""
    A = as_matrix(A)
    _require_integral(A)
    a = A.tolist()
    rk, _ = _hnf_with_transform(a, track=False)
    return ExactMatrix._raw(tuple(tuple(r) for r in a[:rk]), range(rk), A.col_labels)


def integer_kernel(A) -> ExactMatrix:
    """Z-basis (as rows, in Hermite form) of ``{x integral : x @ A == 0}``."""
    A = as_matrix(A)
    _require_integral(A)
    m = A.nrows
    if A.ncols == 0:
        return ExactMatrix.identity(A.row_labels).relabel(row_labels=range(m))
    a = A.tolist()
    rk, u = _hnf_with_transform(a, track=True)
    basis = [u[i] for i in range(rk, m)]
    if not basis:
        return ExactMatrix._raw((), (), A.row_labels)
    return hnf_row(ExactMatrix._raw(tuple(tuple(r) for r in basis), range(len(basis)), A.row_labels))


# -- p-local predicates --------------------------------------------------------


def valuation(x, p: int) -> float | int:
    """p-adic valuation of a rational; ``inf`` for zero."""
    x = Fraction(x)
    if x == 0:
        return float("inf")
    v = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def is_p_integral(x, p: int) -> bool:
    return Fraction(x).denominator % p != 0


def p_local_unimodular(A, p: int) -> bool:
    A = as_matrix(A)
    if not A.is_square():
        raise ValueError("matrix must be square")
    if not all(is_p_integral(x, p) for r in A.rows for x in r):
        return False
    d = determinant(A)
    return d != 0 and valuation(d, p) == 0


def p_row_equivalent(A, B, p: int) -> bool:
    """Whether ``A = W @ B`` for some ``W`` invertible over the integers localized at ``p``."""
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape or not A.is_square():
        raise ValueError("matrices must be square of the same shape")
    try:
        binv = invert(B)
    except SingularMatrixError:
        return False
    if determinant(A) == 0:
        return False
    return p_local_unimodular(A @ binv, p)


def p_part_of_snf(A, p: int) -> List[int]:
    """Valuations at ``p`` of the invariant factors.

    Rational entries are allowed as long as their denominators are prime to
    ``p``; clearing such denominators does not change the answer.
    """
    A = as_matrix(A)
    if not A.is_square():
        raise ValueError("matrix must be square")
    if not A.is_integral():
        denom = 1
        for row in A.rows:
            for x in row:
                d = Fraction(x).denominator
                if d % p == 0:
                    raise ValueError(f"entry {x} is not {p}-integral")
                denom = denom * d // gcd(denom, d)
        A = A.scale(denom)
    res = snf(A)
    if res.rank < A.nrows:
        raise SingularMatrixError("matrix is singular")
    return sorted(valuation(d, p) for d in res.factors)


# -- text format ---------------------------------------------------------------


class MatrixParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


_SPLIT = re.compile(r"[\s,]+")


def parse_matrix(text: str) -> ExactMatrix:
    """One row per line; integers or ``a/b`` fractions separated by whitespace or commas."""
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = [t for t in _SPLIT.split(line.strip()) if t]
        if not tokens:
            continue
        row = []
        for tok in tokens:
            if not re.fullmatch(r"[+-]?\d+(/[+-]?\d+)?", tok):
                raise MatrixParseError(lineno, f"bad entry {tok!r}")
            try:
                row.append(exact(Fraction(tok)))
            except ZeroDivisionError:
                raise MatrixParseError(lineno, f"zero denominator in {tok!r}") from None
        if width is not None and len(row) != width:
            raise MatrixParseError(lineno, f"expected {width} entries, got {len(row)}")
        width = len(row)
        rows.append(row)
    return ExactMatrix(rows)


def format_matrix(A: ExactMatrix, sep: str = ",") -> str:
    return "\n".join(sep.join(str(x) for x in r) for r in A.rows)


def diagonal_invariant_factors(values: Iterable[int]) -> List[int]:
    """Sorted invariant factors of the diagonal matrix with the given entries.

    Differs from ``sorted(values)`` whenever the entries do not already form a
    divisibility chain, e.g. ``[2, 3] -> [1, 6]``.
    """
    vals = [abs(exact(v)) for v in values]
    if not vals:
        return []
    return sorted(snf(ExactMatrix.diagonal(vals)).factors)

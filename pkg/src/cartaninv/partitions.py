"""Integer partitions, cores, and the p-power splittings used throughout.

Partitions are immutable tuples of weakly decreasing positive integers.
Python's tuple ordering coincides with zero-padded lexicographic order on
partitions, which is the canonical index order for every partition-indexed
matrix in this package.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Mapping, Tuple


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(parts)
        for a in parts:
            if not isinstance(a, int) or isinstance(a, bool) or a < 1:
                raise ValueError(f"partition parts must be positive integers: {parts!r}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"partition parts must be weakly decreasing: {parts!r}")
        return super().__new__(cls, parts)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        """Build a partition from parts in any order."""
        return cls(sorted(parts, reverse=True))

    @classmethod
    def from_multiplicities(cls, mult: Mapping[int, int]) -> "Partition":
        parts: List[int] = []
        for j in sorted(mult, reverse=True):
            parts.extend([j] * mult[j])
        return cls(parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the textual form ``[4,2,1]``; ``[]`` is the empty partition."""
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"not a partition literal: {text!r}")
        body = s[1:-1].strip()
        if not body:
            return cls()
        return cls(int(x) for x in body.split(","))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicity(self, j: int) -> int:
        return multiplicity(self, j)

    def multiplicities(self) -> Dict[int, int]:
        return dict(Counter(self))

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


EMPTY = Partition()


def as_partition(obj) -> Partition:
    if isinstance(obj, Partition):
        return obj
    return Partition(obj)


@lru_cache(maxsize=None)
def _partitions_desc(w: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    if w == 0:
        return ((),)
    out = []
    for first in range(min(w, largest), 0, -1):
        for rest in _partitions_desc(w - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_partitions(w: int) -> Tuple[Partition, ...]:
    """All partitions of ``w`` in ascending (padded) lexicographic order."""
    if w < 0:
        raise ValueError("w must be nonnegative")
    return tuple(sorted(Partition(p) for p in _partitions_desc(w, w)))


def multiplicity(lam: Iterable[int], j: int) -> int:
    if j < 1:
        raise ValueError("j must be positive")
    return sum(1 for a in lam if a == j)


def z_value(lam: Iterable[int]) -> int:
    """Order of the centralizer of a permutation of cycle type ``lam``."""
    z = 1
    for j, m in Counter(lam).items():
        z *= j**m * factorial(m)
    return z


def sum_partitions(parts: Iterable[Iterable[int]]) -> Partition:
    """Multiset union of the parts of several partitions."""
    merged: List[int] = []
    for lam in parts:
        merged.extend(lam)
    return Partition.from_parts(merged)


def beta_numbers(lam: Partition, count: int | None = None) -> List[int]:
    """First-column hook lengths of ``lam`` padded to ``count`` beads."""
    k = len(lam) if count is None else count
    if k < len(lam):
        raise ValueError("too few beads for the partition")
    padded = list(lam) + [0] * (k - len(lam))
    return [padded[i] + (k - 1 - i) for i in range(k)]


def from_beta_numbers(beta: Iterable[int]) -> Partition:
    b = sorted(beta, reverse=True)
    k = len(b)
    return Partition(x for x in (b[i] - (k - 1 - i) for i in range(k)) if x > 0)


def ell_core(lam: Iterable[int], ell: int) -> Partition:
    """The ``ell``-core of ``lam``, via the abacus with ``ell`` runners."""
    if ell < 2:
        raise ValueError("ell must be at least 2")
    lam = as_partition(lam)
    if not lam:
        return lam
    beads = Counter(b % ell for b in beta_numbers(lam))
    pushed = [r + ell * i for r, c in beads.items() for i in range(c)]
    return from_beta_numbers(pushed)


def ell_weight(lam: Iterable[int], ell: int) -> int:
    lam = as_partition(lam)
    return (lam.size - ell_core(lam, ell).size) // ell


def is_ell_singular(lam: Iterable[int], ell: int) -> bool:
    if ell < 2:
        raise ValueError("ell must be at least 2")
    return any(a % ell == 0 for a in lam)


def count_tuples(b: int, a: int) -> int:
    """Number of ``b``-tuples of partitions with total size ``a``.

    Coefficient of ``x**a`` in ``prod_i (1 - x**i)**(-b)``.
    """
    if a < 0 or b < 0:
        raise ValueError("arguments must be nonnegative")
    coeffs = [1] + [0] * a
    for i in range(1, a + 1):
        for _ in range(b):
            for d in range(i, a + 1):
                coeffs[d] += coeffs[d - i]
    return coeffs[a]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def log_p(n: int, p: int) -> int:
    """Exponent ``i`` with ``n == p**i``; ``n`` must be a power of ``p``."""
    i = 0
    while n % p == 0:
        n //= p
        i += 1
    if n != 1:
        raise ValueError(f"{n * p**i} is not a power of {p}")
    return i


@lru_cache(maxsize=None)
def power_partitions(w: int, p: int) -> Tuple[Partition, ...]:
    """Partitions of ``w`` all of whose parts are powers of ``p`` (including 1)."""
    _require_prime(p)
    return tuple(lam for lam in enumerate_partitions(w) if all(is_power_of(a, p) for a in lam))


@lru_cache(maxsize=None)
def class_regular_partitions(w: int, p: int) -> Tuple[Partition, ...]:
    """Partitions of ``w`` with every part coprime to ``p``."""
    _require_prime(p)
    return tuple(lam for lam in enumerate_partitions(w) if all(a % p for a in lam))


def _coprime_decompose(n: int, p: int) -> Tuple[int, int]:
    """Write ``n = j * p**e`` with ``j`` coprime to ``p``; return ``(j, e)``."""
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return n, e


def block_class(lam: Iterable[int], p: int) -> Partition:
    """The ``p``-class regular partition recording the cycle type of the ``p'``-part."""
    _require_prime(p)
    mult: Dict[int, int] = defaultdict(int)
    for a in lam:
        j, e = _coprime_decompose(a, p)
        mult[j] += p**e
    return Partition.from_multiplicities(mult)


def iota_split(lam: Iterable[int], p: int) -> Dict[int, Partition]:
    """Split ``lam`` into ``p``-power partitions indexed by the coprime factor of each part.

    Part ``j * p**n`` of ``lam`` contributes a part ``p**n`` to the component at ``j``.
    Keys are in increasing order.
    """
    _require_prime(p)
    comps: Dict[int, List[int]] = defaultdict(list)
    for a in lam:
        j, e = _coprime_decompose(a, p)
        comps[j].append(p**e)
    return {j: Partition.from_parts(comps[j]) for j in sorted(comps)}


def iota_join(components: Mapping[int, Iterable[int]], p: int) -> Partition:
    """Inverse of :func:`iota_split`."""
    parts: List[int] = []
    for j, mu in components.items():
        parts.extend(j * a for a in mu)
    return Partition.from_parts(parts)


def _check_power(lam: Partition, p: int) -> None:
    for a in lam:
        if not is_power_of(a, p):
            raise ValueError(f"{lam} is not a {p}-power partition")


def power_multiplicities(lam: Iterable[int], p: int) -> Dict[int, int]:
    """``{i: number of parts equal to p**i}`` for a ``p``-power partition."""
    lam = as_partition(lam)
    _check_power(lam, p)
    out: Dict[int, int] = defaultdict(int)
    for a in lam:
        out[log_p(a, p)] += 1
    return dict(out)


def truncate_below_r(lam: Iterable[int], p: int, r: int) -> Partition:
    """Keep the parts smaller than ``p**r``."""
    lam = as_partition(lam)
    _check_power(lam, p)
    return Partition(a for a in lam if a < p**r)


def truncate_at_least_r(lam: Iterable[int], p: int, r: int) -> Partition:
    """Parts of size at least ``p**r``, each divided by ``p**r``."""
    lam = as_partition(lam)
    _check_power(lam, p)
    q = p**r
    return Partition(a // q for a in lam if a >= q)


def bar(lam: Iterable[int], p: int, r: int) -> Partition:
    """Split every part of size at least ``p**r`` into parts of size exactly ``p**r``."""
    lam = as_partition(lam)
    _check_power(lam, p)
    q = p**r
    parts: List[int] = []
    for a in lam:
        if a >= q:
            parts.extend([q] * (a // q))
        else:
            parts.append(a)
    return Partition.from_parts(parts)

"""Closed-form arithmetic invariants of partitions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial, gcd
from typing import Dict, Iterable, NamedTuple

from .partitions import as_partition, is_prime, power_multiplicities


@dataclass(frozen=True)
class PrimePower:
    p: int
    r: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.r < 0:
            raise ValueError("exponent must be nonnegative")

    @property
    def value(self) -> int:
        return self.p**self.r


class ExponentTriple(NamedTuple):
    e: int
    f: int
    k: int


def v_p(k: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if k == 0:
        raise ValueError("valuation of 0 is infinite")
    k = abs(k)
    e = 0
    while k % p == 0:
        k //= p
        e += 1
    return e


def d_p(k: int, p: int) -> int:
    """Valuation of ``k!`` at ``p`` (Legendre's formula)."""
    total, q = 0, p
    while q <= k:
        total += k // q
        q *= p
    return total


def factorize(n: int) -> Dict[int, int]:
    """Prime factorisation by trial division."""
    if n < 1:
        raise ValueError("can only factorise positive integers")
    out: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def pi_part(k: int, primes: Iterable[int]) -> int:
    """Largest divisor of ``k`` whose prime factors all lie in ``primes``."""
    out = 1
    for p in primes:
        while k % p == 0:
            k //= p
            out *= p
    return out


def c_pr(lam: Iterable[int], p: int, r: int) -> int:
    total = 0
    for j, m in Counter(lam).items():
        vj = v_p(j, p)
        if vj < r:
            total += (r - vj) * m + d_p(m, p)
    return total


def theta(lam: Iterable[int], ell: int) -> int:
    """Product over prime powers ``p**r`` exactly dividing ``ell`` of ``p**c_pr``.

    For ``ell == 0`` this is 0, except for the empty partition, where it is 1
    (the value of the empty product, matching ``0**0``).
    """
    lam = as_partition(lam)
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if ell == 0:
        return 1 if not lam else 0
    out = 1
    for p, r in factorize(ell).items():
        out *= p ** c_pr(lam, p, r)
    return out


def r_ell(lam: Iterable[int], ell: int) -> int:
    if ell < 1:
        raise ValueError("ell must be positive")
    out = 1
    for k, m in Counter(lam).items():
        q = m // ell
        if q == 0:
            continue
        cof = ell // gcd(ell, k)
        out *= cof**q * pi_part(factorial(q), factorize(cof))
    return out


def exponents(lam: Iterable[int], p: int, r: int) -> ExponentTriple:
    """Split of ``c_pr`` for a ``p``-power partition into factorial and length parts."""
    n = power_multiplicities(as_partition(lam), p)
    e = sum(d_p(n.get(i, 0), p) for i in range(r))
    f = sum((r - i) * n.get(i, 0) for i in range(r))
    return ExponentTriple(e=e, f=f, k=f - e)

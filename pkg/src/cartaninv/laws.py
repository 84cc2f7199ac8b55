"""Randomised checks of the algebraic laws of the wreath operator."""

from __future__ import annotations

import random
import time
from math import prod
from typing import Callable, List

from .linalg import ExactMatrix, diagonal_invariant_factors, snf
from .report import VerificationReport, compare, run_check
from .wreath import pmaps, theta_diagonal_for, wreath_ss, x_matrix

MAX_DIM = 3
MAX_W = 4


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -2, hi: int = 2) -> ExactMatrix:
    return ExactMatrix([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def random_unimodular(rng: random.Random, n: int, steps: int = 8) -> ExactMatrix:
    """Product of random elementary integer row operations (and sign flips)."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n > 1 and rng.random() < 0.8:
            i, j = rng.sample(range(n), 2)
            c = rng.choice((-2, -1, 1, 2))
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        else:
            i = rng.randrange(n)
            m[i] = [-a for a in m[i]]
    return ExactMatrix(m)


def _dim(rng):
    return rng.randint(1, MAX_DIM)


def _w(rng):
    return rng.randint(0, MAX_W)


def multiplicative(rng: random.Random) -> bool:
    t, q, z, w = _dim(rng), _dim(rng), _dim(rng), _w(rng)
    a, b = random_matrix(rng, t, q), random_matrix(rng, q, z)
    return wreath_ss(a @ b, w) == wreath_ss(a, w) @ wreath_ss(b, w)


def preserves_identity(rng: random.Random) -> bool:
    n, w = _dim(rng), _w(rng)
    out = wreath_ss(ExactMatrix.identity(n), w)
    return out == ExactMatrix.identity(out.row_labels)


def integral(rng: random.Random) -> bool:
    a = random_matrix(rng, _dim(rng), _dim(rng), -4, 4)
    return wreath_ss(a, _w(rng)).is_integral()


def transports_equivalence(rng: random.Random) -> bool:
    t, q, w = _dim(rng), _dim(rng), _w(rng)
    a = random_matrix(rng, t, q)
    b = random_unimodular(rng, t) @ a @ random_unimodular(rng, q)
    return snf(wreath_ss(a, w)).factors == snf(wreath_ss(b, w)).factors


def diagonal_blocks(rng: random.Random) -> bool:
    """Diagonal input gives tensor products of scalar matrices, with the predicted invariants."""
    k, w = _dim(rng), _w(rng)
    diag = [rng.randint(0, 4) for _ in range(k)]
    out = wreath_ss(ExactMatrix.diagonal(diag), w)
    labels = pmaps(k, w)
    for i, lam in enumerate(labels):
        sizes = [sum(x) for x in lam]
        for j, mu in enumerate(labels):
            if [sum(x) for x in mu] != sizes:
                if out[i, j]:
                    return False
                continue
            want = prod(x_matrix(diag[t], sizes[t]).matrix.entry(lam[t], mu[t]) for t in range(k))
            if out[i, j] != want:
                return False
    return sorted(snf(out).factors) == diagonal_invariant_factors(theta_diagonal_for(diag, w))


LAWS: dict[str, Callable[[random.Random], bool]] = {
    "wreath-multiplicative": multiplicative,
    "wreath-identity": preserves_identity,
    "wreath-integral": integral,
    "wreath-equivalence": transports_equivalence,
    "wreath-diagonal-blocks": diagonal_blocks,
}


def law_reports(trials: int = 50, seed: int = 0) -> List[VerificationReport]:
    """One report per law; ``actual`` counts the failing trials."""
    reports = []
    for offset, (name, law) in enumerate(LAWS.items()):
        params = {"trials": trials, "seed": seed}

        def body(name=name, law=law, offset=offset):
            started = time.perf_counter()
            rng = random.Random(seed * 1000 + offset)
            failures = [i for i in range(trials) if not law(rng)]
            detail = f"failing trials {failures[:10]}" if failures else ""
            return compare(name, params, [0], [len(failures)], started, detail)

        reports.append(run_check(name, params, body))
    return reports

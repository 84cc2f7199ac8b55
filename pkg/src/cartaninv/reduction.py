"""Reduction of the scalar wreath matrices to p-power partitions.

For a prime ``p``, an exponent ``r`` and a degree ``w`` everything here lives
on the set of partitions of ``w`` whose parts are powers of ``p``.  The map
counting matrix ``N`` (complete homogeneous characters evaluated on p-power
classes) conjugates the diagonal ``b = p**(r * length)`` into ``Y``, and a
chain of exact factorizations exposes the p-adic invariant factors of ``Y``.

All matrices are exact; every identity below is checked with ``==``.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from fractions import Fraction
from math import factorial, prod
from typing import Dict, List, Tuple

from .arith import c_pr, exponents
from .linalg import (
    ExactMatrix,
    SingularMatrixError,
    determinant,
    invert,
    is_p_integral,
    p_local_unimodular,
    p_part_of_snf,
    p_row_equivalent,
    valuation,
)
from .partitions import (
    Partition,
    _require_prime,
    bar,
    block_class,
    class_regular_partitions,
    enumerate_partitions,
    iota_split,
    power_multiplicities,
    power_partitions,
    truncate_at_least_r,
    z_value,
)
from .report import FAIL, VerificationReport, compare, run_check
from .symfun import transition_matrix

INF = float("inf")


# -- matrices on Par(w) and Pow(w) ------------------------------------------------


def map_count_matrix(w: int) -> ExactMatrix:
    """Complete homogeneous characters of degree ``w`` on every class."""
    return transition_matrix("h", "pt", w)


@lru_cache(maxsize=None)
def n_matrix(w: int, p: int) -> ExactMatrix:
    """Restriction of :func:`map_count_matrix` to p-power rows and columns."""
    _require_prime(p)
    pw = power_partitions(w, p)
    return map_count_matrix(w).sub_by_labels(pw, pw)


def truncated_m(w: int, p: int) -> ExactMatrix:
    """Keep entries whose row and column share a block class; zero the rest."""
    _require_prime(p)
    m = map_count_matrix(w)
    labels = m.row_labels
    classes = [block_class(lam, p) for lam in labels]
    rows = [[x if classes[i] == classes[j] else 0 for j, x in enumerate(row)]
            for i, row in enumerate(m.rows)]
    return ExactMatrix(rows, labels, labels)


def tensor_l(w: int, p: int) -> ExactMatrix:
    """Block-diagonal matrix whose blocks are tensor products of p-power map counts."""
    _require_prime(p)
    labels = enumerate_partitions(w)
    classes = [block_class(lam, p) for lam in labels]
    splits = [iota_split(lam, p) for lam in labels]
    rows = []
    for i, lam in enumerate(labels):
        row = []
        for j, mu in enumerate(labels):
            if classes[i] != classes[j]:
                row.append(0)
                continue
            val = 1
            for key, comp in splits[i].items():
                other = splits[j][key]
                val *= n_matrix(comp.size, p).entry(comp, other)
                if not val:
                    break
            row.append(val)
        rows.append(row)
    return ExactMatrix(rows, labels, labels)


# -- context ------------------------------------------------------------------------


def _diag(values: Dict[Partition, object], labels) -> ExactMatrix:
    return ExactMatrix.diagonal([values[lam] for lam in labels], labels)


@dataclass(frozen=True)
class ReductionContext:
    p: int
    r: int
    w: int
    labels: Tuple[Partition, ...]
    block_of: Dict[Partition, Partition] = field(repr=False)
    diagonals: Dict[str, Dict[Partition, int]] = field(repr=False)

    def diag(self, name: str) -> ExactMatrix:
        return _diag(self.diagonals[name], self.labels)

    def k(self, lam: Partition) -> int:
        return exponents(lam, self.p, self.r).k

    def blocks(self) -> List[Tuple[Partition, List[Partition]]]:
        """Index classes sharing a split shape, ordered by their representative."""
        groups: Dict[Partition, List[Partition]] = {}
        for lam in self.labels:
            groups.setdefault(self.block_of[lam], []).append(lam)
        return [(kappa, groups[kappa]) for kappa in sorted(groups)]


def build_context(p: int, r: int, w: int) -> ReductionContext:
    _require_prime(p)
    if r < 0 or w < 0:
        raise ValueError("r and w must be nonnegative")
    labels = power_partitions(w, p)
    names = ("b", "z", "x", "y", "x_lo", "x_hi", "y_lo", "y_hi", "y_tilde", "b_lo")
    diagonals: Dict[str, Dict[Partition, int]] = {name: {} for name in names}
    for lam in labels:
        n = power_multiplicities(lam, p)
        lo = [i for i in n if i < r]
        hi = [i for i in n if i >= r]
        vals = {
            "b": p ** (r * len(lam)),
            "x": prod(factorial(n[i]) for i in n),
            "y": prod(p ** (i * n[i]) for i in n),
            "x_lo": prod(factorial(n[i]) for i in lo),
            "x_hi": prod(factorial(n[i]) for i in hi),
            "y_lo": prod(p ** (i * n[i]) for i in lo),
            "y_hi": prod(p ** ((i - r) * n[i]) for i in hi),
            "y_tilde": prod(p ** (r * n[i]) for i in hi),
            "b_lo": p ** (r * sum(n[i] for i in lo)),
        }
        vals["z"] = z_value(lam)
        for name, v in vals.items():
            diagonals[name][lam] = v
    block_of = {lam: bar(lam, p, r) for lam in labels}
    return ReductionContext(p, r, w, labels, block_of, diagonals)


def diagonal_identities(ctx: ReductionContext) -> List[str]:
    """Names of the diagonal factorisation identities that fail (empty when all hold)."""
    d = ctx.diagonals
    bad = []
    for lam in ctx.labels:
        if d["x"][lam] != d["x_lo"][lam] * d["x_hi"][lam]:
            bad.append(f"x split at {lam}")
        if d["y"][lam] != d["y_lo"][lam] * d["y_hi"][lam] * d["y_tilde"][lam]:
            bad.append(f"y split at {lam}")
        if d["z"][lam] != d["x"][lam] * d["y"][lam]:
            bad.append(f"z = xy at {lam}")
        if d["b_lo"][lam] * d["y_tilde"][lam] != d["b"][lam]:
            bad.append(f"b split at {lam}")
    return bad


# -- the factorisation chain --------------------------------------------------------


def block_matrix(ctx: ReductionContext) -> ExactMatrix:
    """Map counts between the high parts (scaled down) of indices in the same block."""
    labels = ctx.labels
    hi = {lam: truncate_at_least_r(lam, ctx.p, ctx.r) for lam in labels}
    rows = []
    for lam in labels:
        row = []
        for mu in labels:
            if ctx.block_of[lam] != ctx.block_of[mu]:
                row.append(0)
            else:
                a, b = hi[lam], hi[mu]
                row.append(n_matrix(a.size, ctx.p).entry(a, b))
        rows.append(row)
    return ExactMatrix(rows, labels, labels)


def chain(ctx: ReductionContext) -> Dict[str, ExactMatrix]:
    """All intermediate matrices of the reduction, keyed by short names.

    ``Y1`` and ``Y2`` are the two transformed versions of ``Y``.
    """
    n = n_matrix(ctx.w, ctx.p)
    b, z = ctx.diag("b"), ctx.diag("z")
    x_lo, x_hi, y_lo, y_hi = ctx.diag("x_lo"), ctx.diag("x_hi"), ctx.diag("y_lo"), ctx.diag("y_hi")
    b_lo = ctx.diag("b_lo")
    c = block_matrix(ctx)
    c_inv = invert(c)
    x_lo_inv = invert(x_lo)
    a = n @ c_inv
    u = x_lo_inv @ a
    s = invert(c.T) @ x_hi @ y_hi @ c_inv
    s_inv = invert(s)
    v = s_inv @ u.T @ s
    y = n @ b @ invert(n)
    y1 = n @ b @ invert(z) @ n.T
    y2 = x_lo @ u @ b_lo @ x_lo_inv @ invert(y_lo) @ v @ x_lo
    return {"N": n, "C": c, "A": a, "U": u, "S": s, "V": v, "Y": y, "Y1": y1, "Y2": y2}


def chain_failures(ctx: ReductionContext, mats: Dict[str, ExactMatrix]) -> List[str]:
    bad = diagonal_identities(ctx)
    if mats["A"] @ mats["C"] != mats["N"]:
        bad.append("N != A C")
    if ctx.diag("x_lo") @ mats["U"] != mats["A"]:
        bad.append("A != x_lo U")
    if mats["Y1"] @ mats["S"] != mats["Y2"]:
        bad.append("Y1 S != Y2")
    if not p_local_unimodular(mats["S"], ctx.p):
        bad.append("S not p-locally unimodular")
    c = mats["C"]
    for i, lam in enumerate(ctx.labels):
        for j, mu in enumerate(ctx.labels):
            if c[i, j] and ctx.block_of[lam] != ctx.block_of[mu]:
                bad.append(f"C not block diagonal at {lam},{mu}")
    for name in ("b_lo", "x_lo", "y_lo"):
        d = ctx.diag(name)
        if d @ c != c @ d:
            bad.append(f"{name} does not commute with C")
    return bad


# -- checks ------------------------------------------------------------------------


def _params(ctx: ReductionContext) -> Dict[str, int]:
    return {"p": ctx.p, "r": ctx.r, "w": ctx.w}


def _violations_report(check: str, ctx: ReductionContext, body) -> VerificationReport:
    def run():
        started = time.perf_counter()
        bad = body()
        return compare(check, _params(ctx), [0], [len(bad)], started, "; ".join(bad[:5]))

    return run_check(check, _params(ctx), run)


def u_violations(ctx: ReductionContext, u: ExactMatrix) -> List[str]:
    p = ctx.p
    bad = []
    for i, lam in enumerate(ctx.labels):
        for j, mu in enumerate(ctx.labels):
            x = u[i, j]
            if not is_p_integral(x, p):
                bad.append(f"U[{lam},{mu}] not p-integral")
            if ctx.block_of[lam] == ctx.block_of[mu]:
                if x != (1 if i == j else 0):
                    bad.append(f"U[{lam},{mu}] = {x} inside a block")
            elif not valuation(x, p) > ctx.k(lam) - ctx.k(mu):
                bad.append(f"U[{lam},{mu}] valuation too small")
    return bad


def check_u_valuations(ctx: ReductionContext) -> VerificationReport:
    return _violations_report("u-valuations", ctx, lambda: u_violations(ctx, chain(ctx)["U"]))


def _v2(x, p: int):
    """Doubled valuation, so half-integer bounds compare as integers."""
    v = valuation(x, p)
    return v if v == INF else 2 * v


def invariant_factor_violations(ctx: ReductionContext, mats: Dict[str, ExactMatrix]) -> List[str]:
    p = ctx.p
    labels = ctx.labels
    d = ctx.diagonals
    left = {lam: d["x_lo"][lam] for lam in labels}
    right = left
    middle = {lam: Fraction(d["b_lo"][lam], d["x_lo"][lam] * d["y_lo"][lam]) for lam in labels}
    alpha2 = {lam: ctx.k(lam) for lam in labels}
    beta2 = {lam: -ctx.k(lam) for lam in labels}
    rho = {lam: valuation(left[lam], p) + valuation(middle[lam], p) + valuation(right[lam], p)
           for lam in labels}
    bad = []
    for lam in labels:
        if rho[lam] != c_pr(lam, p, ctx.r):
            bad.append(f"rho mismatch at {lam}")
        if _v2(middle[lam], p) != alpha2[lam] - beta2[lam]:
            bad.append(f"middle valuation at {lam}")
    u, v = mats["U"], mats["V"]
    for i, lam in enumerate(labels):
        for j, mu in enumerate(labels):
            delta = 1 if i == j else 0
            if not _v2(u[i, j] - delta, p) > alpha2[lam] - alpha2[mu]:
                bad.append(f"left factor bound at {lam},{mu}")
            if not _v2(v[i, j] - delta, p) > beta2[lam] - beta2[mu]:
                bad.append(f"right factor bound at {lam},{mu}")
            if rho[lam] >= rho[mu]:
                if alpha2[lam] - alpha2[mu] < 2 * (valuation(left[mu], p) - valuation(left[lam], p)):
                    bad.append(f"left monotonicity at {lam},{mu}")
                if beta2[mu] - beta2[lam] < 2 * (valuation(right[mu], p) - valuation(right[lam], p)):
                    bad.append(f"right monotonicity at {lam},{mu}")
    return bad


def check_invariant_factor_hypotheses(ctx: ReductionContext) -> VerificationReport:
    return _violations_report("invariant-factor-hypotheses", ctx,
                              lambda: invariant_factor_violations(ctx, chain(ctx)))


def check_chain(ctx: ReductionContext) -> VerificationReport:
    return _violations_report("factorisation-chain", ctx, lambda: chain_failures(ctx, chain(ctx)))


def row_equivalence_failures(ctx: ReductionContext) -> List[str]:
    p, w = ctx.p, ctx.w
    m = map_count_matrix(w)
    n = n_matrix(w, p)
    bad = []
    if not p_row_equivalent(m, truncated_m(w, p), p):
        bad.append("M vs truncation")
    pw = power_partitions(w, p)
    m_cols = m.sub_by_labels(m.row_labels, pw)
    weights = m_cols @ invert(n)
    if not all(is_p_integral(x, p) for row in weights.rows for x in row):
        bad.append("power columns not in the row space of N")
    if not p_row_equivalent(m, tensor_l(w, p), p):
        bad.append("M vs tensor model")
    if determinant(m) != determinant(tensor_l(w, p)):
        bad.append("det M != det L")
    if not p_row_equivalent(n, invert(n.T) @ ctx.diag("z"), p):
        bad.append("N vs dual")
    return bad


def verify_row_equivalences(ctx: ReductionContext) -> VerificationReport:
    return _violations_report("row-equivalences", ctx, lambda: row_equivalence_failures(ctx))


def verify_power_reduction(p: int, r: int, w: int) -> VerificationReport:
    params = {"p": p, "r": r, "w": w}

    def body():
        started = time.perf_counter()
        ctx = build_context(p, r, w)
        y = chain(ctx)["Y"]
        expected = [c_pr(lam, p, r) for lam in ctx.labels]
        if not all(is_p_integral(x, p) for row in y.rows for x in row):
            report = compare("power-reduction", params, expected, [], started,
                             "Y has an entry with denominator divisible by p")
            report.status = FAIL
            return report
        return compare("power-reduction", params, expected, p_part_of_snf(y, p), started)

    return run_check("power-reduction", params, body)


# -- assembling Par(w) from Pow ------------------------------------------------------


def glued_valuations(p: int, r: int, w: int) -> List[int]:
    """p-parts predicted by tensoring the p-power pieces over every block class."""
    out: List[int] = []
    for nu in class_regular_partitions(w, p):
        pieces = [p_part_of_snf(chain(build_context(p, r, m))["Y"], p)
                  for m in Counter(nu).values()]
        out.extend(sum(combo) for combo in product(*pieces))
    return sorted(out)


def verify_glue(p: int, r: int, w: int) -> VerificationReport:
    """Whole-degree conjugated diagonal against the tensor assembly and the closed form."""
    params = {"p": p, "r": r, "w": w}

    def body():
        started = time.perf_counter()
        m = map_count_matrix(w)
        a = ExactMatrix.diagonal([p ** (r * len(lam)) for lam in m.row_labels], m.row_labels)
        actual = p_part_of_snf(m @ a @ invert(m), p)
        glued = glued_valuations(p, r, w)
        closed = sorted(c_pr(lam, p, r) for lam in enumerate_partitions(w))
        detail = "" if glued == closed else f"closed form {closed}"
        report = compare("power-glue", params, glued, actual, started, detail)
        if detail:
            report.status = FAIL
        return report

    return run_check("power-glue", params, body)


def reduction_suite(p: int, r: int, w: int) -> List[VerificationReport]:
    """Every reduction check for one parameter triple."""
    params = {"p": p, "r": r, "w": w}
    try:
        ctx = build_context(p, r, w)
    except (ValueError, SingularMatrixError) as exc:
        error = exc

        def reraise():
            raise error

        return [run_check("reduction-context", params, reraise)]
    return [
        verify_power_reduction(p, r, w),
        check_chain(ctx),
        check_u_valuations(ctx),
        check_invariant_factor_hypotheses(ctx),
        verify_row_equivalences(ctx),
        verify_glue(p, r, w),
    ]

"""Formal branches of V at nonsingular points and their order sequences.

A branch is found by lifting coefficient by coefficient.  The unknown is the
vector x(t) = sum_n a_n t^n of coordinate series; besides the power-sum
equations F_k(x) = 0 it satisfies a chart condition L0(x) = 1 and a parameter
condition L1(x) = L1(center) + t for two linear forms L0, L1.  At each degree
n the new coefficient a_n solves one linear system whose matrix (Jacobian
rows stacked with L0 and L1) is fixed, so it is inverted once.

Powers are tracked incrementally: [t^n] x_i^e is accumulated from the
lower powers, which avoids dividing by integers that vanish mod p.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .ff import FieldCtx, PowerSeries, fq_make
from .variety import DiagonalSystem, ProjPoint, is_solution, jacobian_rank, special_point_omega

log = logging.getLogger(__name__)


class PrecisionError(RuntimeError):
    """The requested data does not appear below the precision cap."""


def _ops(ctx: FieldCtx):
    if ctx.k == 1:
        p = ctx.p
        return (lambda a, b: (a + b) % p), (lambda a, b: a * b % p)
    return ctx.add, ctx.mul


def lift_series(
    ctx: FieldCtx,
    exponents: Sequence[int],
    center: Sequence[int],
    L0: Sequence[int],
    L1: Sequence[int],
    N: int,
) -> list[list[int]]:
    """Coefficients a[n][i] of the branch through center, for n < N.

    center must satisfy the equations and L0(center) = 1.
    """
    m = len(center)
    exps = list(exponents)
    if len(exps) != m - 2:
        raise ValueError("lifting needs exactly m-2 equations")
    add, mul = _ops(ctx)
    emax = max(exps)
    # xi_pow[e][i] = center_i^e
    xi_pow = [[1] * m]
    for _ in range(emax):
        xi_pow.append([mul(a, b) for a, b in zip(xi_pow[-1], center)])
    rows = [[ctx.smul(k, xi_pow[k - 1][i]) for i in range(m)] for k in exps]
    rows += [list(L0), list(L1)]
    try:
        Ainv = linalg.inverse(ctx, rows)
    except ArithmeticError:
        raise ArithmeticError("branch system is singular at this center") from None
    if linalg.matvec(ctx, [list(L0)], list(center))[0] != 1:
        raise ValueError("center is not normalized by the chart form")

    a = [list(center)]
    # pw[e][i] is the list of coefficients of x_i^e computed so far (e >= 1)
    pw = [None] + [[[xi_pow[e][i]] for i in range(m)] for e in range(1, emax + 1)]
    for n in range(1, N):
        resid = [[0] * m for _ in range(emax + 1)]
        for i in range(m):
            for e in range(2, emax + 1):
                prev = pw[e - 1][i]
                acc = 0
                # a_n is still unknown: j runs over 1..n-1, plus the j = 0 term
                # using the already-residual coefficient of x^(e-1) at degree n
                for j in range(1, n):
                    if a[j][i]:
                        acc = add(acc, mul(a[j][i], prev[n - j]))
                acc = add(acc, mul(center[i], resid[e - 1][i]))
                resid[e][i] = acc
        rhs = []
        for k in exps:
            s = 0
            for i in range(m):
                s = add(s, resid[k][i])
            rhs.append(ctx.neg(s))
        rhs += [0, 1 if n == 1 else 0]
        an = linalg.matvec(ctx, Ainv, rhs)
        a.append(an)
        pw[1] = [pw[1][i] + [an[i]] for i in range(m)]
        for e in range(2, emax + 1):
            for i in range(m):
                fix = mul(ctx.smul(e, xi_pow[e - 1][i]), an[i])
                pw[e][i].append(add(resid[e][i], fix))
    return a


@dataclass
class Branch:
    ctx: FieldCtx
    system: DiagonalSystem
    center: ProjPoint
    series: list[PowerSeries]
    chart: tuple[int, ...]
    param: tuple[int, ...]
    param_index: int | None
    precision: int
    coeffs: list[list[int]] = field(repr=False, default_factory=list)

    @property
    def m(self) -> int:
        return len(self.series)

    def residuals(self) -> list[PowerSeries]:
        out = []
        for k in self.system.exponents:
            acc = PowerSeries(self.ctx, [], self.precision)
            for s in self.series:
                acc = acc + s**k
            out.append(acc)
        return out

    def residual_free(self) -> bool:
        return all(r.valuation() is None for r in self.residuals())


def _series_from(ctx: FieldCtx, a: list[list[int]], N: int) -> list[PowerSeries]:
    m = len(a[0])
    return [PowerSeries(ctx, [a[n][i] for n in range(N)], N) for i in range(m)]


def tangent_direction(S: DiagonalSystem, P: ProjPoint, chart: int) -> list[int]:
    ctx = S.ctx
    rows = [[ctx.smul(k, ctx.pow(x, k - 1)) for x in P] for k in S.exponents]
    e = [0] * S.m
    e[chart] = 1
    ker = linalg.nullspace(ctx, rows + [e], S.m)
    if len(ker) != 1:
        raise ArithmeticError(f"{P} is singular on the system")
    return ker[0]


def branch_expand(S: DiagonalSystem, P: ProjPoint, N: int) -> Branch:
    """The branch at P in the chart of its leading coordinate.

    The parameter is x_{i*} - P_{i*}, with i* the smallest index where the
    tangent direction is nonzero.
    """
    if not is_solution(S, P):
        raise ValueError(f"{P} is not on the system")
    if jacobian_rank(S, P) != S.m - 2:
        raise ArithmeticError(f"{P} is a singular point")
    ctx = S.ctx
    h = next(i for i, x in enumerate(P) if x)
    v = tangent_direction(S, P, h)
    istar = next(i for i, x in enumerate(v) if x)
    L0 = tuple(1 if i == h else 0 for i in range(S.m))
    L1 = tuple(1 if i == istar else 0 for i in range(S.m))
    a = lift_series(ctx, S.exponents, P.coords, L0, L1, N)
    return Branch(ctx, S, P, _series_from(ctx, a, N), L0, L1, istar, N, a)


def relift(B: Branch, N: int) -> Branch:
    a = lift_series(B.ctx, B.system.exponents, B.coeffs[0], B.chart, B.param, N)
    return Branch(B.ctx, B.system, B.center, _series_from(B.ctx, a, N), B.chart, B.param, B.param_index, N, a)


@dataclass(frozen=True)
class OrderSequence:
    orders: tuple[int, ...]
    precision: int
    complete: bool = True

    @property
    def last(self) -> int:
        return self.orders[-1]


def _pivots(B: Branch) -> tuple[list[list[int]], list[int]]:
    rows = [list(s.coeffs) + [0] * (B.precision - len(s.coeffs)) for s in B.series]
    return linalg.echelon(B.ctx, rows)


def order_sequence(B: Branch, cap: int | None = None, strict: bool = False) -> tuple[OrderSequence, Branch]:
    """Orders of the branch (pivot columns of its coefficient matrix).

    Re-lifts with doubled precision until m-1 pivots appear with the last one
    at most N - p, up to cap (default 2p^2).  If the cap is reached with fewer
    than m-1 pivots, the branch satisfies extra linear relations to that
    precision; the pivots found are returned with complete=False (or
    PrecisionError is raised when strict).
    """
    p = B.ctx.p
    cap = cap or 2 * p * p
    while True:
        _, piv = _pivots(B)
        if len(piv) >= B.m - 1 and piv[B.m - 2] <= B.precision - p:
            return OrderSequence(tuple(piv[: B.m - 1]), B.precision), B
        if B.precision >= cap:
            if strict or len(piv) >= B.m - 1:
                raise PrecisionError(f"order sequence not determined below precision {cap}")
            log.warning(
                "only %d of %d orders below t^%d: the branch satisfies %d extra linear relations",
                len(piv), B.m - 1, cap, B.m - 1 - len(piv),
            )
            return OrderSequence(tuple(piv), B.precision, complete=False), B
        B = relift(B, min(2 * B.precision, cap))


@dataclass(frozen=True)
class HermitianContact:
    """Contact order with the Hermitian tangent hyperplane; a lower bound when not exact."""

    order: int
    exact: bool


def hermitian_tangent_order(B: Branch, cap: int | None = None) -> HermitianContact:
    """ord_t of sum_i center_i^p x_i(t): contact of the branch with the Hermitian tangent hyperplane.

    If the series vanishes up to the precision cap, the cap is returned as a
    lower bound (exact=False).
    """
    ctx = B.ctx
    cap = cap or 2 * ctx.p * ctx.p
    while True:
        acc = PowerSeries(ctx, [], B.precision)
        for xi, s in zip(B.center, B.series):
            acc = acc + s.scale(ctx.frobenius(xi))
        v = acc.valuation()
        if v is not None and v <= B.precision - ctx.p:
            return HermitianContact(v, True)
        if B.precision >= cap:
            if v is not None:
                return HermitianContact(v, True)
            return HermitianContact(B.precision, False)
        B = relift(B, min(2 * B.precision, cap))


@dataclass(frozen=True)
class OsculatingReport:
    contained: bool
    status: str  # "contained", "not contained" or "inconclusive"
    hyperplanes: tuple[tuple[int, ...], ...]


def osculating_hyperplanes(B: Branch, seq: OrderSequence) -> list[list[int]]:
    """Coefficient vectors c with ord(c . x(t)) >= last order (includes the all-ones relation)."""
    ctx = B.ctx
    cols = [[s[n] for s in B.series] for n in range(seq.last)]
    return linalg.nullspace(ctx, cols, B.m)


def frobenius_osculating_check(B: Branch, special: bool = False, seq: OrderSequence | None = None) -> OsculatingReport:
    """Does the osculating hyperplane at the center contain its Frobenius image?

    special marks centers on short orbits; a failure there is reported as
    inconclusive rather than as a counterexample.
    """
    if seq is None:
        seq, B = order_sequence(B)
    ctx = B.ctx
    phi = [ctx.frobenius(x) for x in B.center]
    hyps = osculating_hyperplanes(B, seq)
    ok = all(linalg.matvec(ctx, [h], phi)[0] == 0 for h in hyps)
    status = "contained" if ok else ("inconclusive" if special else "not contained")
    return OsculatingReport(ok, status, tuple(tuple(h) for h in hyps))


# --- the eigenframe of the stabilizer of a rational point (m = p - 1) ----------------


def smallest_primitive_root(p: int) -> int:
    return fq_make(p).primitive_element


def eigenframe_matrix(p: int) -> list[list[int]]:
    """M with X = M Y, M[j][i] = eta^(j*i) (0-based)."""
    eta = smallest_primitive_root(p)
    return [[pow(eta, j * i, p) for i in range(p - 1)] for j in range(p - 1)]


def rational_center(p: int) -> ProjPoint:
    """(1 : eta^(p-2) : ... : eta), the point with Y-coordinates (0 : ... : 0 : 1)."""
    ctx = fq_make(p)
    eta = smallest_primitive_root(p)
    return ProjPoint.of(ctx, [pow(eta, (-j) % (p - 1), p) for j in range(p - 1)])


@dataclass
class EigenBranch:
    p: int
    ybranch: list[PowerSeries]
    xbranch: Branch

    def alpha(self, k: int, i: int) -> int:
        """Coefficient of t^i in y_k (k is 1-based)."""
        return self.ybranch[k - 1][i]

    def leading(self, k: int) -> tuple[int, int] | None:
        s = self.ybranch[k - 1]
        v = s.valuation()
        return None if v is None else (v, s[v])

    def nonzero_terms(self, k: int) -> list[tuple[int, int]]:
        s = self.ybranch[k - 1]
        return [(i, s[i]) for i in range(s.prec) if s[i]]


def eigenframe_branch(p: int, N: int | None = None) -> EigenBranch:
    """Branch of V (m = p-1) at the rational center, written in the Y-frame.

    Chart Y_{p-1} = 1, parameter Y_{p-2} = t.
    """
    m = p - 1
    ctx = fq_make(p)
    N = N or 3 * p
    S = DiagonalSystem.bring(ctx, m)
    M = eigenframe_matrix(p)
    Minv = linalg.inverse(ctx, M)
    center = [M[j][m - 1] for j in range(m)]
    L0, L1 = tuple(Minv[m - 1]), tuple(Minv[m - 2])
    a = lift_series(ctx, S.exponents, center, L0, L1, N)
    xb = Branch(ctx, S, ProjPoint.of(ctx, center), _series_from(ctx, a, N), L0, L1, None, N, a)
    ycoef = [linalg.matvec(ctx, Minv, a[n]) for n in range(N)]
    ys = [PowerSeries(ctx, [ycoef[n][i] for n in range(N)], N) for i in range(m)]
    return EigenBranch(p, ys, xb)


def transform_to_eigenframe(B: Branch) -> EigenBranch:
    """Re-express a branch at the rational center in the eigenframe (m = p-1)."""
    p = B.ctx.p
    if B.m != p - 1 or B.ctx.k != 1:
        raise ValueError("the eigenframe needs m = p-1 over F_p")
    if B.center != rational_center(p):
        raise ValueError("branch is not centered at the eigenframe center")
    return eigenframe_branch(p, B.precision)


def eigenframe_support_violations(E: EigenBranch) -> list[tuple[int, int]]:
    """(k, i) with alpha_{k,i} != 0 but i + k not divisible by p - 1 (2 <= k <= p-3)."""
    p = E.p
    bad = []
    for k in range(2, p - 2):
        for i, _ in E.nonzero_terms(k):
            if (i + k) % (p - 1):
                bad.append((k, i))
    return bad


def default_center(p: int, m: int) -> ProjPoint:
    """P_omega over F_p; for m = p-1 this is the eigenframe center's orbit-mate."""
    return special_point_omega(fq_make(p), m)


__all__ = [
    "Branch",
    "EigenBranch",
    "OrderSequence",
    "OsculatingReport",
    "HermitianContact",
    "PrecisionError",
    "branch_expand",
    "eigenframe_branch",
    "eigenframe_matrix",
    "eigenframe_support_violations",
    "frobenius_osculating_check",
    "hermitian_tangent_order",
    "lift_series",
    "order_sequence",
    "rational_center",
    "relift",
    "transform_to_eigenframe",
]

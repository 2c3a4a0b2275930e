"""Closed-form invariants of V, the plane quotient curve and point-count bounds."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .ff import FieldCtx, roots_of_unity
from .variety import DEFAULT_BUDGET, BudgetExceeded, ProjPoint


@dataclass(frozen=True)
class CurveInvariants:
    m: int
    degree: int
    genus: int
    ambient_dim: int


def degree(m: int) -> int:
    return math.factorial(m - 2)


def genus(m: int) -> int:
    """Genus of V from 2g - 2 = ((m-2)(m-3) - 4)(m-2)!/2."""
    if m < 5:
        raise ValueError("m >= 5")
    return ((m - 2) * (m - 3) - 4) * math.factorial(m - 2) // 4 + 1


def invariants(m: int) -> CurveInvariants:
    return CurveInvariants(m, degree(m), genus(m), m - 2)


def quotient_genus(m: int, l: int) -> int:
    """Genus of V modulo the subgroup fixing l coordinates (2 <= l <= m-2)."""
    if not 2 <= l <= m - 2:
        raise ValueError("need 2 <= l <= m-2")
    rhs = Fraction(((m - 2) * (m - 3) - 4 - (m - l) * (m - 1 - l)) * math.factorial(m - 2), 2 * math.factorial(m - l))
    g = (rhs + 2) / 2
    if g.denominator != 1:
        raise ArithmeticError(f"non-integral quotient genus {g} for m={m}, l={l}")
    return int(g)


# --- the plane quotient curve -------------------------------------------------


class TrivariatePoly:
    """Polynomial in x, y, z with coefficients in Z (mod=None) or F_p."""

    def __init__(self, terms: dict[tuple[int, int, int], int] | None = None, mod: int | None = None):
        self.mod = mod
        self.terms: dict[tuple[int, int, int], int] = {}
        for mon, c in (terms or {}).items():
            self._add_term(mon, c)

    def _add_term(self, mon, c):
        c = self.terms.get(mon, 0) + c
        if self.mod:
            c %= self.mod
        if c:
            self.terms[mon] = c
        else:
            self.terms.pop(mon, None)

    @classmethod
    def var(cls, idx: int, mod: int | None = None) -> "TrivariatePoly":
        mon = [0, 0, 0]
        mon[idx] = 1
        return cls({tuple(mon): 1}, mod)

    @classmethod
    def const(cls, c: int, mod: int | None = None) -> "TrivariatePoly":
        return cls({(0, 0, 0): c}, mod)

    def __add__(self, other: "TrivariatePoly") -> "TrivariatePoly":
        out = TrivariatePoly(self.terms, self.mod)
        for mon, c in other.terms.items():
            out._add_term(mon, c)
        return out

    def __neg__(self) -> "TrivariatePoly":
        return TrivariatePoly({mon: -c for mon, c in self.terms.items()}, self.mod)

    def __sub__(self, other: "TrivariatePoly") -> "TrivariatePoly":
        return self + (-other)

    def __mul__(self, other: "TrivariatePoly") -> "TrivariatePoly":
        out = TrivariatePoly(mod=self.mod)
        for (a, b, c), u in self.terms.items():
            for (d, e, f), v in other.terms.items():
                out._add_term((a + d, b + e, c + f), u * v)
        return out

    def __pow__(self, e: int) -> "TrivariatePoly":
        out = TrivariatePoly.const(1, self.mod)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, TrivariatePoly) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def is_homogeneous(self, deg: int) -> bool:
        return all(sum(mon) == deg for mon in self.terms)

    def eval(self, ctx: FieldCtx, x: int, y: int, z: int) -> int:
        acc = 0
        for (i, j, k), c in self.terms.items():
            t = ctx.mul(ctx.mul(ctx.pow(x, i), ctx.pow(y, j)), ctx.pow(z, k))
            acc = ctx.add(acc, ctx.mul(ctx.embed(c), t))
        return acc


def plane_quotient_poly(m: int, mod: int | None = None) -> TrivariatePoly:
    """G_{m-2}: the sum of all monomials of degree m-2 in x, y, z."""
    d = m - 2
    return TrivariatePoly({(i, j, d - i - j): 1 for i in range(d + 1) for j in range(d + 1 - i)}, mod)


def verify_plane_identity(m: int) -> bool:
    """G_{m-2}(x-y)(x-z)(y-z) == (x^m - z^m)(y - z) - (y^m - z^m)(x - z) over Z."""
    x, y, z = (TrivariatePoly.var(i) for i in range(3))
    lhs = plane_quotient_poly(m) * (x - y) * (x - z) * (y - z)
    rhs = (x**m - z**m) * (y - z) - (y**m - z**m) * (x - z)
    return lhs == rhs


def plane_point_count(ctx: FieldCtx, m: int, budget: int = DEFAULT_BUDGET) -> int:
    """Projective F_q-points of G_{m-2} = 0 by brute force over three charts."""
    q = ctx.q
    if q * q > budget:
        raise BudgetExceeded(f"plane scan needs {q * q} evaluations > budget {budget}")
    vf = ctx.vec
    d = m - 2
    xs = np.repeat(vf.arange(), q)
    ys = np.tile(vf.arange(), q)
    # chart z = 1: sum over i + j <= d of x^i y^j
    acc = np.zeros(q * q, dtype=np.int64)
    for i in range(d + 1):
        xi = vf.pow(xs, i)
        for j in range(d + 1 - i):
            acc = vf.add(acc, vf.mul(xi, vf.pow(ys, j)))
    count = int(np.count_nonzero(acc == 0))
    # chart z = 0, y = 1: sum over i <= d of x^i
    xa = vf.arange()
    acc1 = np.zeros(q, dtype=np.int64)
    for i in range(d + 1):
        acc1 = vf.add(acc1, vf.pow(xa, i))
    count += int(np.count_nonzero(acc1 == 0))
    # the point (1 : 0 : 0): only x^d survives, with coefficient 1
    count += int(plane_quotient_poly(m, ctx.p).eval(ctx, 1, 0, 0) == 0)
    return count


def plane_root_of_unity_points(ctx: FieldCtx, m: int) -> list[tuple[int, int, int]]:
    """(a : b : 1) with a^m = b^m = 1, a, b != 1 and a != b."""
    mu = [r for r in roots_of_unity(ctx, m) if r != 1]
    return [(a, b, 1) for a in mu for b in mu if a != b]


@dataclass(frozen=True)
class SVBound:
    value: int
    degenerate: bool


def sv_plane_classical(q: int, d: int, g: int) -> int:
    """floor(((2g - 2) + (q + 2) d) / 2): the r = 2 bound with nu_1 = 1."""
    return ((2 * g - 2) + (q + 2) * d) // 2


def sv_plane_report(q: int, d: int, g: int) -> SVBound:
    # the r = 2 bound presupposes a plane curve that is not a line
    return SVBound(sv_plane_classical(q, d, g), d < 2)


def sv_bound(q: int, n: int, g: int, nus: Sequence[int]) -> int:
    """General bound floor(((nu_1 + ... + nu_{r-1})(2g - 2) + (q + r) n) / r)."""
    r = len(nus) + 1
    return (sum(nus) * (2 * g - 2) + (q + r) * n) // r


def galois_projection_check(points: Iterable[ProjPoint], kept: Iterable[int]) -> dict:
    """Project points onto the kept coordinates (0-based) and histogram fiber sizes."""
    kept = sorted(set(kept))
    fibers: Counter = Counter()
    m = None
    for P in points:
        m = P.m
        fibers[ProjPoint.of(P.ctx, [P.coords[i] for i in kept])] += 1
    hist = Counter(fibers.values())
    expected = math.factorial(m - len(kept)) if m else None
    generic = hist.most_common(1)[0][0] if hist else None
    return {
        "expected_generic": expected,
        "generic": generic,
        "histogram": {str(k): v for k, v in sorted(hist.items())},
        "images": len(fibers),
        "all_divide": all(expected * 2 % s == 0 for s in hist) if expected else True,
    }


__all__ = [
    "CurveInvariants",
    "SVBound",
    "TrivariatePoly",
    "degree",
    "galois_projection_check",
    "genus",
    "invariants",
    "plane_point_count",
    "plane_quotient_poly",
    "plane_root_of_unity_points",
    "quotient_genus",
    "sv_bound",
    "sv_plane_classical",
    "sv_plane_report",
    "verify_plane_identity",
]

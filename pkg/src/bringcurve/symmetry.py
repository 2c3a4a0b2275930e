"""The action of Sym_m on coordinates: orbits, stabilizers and the short orbits.

Permutations act by moving coordinates: g sends the entry in position i to
position g(i), so ``apply_perm(g, P)[g(i)] == P[i]``.  Internally images are
0-based; the text form is 1-based one-line notation ("2,3,1,4,5").
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from .ff import DensePoly, FieldCtx, fq_make, splitting_degree
from .variety import (
    DEFAULT_BUDGET,
    DiagonalSystem,
    ProjPoint,
    _sort_rows,
    enumerate_weighted,
    power_sum,
    special_point_omega,
    theta_polynomial,
)

MAX_ORBIT_M = 8


class InvariantViolation(AssertionError):
    """A computed object contradicts a structural property of V."""


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(m)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        return cls(tuple(int(s) - 1 for s in text.split(",")))

    @classmethod
    def from_cycles(cls, m: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from 1-based cycles, e.g. [(1, 2, 3, 4)]."""
        img = list(range(m))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b - 1
        return cls(tuple(img))

    @property
    def m(self) -> int:
        return len(self.images)

    def __str__(self) -> str:
        return ",".join(str(i + 1) for i in self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(i) = self(other(i))
        return Permutation(tuple(self.images[j] for j in other.images))

    def __pow__(self, e: int) -> "Permutation":
        out = Permutation.identity(self.m)
        for _ in range(e):
            out = self * out
        return out

    def order(self) -> int:
        seen = [False] * self.m
        out = 1
        for s in range(self.m):
            n = 0
            i = s
            while not seen[i]:
                seen[i] = True
                i = self.images[i]
                n += 1
            if n:
                out = math.lcm(out, n)
        return out


def apply_perm(g: Permutation, P: ProjPoint) -> ProjPoint:
    if g.m != P.m:
        raise ValueError("permutation degree does not match the point")
    out = [0] * P.m
    for i, x in enumerate(P.coords):
        out[g.images[i]] = x
    return ProjPoint.of(P.ctx, out)


def orbit_and_stabilizer(P: ProjPoint) -> tuple[set[ProjPoint], int]:
    m = P.m
    if m > MAX_ORBIT_M:
        raise ValueError(f"full orbit enumeration is limited to m <= {MAX_ORBIT_M}")
    orbit = set()
    for img in permutations(range(m)):
        out = [0] * m
        for i, x in enumerate(P.coords):
            out[img[i]] = x
        orbit.add(ProjPoint.of(P.ctx, out))
    return orbit, math.factorial(m) // len(orbit)


class Orbit(str, Enum):
    OMEGA = "Omega_omega"
    EPSILON = "Omega_epsilon"
    THETA = "Omega_theta"
    GENERIC = "Generic"


@dataclass(frozen=True)
class OrbitLabel:
    label: Orbit
    s_m_minus_1: int
    s_m: int
    s_theta: int
    repeated: bool


def classify_orbit(P: ProjPoint, m: int | None = None) -> OrbitLabel:
    """Which short orbit P lies on.

    Omega_omega is cut out by S_{m-1} = 0 and Omega_epsilon by S_m = 0.
    Omega_theta is the set of transposition-fixed points, i.e. points with two
    equal coordinates.  S_{m(m-1)/2} is reported as a witness only: over
    finite fields it also vanishes on Omega_omega or Omega_epsilon.
    """
    m = m or P.m
    s1 = power_sum(P, m - 1)
    s2 = power_sum(P, m)
    s3 = power_sum(P, m * (m - 1) // 2)
    rep = len(set(P.coords)) < len(P.coords)
    fired = [lab for lab, hit in ((Orbit.OMEGA, s1 == 0), (Orbit.EPSILON, s2 == 0), (Orbit.THETA, rep)) if hit]
    if len(fired) > 1:
        raise InvariantViolation(f"{P} lies on several short orbits: {[f.value for f in fired]}")
    return OrbitLabel(fired[0] if fired else Orbit.GENERIC, s1, s2, s3, rep)


def short_orbit_lengths(m: int) -> tuple[int, int, int]:
    if m < 5:
        raise ValueError("m >= 5")
    return math.factorial(m - 1), m * math.factorial(m - 2), math.factorial(m) // 2


def transposition_fixed_points(S: DiagonalSystem, i: int, j: int, budget: int = DEFAULT_BUDGET) -> list[ProjPoint]:
    """Points of S over its field with x_i = x_j (0-based indices).

    Enumerates the system restricted to the hyperplane x_i = x_j, where the
    merged coordinate contributes 2 x^k to each power sum.
    """
    if i == j:
        raise ValueError("need two distinct indices")
    m, ctx = S.m, S.ctx
    i, j = sorted((i, j))
    others = [k for k in range(m) if k not in (i, j)]
    arr = enumerate_weighted(ctx, m - 1, S.exponents, [2] + [1] * (m - 2), budget)
    full = np.zeros((arr.shape[0], m), dtype=np.int64)
    full[:, i] = arr[:, 0]
    full[:, j] = arr[:, 0]
    for t, k in enumerate(others):
        full[:, k] = arr[:, 1 + t]
    pts = sorted({ProjPoint.of(ctx, row) for row in full.tolist()}, key=ProjPoint.sort_key)
    return pts


def theta_points_from_roots(ctx: FieldCtx, m: int) -> list[ProjPoint]:
    """Points (r_1 : ... : r_{m-2} : 1 : 1) over ctx built from theta_polynomial roots.

    Returns all orderings of the roots; empty if the polynomial does not split.
    """
    f = theta_polynomial(ctx.p, m)
    fx = DensePoly(ctx, [ctx.embed(c) for c in f.coeffs])
    roots = fx.roots()
    if len(roots) < m - 2:
        return []
    pts = [ProjPoint.of(ctx, list(r) + [1, 1]) for r in permutations(roots)]
    return sorted(set(pts), key=ProjPoint.sort_key)


def theta_splitting_degree(p: int, m: int) -> int:
    return splitting_degree(p, theta_polynomial(p, m))


def involution_fixed_count(m: int) -> int:
    """Fixed points of the involution in Stab(P_omega); even m only."""
    if m % 2:
        raise ValueError(
            "odd m: Stab(P_omega) has odd order and the published odd-m formula is not an integer; "
            "see the open question recorded for this operation"
        )
    return 2 ** (m // 2) * math.factorial(m // 2) // m


def omega_stabilizer_generator(m: int) -> Permutation:
    """The m-cycle fixing P_omega = (w : w^2 : ... : w^m).

    Moving each coordinate one place down multiplies the point by w.
    """
    return Permutation(tuple((i - 1) % m for i in range(m)))


def fixed_points(g: Permutation, points: Iterable[ProjPoint]) -> list[ProjPoint]:
    return [P for P in points if apply_perm(g, P) == P]


def empirical_involution_fixed_count(ctx: FieldCtx, m: int, budget: int = DEFAULT_BUDGET) -> int:
    from .variety import enumerate_projective_points

    S = DiagonalSystem.bring(ctx, m)
    P = special_point_omega(ctx, m)
    g = omega_stabilizer_generator(m) ** (m // 2)
    if apply_perm(g, P) != P:
        raise InvariantViolation("the half-turn does not fix P_omega")
    return len(fixed_points(g, enumerate_projective_points(S, budget)))


def theta_suborbit_counts(m: int) -> tuple[int, int]:
    if m < 5:
        raise ValueError("m >= 5")
    return (m - 2) * (m - 3) * (m - 4), 3 * (m - 2) ** 2


def theta_suborbit_counts_combinatorial(m: int) -> tuple[int, int]:
    """Count orbits of the stabilizer of the last three positions on Omega_theta.

    Omega_theta is modelled by the arrangements of the multiset
    {t, t, v_1, ..., v_{m-2}}; the subgroup permutes the first m-3 positions.
    An orbit is short when its size is below (m-3)!.
    """
    if m > MAX_ORBIT_M:
        raise ValueError(f"combinatorial check limited to m <= {MAX_ORBIT_M}")
    symbols = [0, 0] + list(range(1, m - 1))
    arrangements = set(permutations(symbols))
    orbits: dict[tuple, int] = {}
    for a in arrangements:
        key = (tuple(sorted(a[: m - 3])), a[m - 3 :])
        orbits[key] = orbits.get(key, 0) + 1
    full = math.factorial(m - 3)
    short = sum(1 for size in orbits.values() if size < full)
    return short, len(orbits) - short


def orbit_class_sizes(points: Iterable[ProjPoint], m: int) -> dict[str, int]:
    sizes = {o.value: 0 for o in Orbit}
    for P in points:
        sizes[classify_orbit(P, m).label.value] += 1
    return sizes


def special_points_rational(ctx: FieldCtx, m: int) -> dict[str, bool]:
    """Whether each short orbit is fully rational over ctx."""
    q = ctx.q
    theta = ctx.k % theta_splitting_degree(ctx.p, m) == 0 if m <= ctx.p - 1 else False
    return {
        Orbit.OMEGA.value: (q - 1) % m == 0,
        Orbit.EPSILON.value: (q - 1) % (m - 1) == 0,
        Orbit.THETA.value: theta,
    }


__all__ = [
    "InvariantViolation",
    "Orbit",
    "OrbitLabel",
    "Permutation",
    "apply_perm",
    "classify_orbit",
    "empirical_involution_fixed_count",
    "involution_fixed_count",
    "omega_stabilizer_generator",
    "orbit_and_stabilizer",
    "orbit_class_sizes",
    "short_orbit_lengths",
    "theta_points_from_roots",
    "theta_suborbit_counts",
    "theta_suborbit_counts_combinatorial",
    "transposition_fixed_points",
]

"""Solutions of the (p-1)/2 power-sum system in p variables and the cone W.

Over F_p the system S_1 = ... = S_{(p-1)/2} = 0 in p variables has only
constant vectors and rearrangements of the elements of F_p as solutions.
W is the cone cut out by S_1 = ... = S_{p-3} = 0 in p variables; its vertex is
E = (1, ..., 1) and its section by X_p = 0 is V for m = p-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ff import fq_make
from .variety import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    DiagonalSystem,
    ProjPoint,
    _affine_solutions,
    enumerate_affine_solutions,
    enumerate_projective_points,
)


@dataclass(frozen=True)
class RedeiReport:
    p: int
    constant_count: int
    permutation_count: int
    other_count: int

    @property
    def total(self) -> int:
        return self.constant_count + self.permutation_count + self.other_count

    def as_dict(self) -> dict:
        return {"constant": self.constant_count, "permutation": self.permutation_count, "other": self.other_count}


def classify_vector(v) -> str:
    vals = set(int(x) for x in v)
    if len(vals) == 1:
        return "constant"
    if len(vals) == len(v):
        return "permutation"
    return "other"


def redei_solutions(p: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """All solutions in F_p^p of S_k = 0 for k = 1..(p-1)/2."""
    ctx = fq_make(p)
    _, sols = _affine_solutions(ctx, p, list(range(1, (p - 1) // 2 + 1)), [1] * p, budget, collect=True)
    return sols


def classify_redei_solutions(p: int, budget: int = DEFAULT_BUDGET) -> RedeiReport:
    if p**p > budget:
        raise BudgetExceeded(f"F_{p}^{p} scan needs {p**p} evaluations > budget {budget}")
    sols = redei_solutions(p, budget)
    srt = np.sort(sols, axis=1)
    distinct = 1 + np.count_nonzero(np.diff(srt, axis=1), axis=1)
    const = int(np.count_nonzero(distinct == 1))
    perm = int(np.count_nonzero(distinct == p))
    return RedeiReport(p, const, perm, int(sols.shape[0]) - const - perm)


# --- the cone W ---------------------------------------------------------------


def w_exponents(p: int) -> list[int]:
    return list(range(1, p - 2))


def in_w(p: int, v) -> bool:
    return all(sum(pow(int(x), k, p) for x in v) % p == 0 for k in w_exponents(p))


def sample_w_points(p: int, samples: int, seed: int = 0, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """Points of W(F_p).

    For p^p within budget they are drawn from a full scan; otherwise from
    scaled points of V(F_p) (m = p-1) with a zero appended, which lie on W.
    """
    rng = np.random.default_rng(seed)
    ctx = fq_make(p)
    if p**p <= budget:
        _, sols = _affine_solutions(ctx, p, w_exponents(p), [1] * p, budget, collect=True)
        pool = [tuple(int(x) for x in r) for r in sols]
    else:
        S = DiagonalSystem.bring(ctx, p - 1)
        pts = enumerate_projective_points(S, budget)
        out = []
        for _ in range(samples):
            P = pts[int(rng.integers(len(pts)))]
            lam = int(rng.integers(1, p))
            out.append(tuple(lam * x % p for x in P.coords) + (0,))
        return out
    idx = rng.choice(len(pool), size=min(samples, len(pool)), replace=False)
    return [pool[i] for i in sorted(idx.tolist())]


@dataclass(frozen=True)
class ConeReport:
    p: int
    samples: int
    translates_checked: int
    failures: int

    @property
    def ok(self) -> bool:
        return self.samples > 0 and self.failures == 0


def w_cone_check(p: int, samples: int = 100, seed: int = 0, budget: int = DEFAULT_BUDGET) -> ConeReport:
    """Every translate (a_i + lam) of a sampled point of W lies on W."""
    if p > 11:
        raise ValueError("cone sampling supported for p <= 11")
    pts = sample_w_points(p, samples, seed, budget)
    checked = bad = 0
    for v in pts:
        if not in_w(p, v):
            bad += 1
            continue
        for lam in range(p):
            checked += 1
            bad += not in_w(p, [(x + lam) % p for x in v])
    return ConeReport(p, len(pts), checked, bad)


@dataclass(frozen=True)
class SectionCount:
    p: int
    points: int
    affine_nonzero: int
    verified: bool
    affine_crosscheck: bool | None


def count_hyperplane_section(p: int, budget: int = DEFAULT_BUDGET) -> SectionCount:
    """|V(F_p)| for m = p-1 and the matching count of nonzero affine solutions.

    Falls back to the formula (p-2)! with verified=False when enumeration
    exceeds the budget.
    """
    ctx = fq_make(p)
    S = DiagonalSystem.bring(ctx, p - 1)
    try:
        n = len(enumerate_projective_points(S, budget))
        verified = True
    except BudgetExceeded:
        n = math.factorial(p - 2)
        verified = False
    cross = None
    if verified and p ** (p - 1) <= budget:
        cross = enumerate_affine_solutions(S, budget).nonzero == n * (p - 1)
    return SectionCount(p, n, n * (p - 1), verified, cross)


def hyperplane_section_points(p: int, budget: int = DEFAULT_BUDGET) -> set[ProjPoint]:
    """Translate each point of W(F_p) so its last coordinate is 0 and drop it.

    The nonzero results, as projective points of PG(p-2), should be V(F_p).
    """
    ctx = fq_make(p)
    if p**p > budget:
        raise BudgetExceeded(f"W scan needs {p**p} evaluations")
    _, sols = _affine_solutions(ctx, p, w_exponents(p), [1] * p, budget, collect=True)
    shifted = (sols - sols[:, -1:]) % p
    heads = shifted[:, :-1]
    heads = heads[np.any(heads != 0, axis=1)]
    return {ProjPoint.of(ctx, r) for r in heads.tolist()}


__all__ = [
    "ConeReport",
    "RedeiReport",
    "SectionCount",
    "classify_redei_solutions",
    "classify_vector",
    "count_hyperplane_section",
    "hyperplane_section_points",
    "in_w",
    "redei_solutions",
    "sample_w_points",
    "w_cone_check",
]

"""Diagonal power-sum systems and exhaustive enumeration of their solutions.

A ``DiagonalSystem`` is the set of equations x_1^k + ... + x_m^k = 0 for k in
an exponent set K.  The generalized Bring curve V is the case
K = {1, ..., m-2}.

Projective enumeration works chart by chart: the first nonzero coordinate is
set to 1, the coordinates after it except the last two are iterated, and the
last two are recovered from the first two power sums (their sum and the sum of
their squares fix them up to order through one quadratic).  The remaining
exponents filter the candidates.  All inner loops are numpy-vectorised.
"""

from __future__ import annotations

import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .ff import DensePoly, FieldCtx, FieldError, format_elem, fq_make, parse_elem, primitive_root_of_unity

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9
INNER_MAX = 1 << 20


class BudgetExceeded(RuntimeError):
    """An exhaustive search would exceed the evaluation budget."""


@dataclass(frozen=True)
class DiagonalSystem:
    m: int
    exponents: tuple[int, ...]
    ctx: FieldCtx = field(compare=False)

    def __post_init__(self):
        ex = tuple(self.exponents)
        object.__setattr__(self, "exponents", ex)
        if self.m < 3:
            raise ValueError("need at least three variables")
        if any(e < 1 for e in ex) or any(a >= b for a, b in zip(ex, ex[1:])):
            raise ValueError("exponents must be strictly increasing positive integers")
        if any(e >= self.ctx.p for e in ex):
            warnings.warn("exponents >= p: Vandermonde rank arguments do not apply", stacklevel=3)

    @classmethod
    def bring(cls, ctx: FieldCtx, m: int) -> "DiagonalSystem":
        """The curve V: exponents 1..m-2 in m variables, 5 <= m <= p-1."""
        if not 5 <= m <= ctx.p - 1:
            raise ValueError(f"V needs 5 <= m <= p-1, got m={m}, p={ctx.p}")
        return cls(m, tuple(range(1, m - 1)), ctx)

    @property
    def is_bring(self) -> bool:
        return self.exponents == tuple(range(1, self.m - 1))


@dataclass(frozen=True)
class ProjPoint:
    """Projective point in canonical form (first nonzero coordinate is 1)."""

    coords: tuple[int, ...]
    ctx: FieldCtx = field(compare=False, repr=False)

    @classmethod
    def of(cls, ctx: FieldCtx, vec: Iterable[int]) -> "ProjPoint":
        v = [int(x) for x in vec]
        lead = next((x for x in v if x), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        if lead != 1:
            inv = ctx.inv(lead)
            v = [ctx.mul(inv, x) for x in v]
        return cls(tuple(v), ctx)

    @property
    def m(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def sort_key(self):
        return tuple(self.ctx.key(c) for c in self.coords)

    def elems(self):
        return [self.ctx.elem(c) for c in self.coords]

    def frobenius(self, i: int = 1) -> "ProjPoint":
        return ProjPoint(tuple(self.ctx.frobenius(c, i) for c in self.coords), self.ctx)

    def __str__(self) -> str:
        return "(" + ":".join(format_elem(self.ctx, c) for c in self.coords) + ")"


def power_sum(v: ProjPoint | Sequence[int], k: int, ctx: FieldCtx | None = None) -> int:
    """Sum of k-th powers of the coordinates."""
    ctx = ctx or v.ctx
    acc = 0
    for x in v:
        acc = ctx.add(acc, ctx.pow(x, k))
    return acc


def is_solution(S: DiagonalSystem, v: ProjPoint | Sequence[int]) -> bool:
    if len(v) != S.m:
        raise ValueError("vector length does not match the system")
    return all(power_sum(v, k, S.ctx) == 0 for k in S.exponents)


def special_point_omega(ctx: FieldCtx, m: int) -> ProjPoint:
    """(w : w^2 : ... : w^m = 1) for the smallest primitive m-th root w."""
    w = primitive_root_of_unity(ctx, m)
    return ProjPoint.of(ctx, [ctx.pow(w, i) for i in range(1, m + 1)])


def special_point_epsilon(ctx: FieldCtx, m: int) -> ProjPoint:
    """(e : e^2 : ... : e^(m-1) = 1 : 0) for the smallest primitive (m-1)-th root e."""
    e = primitive_root_of_unity(ctx, m - 1)
    return ProjPoint.of(ctx, [ctx.pow(e, i) for i in range(1, m)] + [0])


# --- vectorised search core -------------------------------------------------


def _assignments(vf, c: int) -> np.ndarray:
    """All q^c assignments of c coordinates, shape (q^c, c)."""
    q = vf.q
    if c == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((q,) * c, dtype=np.int64).reshape(c, -1).T
    return grids


def _weighted_sums(vf, block: np.ndarray, weights: Sequence[int], exponents: Iterable[int]) -> dict[int, np.ndarray]:
    sums = {}
    for k in exponents:
        acc = np.zeros(block.shape[0], dtype=np.int64)
        for j in range(block.shape[1]):
            term = vf.pow(block[:, j], k)
            if weights[j] != 1:
                term = vf.mul(term, vf.const(weights[j]))
            acc = vf.add(acc, term)
        sums[k] = acc
    return sums


def _scalar_weighted_sums(ctx: FieldCtx, vals: Sequence[int], weights: Sequence[int], exponents) -> dict[int, int]:
    out = {}
    for k in exponents:
        acc = 0
        for x, w in zip(vals, weights):
            if x:
                acc = ctx.add(acc, ctx.smul(w, ctx.pow(x, k)))
        out[k] = acc
    return out


def _split_free(q: int, f: int) -> int:
    c = 0
    while c < f and q ** (c + 1) <= INNER_MAX:
        c += 1
    return c


def _chart_cost(q: int, n: int) -> int:
    return sum(q ** max(n - 3 - L, 0) for L in range(n))


def enumerate_weighted(
    ctx: FieldCtx,
    n: int,
    exponents: Sequence[int],
    weights: Sequence[int] | None = None,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> np.ndarray:
    """Canonical projective solutions of sum_i w_i x_i^k = 0 (k in exponents).

    Returns an (N, n) array of codes sorted lexicographically by element key.
    The last two weights must be 1 and exponents must contain 1 and 2.
    """
    weights = list(weights or [1] * n)
    exps = sorted(exponents)
    if weights[-1] != 1 or weights[-2] != 1 or 1 not in exps or 2 not in exps or n < 3:
        return _enumerate_weighted_scan(ctx, n, exps, weights, budget)
    vf = ctx.vec
    q = ctx.q
    cost = _chart_cost(q, n)
    if cost > budget:
        raise BudgetExceeded(f"projective enumeration needs {cost} evaluations > budget {budget}")
    rest = [k for k in exps if k not in (1, 2)]
    inv2 = ctx.inv(2)
    found: list[np.ndarray] = []

    for L in range(n - 2):
        f = n - 3 - L
        free_pos = list(range(L + 1, n - 2))
        c = _split_free(q, f)
        outer_pos, inner_pos = free_pos[: f - c], free_pos[f - c :]
        inner = _assignments(vf, c)
        inner_s = _weighted_sums(vf, inner, [weights[j] for j in inner_pos], exps)
        lead_s = {k: ctx.embed(weights[L]) for k in exps}

        def run(outer_vals, L=L, inner=inner, inner_s=inner_s, outer_pos=outer_pos, inner_pos=inner_pos, lead_s=lead_s):
            os_ = _scalar_weighted_sums(ctx, outer_vals, [weights[j] for j in outer_pos], exps)
            base = {k: ctx.add(os_[k], lead_s[k]) for k in exps}
            s1 = vf.add(inner_s[1], base[1])
            s2 = vf.add(inner_s[2], base[2])
            e1 = vf.neg(s1)
            disc = vf.neg(vf.add(vf.mul(s1, s1), vf.add(s2, s2)))
            sd_all = vf.sqrt_table[disc]
            idx = np.nonzero(sd_all >= 0)[0]
            if idx.size == 0:
                return None
            sd = sd_all[idx]
            e1i = e1[idx]
            r1 = vf.mul(vf.add(e1i, sd), inv2)
            r2 = vf.mul(vf.sub(e1i, sd), inv2)
            two = sd != 0
            cand = np.concatenate([idx, idx[two]])
            a = np.concatenate([r1, r2[two]])
            b = np.concatenate([r2, r1[two]])
            for k in rest:
                val = vf.add(vf.add(inner_s[k][cand], base[k]), vf.add(vf.pow(a, k), vf.pow(b, k)))
                keep = val == 0
                cand, a, b = cand[keep], a[keep], b[keep]
                if cand.size == 0:
                    return None
            rows = np.zeros((cand.size, n), dtype=np.int64)
            rows[:, L] = 1
            for j, x in zip(outer_pos, outer_vals):
                rows[:, j] = x
            for t, j in enumerate(inner_pos):
                rows[:, j] = inner[cand, t]
            rows[:, n - 2] = a
            rows[:, n - 1] = b
            return rows

        outer_iter = product(ctx.elements_lex, repeat=len(outer_pos))
        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                results = list(pool.map(run, outer_iter))
        else:
            results = [run(o) for o in outer_iter]
        found.extend(r for r in results if r is not None)

    # charts with the leading 1 among the last two coordinates
    for L in (n - 2, n - 1):
        tails = [[x] for x in range(q)] if L == n - 2 else [[]]
        for tail in tails:
            v = [0] * L + [1] + tail
            sums = _scalar_weighted_sums(ctx, v, weights, exps)
            if all(s == 0 for s in sums.values()):
                found.append(np.array([v], dtype=np.int64))

    if not found:
        return np.zeros((0, n), dtype=np.int64)
    pts = np.concatenate(found)
    return _sort_rows(ctx, pts)


def _sort_rows(ctx: FieldCtx, pts: np.ndarray) -> np.ndarray:
    if pts.shape[0] == 0:
        return pts
    if ctx.k == 1:
        keys = pts
    else:
        rank = np.empty(ctx.q, dtype=np.int64)
        rank[np.array(ctx.elements_lex)] = np.arange(ctx.q)
        keys = rank[pts]
    order = np.lexsort(keys.T[::-1])
    pts = pts[order]
    keys = keys[order]
    if pts.shape[0] > 1:
        dup = np.all(keys[1:] == keys[:-1], axis=1)
        pts = pts[np.concatenate([[True], ~dup])]
    return pts


def _iter_affine_blocks(ctx: FieldCtx, n: int):
    vf = ctx.vec
    c = _split_free(ctx.q, n)
    inner = _assignments(vf, c)
    for outer in product(range(ctx.q), repeat=n - c):
        yield outer, inner


def _affine_solutions(ctx: FieldCtx, n: int, exps, weights, budget: int, collect: bool):
    total = ctx.q**n
    if total > budget:
        raise BudgetExceeded(f"affine scan needs {total} evaluations > budget {budget}")
    vf = ctx.vec
    count = 0
    rows = []
    c = _split_free(ctx.q, n)
    inner = _assignments(vf, c)
    inner_s = _weighted_sums(vf, inner, weights[n - c :], exps)
    for outer in product(range(ctx.q), repeat=n - c):
        os_ = _scalar_weighted_sums(ctx, outer, weights[: n - c], exps)
        mask = np.ones(inner.shape[0], dtype=bool)
        for k in exps:
            mask &= vf.add(inner_s[k], os_[k]) == 0
        hits = np.nonzero(mask)[0]
        count += hits.size
        if collect and hits.size:
            block = np.zeros((hits.size, n), dtype=np.int64)
            block[:, : n - c] = outer
            block[:, n - c :] = inner[hits]
            rows.append(block)
    sols = np.concatenate(rows) if rows else np.zeros((0, n), dtype=np.int64)
    return count, sols


def _enumerate_weighted_scan(ctx, n, exps, weights, budget) -> np.ndarray:
    _, sols = _affine_solutions(ctx, n, exps, weights, budget, collect=True)
    sols = sols[np.any(sols != 0, axis=1)]
    canon = np.array([ProjPoint.of(ctx, r).coords for r in sols], dtype=np.int64).reshape(-1, n)
    return _sort_rows(ctx, canon)


@dataclass
class AffineCount:
    nonzero: int
    zero_is_solution: bool = True
    solutions: np.ndarray | None = None

    @property
    def total(self) -> int:
        return self.nonzero + int(self.zero_is_solution)


def enumerate_affine_solutions(S: DiagonalSystem, budget: int = DEFAULT_BUDGET, collect: bool = False) -> AffineCount:
    """Exact count of nonzero solutions in F_q^m by brute force."""
    count, sols = _affine_solutions(S.ctx, S.m, list(S.exponents), [1] * S.m, budget, collect)
    # the zero vector solves every diagonal system
    out = AffineCount(nonzero=count - 1)
    if collect:
        out.solutions = sols[np.any(sols != 0, axis=1)]
    return out


def enumerate_points_array(S: DiagonalSystem, budget: int = DEFAULT_BUDGET, workers: int = 1) -> np.ndarray:
    return enumerate_weighted(S.ctx, S.m, S.exponents, None, budget, workers)


def enumerate_projective_points(S: DiagonalSystem, budget: int = DEFAULT_BUDGET, workers: int = 1) -> list[ProjPoint]:
    """The set of F_q-rational points, canonical and sorted."""
    arr = enumerate_points_array(S, budget, workers)
    ctx = S.ctx
    return [ProjPoint(tuple(int(x) for x in row), ctx) for row in arr]


def count_points(S: DiagonalSystem, budget: int = DEFAULT_BUDGET, workers: int = 1) -> int:
    return int(enumerate_points_array(S, budget, workers).shape[0])


# --- pointwise checks -------------------------------------------------------


def jacobian_rank(S: DiagonalSystem, P: ProjPoint | Sequence[int]) -> int:
    ctx = S.ctx
    rows = [[ctx.smul(k, ctx.pow(x, k - 1)) for x in P] for k in S.exponents]
    return linalg.rank(ctx, rows)


def extra_equation_exponents(m: int, p: int) -> list[int]:
    ks = list(range(m + 2, 2 * m - 2))
    if m == p - 1:
        ks.append(p + 1)
    return ks


def extra_equations_check(P: ProjPoint, m: int | None = None) -> bool:
    """Power sums of degree m+2..2m-3 (and p+1 when m = p-1) vanish at P."""
    m = m or P.m
    return all(power_sum(P, k) == 0 for k in extra_equation_exponents(m, P.ctx.p))


def theta_polynomial(p: int, m: int) -> DensePoly:
    """Monic polynomial whose roots are the other coordinates of (x_1:...:x_{m-2}:1:1).

    The power sums of the m-2 roots all equal -2; Newton's identities turn them
    into elementary symmetric functions (valid since m-2 < p).
    """
    if m > p - 1:
        raise ValueError("theta polynomial needs m <= p-1")
    ctx = fq_make(p, 1)
    n = m - 2
    psum = [0] + [(-2) % p] * n
    e = [1]
    for k in range(1, n + 1):
        acc = 0
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * psum[i]
        e.append(acc * pow(k, p - 2, p) % p)
    # prod (X - x_i) = sum_k (-1)^k e_k X^(n-k)
    coeffs = [0] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = (-1) ** k * e[k] % p
    return DensePoly(ctx, coeffs)


def regular_sequence_probe(m: int, p: int, max_ext: int, budget: int = DEFAULT_BUDGET) -> bool:
    """No point of V(F_{p^k}), k <= max_ext, has S_{m-1} = S_m = 0."""
    for k in range(1, max_ext + 1):
        ctx = fq_make(p, k)
        S = DiagonalSystem.bring(ctx, m)
        for P in enumerate_projective_points(S, budget):
            if power_sum(P, m - 1) == 0 and power_sum(P, m) == 0:
                log.info("common zero of S_%d and S_%d at %s over F_%d", m - 1, m, P, ctx.q)
                return False
    return True


def structural_violations(P: ProjPoint) -> list[str]:
    """Coincidence patterns that no point of V may show."""
    c = list(P.coords)
    out = []
    zeros = c.count(0)
    if zeros >= 2:
        out.append("two zero coordinates")
    counts: dict[int, int] = {}
    for x in c:
        counts[x] = counts.get(x, 0) + 1
    if any(v >= 3 for v in counts.values()):
        out.append("three equal coordinates")
    pairs = [x for x, v in counts.items() if v >= 2]
    if len(pairs) >= 2:
        out.append("two disjoint equal pairs")
    if pairs and zeros and any(x != 0 for x in pairs):
        out.append("equal pair with a zero coordinate")
    return out


# --- point-set files ----------------------------------------------------------


def write_points(path: str | Path, S: DiagonalSystem, points: Iterable[ProjPoint]) -> None:
    ctx = S.ctx
    lines = [f"# m={S.m} q={ctx.p}^{ctx.k} K={','.join(map(str, S.exponents))}"]
    for P in points:
        lines.append(";".join(format_elem(ctx, c) for c in P.coords))
    Path(path).write_text("\n".join(lines) + "\n")


def read_points(path: str | Path) -> tuple[DiagonalSystem, list[ProjPoint]]:
    text = Path(path).read_text().splitlines()
    header = text[0]
    if not header.startswith("#"):
        raise ValueError("missing point-set header")
    fields = dict(part.split("=", 1) for part in header[1:].split())
    p, k = (int(s) for s in fields["q"].split("^"))
    ctx = fq_make(p, k)
    exps = tuple(int(s) for s in fields["K"].split(",")) if fields["K"] else ()
    S = DiagonalSystem(int(fields["m"]), exps, ctx)
    pts = []
    for line in text[1:]:
        line = line.strip()
        if not line:
            continue
        coords = [parse_elem(ctx, s) for s in line.split(";")]
        if len(coords) != S.m:
            raise ValueError(f"point {line!r} has the wrong number of coordinates")
        pts.append(ProjPoint.of(ctx, coords))
    return S, pts


def expected_bring_count_fp(p: int) -> int:
    """(p-2)! points over F_p when m = p-1."""
    return math.factorial(p - 2)


__all__ = [
    "AffineCount",
    "BudgetExceeded",
    "DiagonalSystem",
    "FieldError",
    "ProjPoint",
    "count_points",
    "enumerate_affine_solutions",
    "enumerate_projective_points",
    "enumerate_weighted",
    "extra_equations_check",
    "is_solution",
    "jacobian_rank",
    "power_sum",
    "read_points",
    "regular_sequence_probe",
    "special_point_epsilon",
    "special_point_omega",
    "structural_violations",
    "theta_polynomial",
    "write_points",
]

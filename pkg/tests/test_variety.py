import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bringcurve import variety
from bringcurve.ff import FieldError, fq_make
from bringcurve.variety import (
    BudgetExceeded,
    DiagonalSystem,
    ProjPoint,
    enumerate_affine_solutions,
    enumerate_projective_points,
    count_points,
    extra_equations_check,
    is_solution,
    jacobian_rank,
    power_sum,
    read_points,
    regular_sequence_probe,
    special_point_epsilon,
    special_point_omega,
    structural_violations,
    theta_polynomial,
    write_points,
)


def naive_points(S: DiagonalSystem) -> set[ProjPoint]:
    """Test every canonical representative (no quadratic solve, no charts)."""
    ctx = S.ctx
    vf = ctx.vec
    out = set()
    for lead in range(S.m):
        free = S.m - lead - 1
        tails = np.array(list(product(range(ctx.q), repeat=free)), dtype=np.int64).reshape(ctx.q**free, free)
        ok = np.ones(len(tails), dtype=bool)
        for k in S.exponents:
            acc = np.full(len(tails), 1, dtype=np.int64)
            for j in range(free):
                acc = vf.add(acc, vf.pow(tails[:, j], k))
            ok &= acc == 0
        for row in tails[ok].tolist():
            out.add(ProjPoint(tuple([0] * lead + [1] + row), ctx))
    return out


@pytest.mark.parametrize(
    "m,p,k,exps",
    [
        (5, 7, 1, (1, 2, 3)),
        (6, 7, 1, (1, 2, 3, 4)),
        (5, 11, 1, (1, 2, 3)),
        (5, 7, 2, (1, 2, 3)),
        (4, 7, 1, (1, 3)),  # no quadratic equation: the generic scan path
        (4, 7, 2, (2, 3)),
        (4, 11, 1, (1, 2)),
    ],
)
def test_enumeration_matches_naive_scan(m, p, k, exps):
    S = DiagonalSystem(m, exps, fq_make(p, k))
    pts = enumerate_projective_points(S)
    assert len(pts) == len(set(pts))
    assert set(pts) == naive_points(S)
    assert pts == sorted(pts, key=ProjPoint.sort_key)


@pytest.mark.parametrize(
    "m,p,k,expected",
    [(6, 7, 1, 120), (6, 7, 2, 120), (5, 7, 1, 0), (5, 7, 2, 90), (5, 29, 2, 1074), (5, 11, 2, 174), (5, 31, 2, 1194)],
)
def test_point_counts(m, p, k, expected):
    assert count_points(DiagonalSystem.bring(fq_make(p, k), m)) == expected


def test_count_over_cubic_extension():
    # every point of V(F_{7^3}) is already rational over F_7
    assert count_points(DiagonalSystem.bring(fq_make(7, 3), 6)) == 120


def test_m_equals_p_minus_one_gives_factorial():
    assert count_points(DiagonalSystem.bring(fq_make(11), 10)) == math.factorial(9)
    assert variety.expected_bring_count_fp(11) == math.factorial(9)


def test_workers_do_not_change_output():
    S = DiagonalSystem.bring(fq_make(29, 2), 5)
    assert enumerate_projective_points(S, workers=1) == enumerate_projective_points(S, workers=4)


def test_budget_is_a_hard_error():
    S = DiagonalSystem.bring(fq_make(11), 6)
    with pytest.raises(BudgetExceeded):
        count_points(S, budget=100)


def test_affine_counts():
    F7 = fq_make(7)
    assert enumerate_affine_solutions(DiagonalSystem.bring(F7, 6)).nonzero == 720
    assert enumerate_affine_solutions(DiagonalSystem(3, (1,), F7)).nonzero == 48
    aff = enumerate_affine_solutions(DiagonalSystem(3, (1,), F7))
    assert aff.zero_is_solution and aff.total == 49


def test_projective_and_affine_counts_agree():
    # each projective point accounts for q - 1 nonzero affine solutions
    for m, p in [(5, 7), (6, 7), (5, 11)]:
        S = DiagonalSystem.bring(fq_make(p), m)
        assert enumerate_affine_solutions(S).nonzero == (p - 1) * count_points(S)


def test_system_validation():
    F7 = fq_make(7)
    with pytest.raises(ValueError):
        DiagonalSystem.bring(F7, 7)
    with pytest.raises(ValueError):
        DiagonalSystem.bring(F7, 4)
    with pytest.raises(ValueError):
        DiagonalSystem(5, (2, 1), F7)
    with pytest.raises(ValueError):
        ProjPoint.of(F7, [0, 0, 0])


def test_documented_points():
    F11, F29, F7 = fq_make(11), fq_make(29), fq_make(7)
    P = special_point_omega(F11, 5)
    assert P == ProjPoint.of(F11, [3, 9, 5, 4, 1])
    assert power_sum(P, 2) == 0 and power_sum(P, 5) == 5
    assert special_point_omega(F7, 6) == ProjPoint.of(F7, [3, 2, 6, 4, 5, 1])
    assert special_point_epsilon(F29, 5) == ProjPoint.of(F29, [12, 28, 17, 1, 0])
    Q = special_point_epsilon(fq_make(11), 6)
    assert Q.coords[-1] == 0 and is_solution(DiagonalSystem.bring(F11, 6), Q)
    with pytest.raises(FieldError):
        special_point_omega(F7, 5)
    with pytest.raises(FieldError):
        special_point_epsilon(F7, 6)
    S5 = DiagonalSystem(5, (1, 2, 3), F11)
    assert is_solution(S5, [3, 9, 5, 4, 1])
    assert is_solution(S5, [0] * 5)
    assert not is_solution(S5, [1] * 5)


def test_jacobian_rank_examples():
    F11, F29 = fq_make(11), fq_make(29)
    S = DiagonalSystem.bring(F11, 5)
    assert jacobian_rank(S, ProjPoint.of(F11, [3, 9, 5, 4, 1])) == 3
    assert jacobian_rank(S, [1, 1, 1, 1, 1]) == 1
    assert jacobian_rank(DiagonalSystem.bring(F29, 5), ProjPoint.of(F29, [12, 28, 17, 1, 0])) == 3


def test_extra_equations():
    assert variety.extra_equation_exponents(5, 11) == [7]
    assert extra_equations_check(ProjPoint.of(fq_make(11), [3, 9, 5, 4, 1]), 5)
    for P in enumerate_projective_points(DiagonalSystem.bring(fq_make(7), 6)):
        assert extra_equations_check(P, 6)
    for P in enumerate_projective_points(DiagonalSystem.bring(fq_make(29, 2), 5)):
        assert extra_equations_check(P, 5)


def test_theta_polynomial():
    assert theta_polynomial(7, 6).coeffs == [5, 4, 3, 2, 1]
    assert theta_polynomial(7, 5).coeffs == [4, 3, 2, 1]
    for p in (11, 13):
        # X^{p-3} + 2X^{p-4} + ... + (p-2)
        assert theta_polynomial(p, p - 1).coeffs == list(range(p - 2, 0, -1))


@pytest.mark.parametrize("m,p", [(5, 11), (5, 29), (6, 7)])
def test_regular_sequence_probe(m, p):
    assert regular_sequence_probe(m, p, 2)


def test_structural_violations():
    for m, p, k in [(6, 7, 1), (5, 29, 2), (5, 11, 2)]:
        for P in enumerate_projective_points(DiagonalSystem.bring(fq_make(p, k), m)):
            assert structural_violations(P) == []
    F7 = fq_make(7)
    assert "two zero coordinates" in structural_violations(ProjPoint.of(F7, [1, 6, 0, 0, 2]))
    assert "three equal coordinates" in structural_violations(ProjPoint.of(F7, [1, 1, 1, 2, 3]))
    assert "two disjoint equal pairs" in structural_violations(ProjPoint.of(F7, [1, 1, 2, 2, 3]))


def test_point_file_roundtrip(tmp_path):
    S = DiagonalSystem.bring(fq_make(7, 2), 5)
    pts = enumerate_projective_points(S)
    path = tmp_path / "pts.txt"
    write_points(path, S, pts)
    assert path.read_text().splitlines()[0] == "# m=5 q=7^2 K=1,2,3"
    S2, pts2 = read_points(path)
    assert S2 == S and pts2 == pts


POINTS_29 = enumerate_projective_points(DiagonalSystem.bring(fq_make(29, 2), 5))


@given(idx=st.integers(0, len(POINTS_29) - 1), perm=st.permutations(range(5)), lam=st.integers(1, 29**2 - 1))
@settings(max_examples=300)
def test_solution_set_is_symmetric_and_scale_free(idx, perm, lam):
    P = POINTS_29[idx]
    ctx = P.ctx
    moved = ProjPoint.of(ctx, [ctx.mul(lam, P.coords[i]) for i in perm])
    assert moved in set(POINTS_29)
    assert P.frobenius() in set(POINTS_29)


@given(vec=st.lists(st.integers(0, 48), min_size=5, max_size=5).filter(any), lam=st.integers(1, 48))
@settings(max_examples=300)
def test_canonical_form(vec, lam):
    ctx = fq_make(7, 2)
    P = ProjPoint.of(ctx, vec)
    assert P == ProjPoint.of(ctx, [ctx.mul(lam, x) for x in vec])
    assert next(x for x in P.coords if x) == 1

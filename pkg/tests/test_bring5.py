from fractions import Fraction
from pathlib import Path

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.parsing.sympy_parser import implicit_multiplication, parse_expr, standard_transformations

from bringcurve import bring5
from bringcurve.bring5 import (
    E1_COEFFS,
    ExceptionalPoint,
    bcd_values,
    c4_image,
    c6_quartic_to_e2_check,
    e1_curve,
    e2_curve,
    ec_count_by_table,
    ec_trace,
    invariants_b1_d1,
    invariants_check,
    isogeny_apply,
    isogeny_check,
    maximality_scan,
    predicted_v_count_fp2,
    sample_curve_points,
)
from bringcurve.ff import fq_make, is_prime
from bringcurve.variety import DiagonalSystem, ProjPoint, count_points, enumerate_projective_points

X2, X3, X4, X5 = sympy.symbols("x2 x3 x4 x5")
PRIMES = [p for p in range(7, 400) if is_prime(p)]
TEX = Path(__file__).parent / "data" / "bcd_invariants.tex"


def naive_count(E) -> int:
    p = E.p
    return 1 + sum((y * y - E.rhs(x)) % p == 0 for x in range(p) for y in range(p))


def ec_add(E, P, Q):
    """Chord-and-tangent addition on y^2 = x^3 + a2 x^2 + a4 x + a6 (None is infinity)."""
    p = E.p
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + 2 * E.a2 * x1 + E.a4) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - E.a2 - x1 - x2) % p
    return x3, (-(y1 + lam * (x3 - x1))) % p


def test_e1_reduction():
    assert e1_curve(29).a2 == 11


@pytest.mark.parametrize("p", PRIMES[:40])
def test_trace_oracles_agree(p):
    E1, E2 = e1_curve(p), e2_curve(p)
    n1 = naive_count(E1)
    assert ec_count_by_table(E1) == n1 == p + 1 - ec_trace(E1)
    # isogenous curves have the same number of points
    assert p + 1 - ec_trace(E2) == n1


@given(st.sampled_from([p for p in range(7, 5000) if is_prime(p)]))
@settings(max_examples=100)
def test_hasse_bound(p):
    a = ec_trace(e1_curve(p))
    assert a * a <= 4 * p


def test_traces_at_documented_primes():
    assert ec_trace(e1_curve(29)) == 0
    assert ec_trace(e1_curve(31)) != 0


def test_e1_discriminant_primes():
    a, b, c = E1_COEFFS
    disc = a * a * b * b - 4 * b**3 - 4 * a**3 * c - 27 * c * c + 18 * a * b * c
    assert disc != 0
    primes = set(sympy.factorint(abs(disc.numerator))) | set(sympy.factorint(disc.denominator))
    assert primes <= {2, 3, 5}


def test_maximality_scan():
    assert maximality_scan(28) == []
    assert maximality_scan(1000) == [29, 59, 149, 239, 269, 839]
    assert maximality_scan(1000, workers=4) == maximality_scan(1000)


@pytest.mark.parametrize("p,k", [(7, 2), (11, 2), (29, 2), (31, 2)])
def test_predicted_counts_match_enumeration(p, k):
    assert predicted_v_count_fp2(p) == count_points(DiagonalSystem.bring(fq_make(p, k), 5))


def test_predicted_count_formula():
    assert predicted_v_count_fp2(29) == 29**2 + 1 + 8 * 29
    a7 = ec_trace(e1_curve(7))
    assert predicted_v_count_fp2(7) == 50 + 56 - 4 * a7 * a7


@pytest.mark.parametrize("p", [7, 11, 29])
def test_isogeny_lands_on_e2(p):
    rep = isogeny_check(p, 100)
    assert rep.ok and rep.samples == 100
    assert isogeny_apply(p, None) is None


@pytest.mark.parametrize("p", [7, 11, 29, 59])
def test_isogeny_kernel_and_homomorphism(p):
    E1, E2 = e1_curve(p), e2_curve(p)
    pts = [(x, y) for x in range(p) for y in range(p) if E1.contains((x, y))]
    kernel = []
    for P in pts:
        try:
            isogeny_apply(p, P)
        except ExceptionalPoint:
            kernel.append(P)
    assert len(kernel) == 2 and kernel[0][0] == kernel[1][0]
    K = kernel[0]
    assert ec_add(E1, ec_add(E1, K, K), K) is None  # a 3-torsion point

    def phi(P):
        return None if P is None or P in kernel else isogeny_apply(p, P)

    for P in pts[:15]:
        for Q in pts[-15:]:
            assert phi(ec_add(E1, P, Q)) == ec_add(E2, phi(P), phi(Q))


def test_sample_curve_points_are_on_curve():
    E = e1_curve(101)
    pts = sample_curve_points(E, 50, seed=3)
    assert len(pts) == 50 and all(E.contains(P) for P in pts)
    assert pts == sample_curve_points(E, 50, seed=3)


# --- b, c, d ---------------------------------------------------------------------------


def _parse_tex() -> dict[str, sympy.Poly]:
    text = TEX.read_text().replace("\\\\", " ")
    out = {}
    for block in text.strip().split("\n\n"):
        name, _, body = block.partition("=")
        body = body.strip().rstrip(".,").replace("^", "**")
        for i in (2, 3, 4, 5):
            body = body.replace(f"x_{i}", f"x{i}")
        expr = parse_expr(" ".join(body.split()), transformations=standard_transformations + (implicit_multiplication,))
        out[name.strip()] = sympy.Poly(expr, X2, X3, X4, X5)
    return out


def test_bcd_terms_match_independent_parse():
    parsed = _parse_tex()
    assert [len(parsed[n].terms()) for n in "bcd"] == [37, 25, 40]
    for name, terms in zip("bcd", (bring5._B_TERMS, bring5._C_TERMS, bring5._D_TERMS)):
        ours = {e: Fraction(n, d) for n, d, e in terms}
        theirs = {tuple(e): Fraction(int(c.p), int(c.q)) for e, c in parsed[name].terms()}
        assert ours == theirs, name
        assert all(sum(e) == 9 for e in ours)


def test_bcd_evaluation_matches_sympy():
    parsed = _parse_tex()
    ctx = fq_make(29)
    for P in [ProjPoint.of(ctx, [12, 28, 17, 1, 0]), ProjPoint.of(ctx, [1, 2, 3, 4, 5]), ProjPoint.of(ctx, [0, 1, 7, 3, 9])]:
        vals = dict(zip((X2, X3, X4, X5), P.coords[1:]))
        want = []
        for n in "bcd":
            v = parsed[n].as_expr().subs(vals)
            want.append(int(v.p) * pow(int(v.q), -1, 29) % 29)
        assert list(bcd_values(P)) == want


@pytest.fixture(scope="module")
def points_29():
    return enumerate_projective_points(DiagonalSystem.bring(fq_make(29, 2), 5))


def test_invariants_over_maximal_field(points_29):
    rep = invariants_check(points_29)
    assert rep.ok
    assert rep.checked >= 100
    assert rep.points == 1074


def test_c4_invariance_explicit(points_29):
    checked = 0
    for P in points_29[::7]:
        try:
            before = invariants_b1_d1(P)
            after = invariants_b1_d1(c4_image(P))
        except ExceptionalPoint:
            continue
        assert before == after
        checked += 1
    assert checked > 100


def test_exceptional_points_are_reported(points_29):
    bad = [P for P in points_29 if bcd_values(P)[1] == 0]
    assert bad
    with pytest.raises(ExceptionalPoint):
        invariants_b1_d1(bad[0])
    with pytest.raises(ValueError):
        invariants_b1_d1(ProjPoint.of(fq_make(7), [1, 2, 3, 4, 5, 6]))


@pytest.mark.parametrize("p", [7, 11, 29])
def test_c6_quartic_maps_to_e2(p):
    rep = c6_quartic_to_e2_check(p)
    assert rep.ok and rep.mapped > 0

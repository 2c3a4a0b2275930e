import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF, Poly, symbols
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from bringcurve.ff import (
    DensePoly,
    FieldCtx,
    FieldError,
    FqElem,
    PowerSeries,
    first_irreducible,
    format_ctx,
    format_elem,
    fq_make,
    parse_ctx,
    parse_elem,
    primitive_root_of_unity,
    roots_of_unity,
    splitting_degree,
)

X = symbols("X")


def sympy_mul(ctx: FieldCtx, a: int, b: int) -> int:
    """Multiply through sympy's dense GF(p)[X] arithmetic, reducing by the modulus."""
    p = ctx.p
    hi = lambda c: [ZZ(x) for x in reversed(c)]
    prod = gf_mul(hi(ctx.coeffs(a)), hi(ctx.coeffs(b)), p, ZZ)
    rem = gf_rem(prod, hi(ctx.modulus), p, ZZ)
    return ctx.from_coeffs([int(x) for x in reversed(rem)])


@pytest.mark.parametrize("p,k", [(7, 2), (7, 3), (11, 2), (13, 3), (29, 2), (7, 4)])
def test_modulus_is_first_irreducible(p, k):
    mod = first_irreducible(p, k)
    assert len(mod) == k + 1 and mod[-1] == 1
    assert gf_irreducible_p([ZZ(c) for c in reversed(mod)], p, ZZ)
    # no coefficient tuple (c0, ..., c_{k-1}) before it is irreducible
    for low in product(range(p), repeat=k):
        if low == mod[:-1]:
            break
        assert not gf_irreducible_p([ZZ(1)] + [ZZ(c) for c in reversed(low)], p, ZZ)


def test_bad_characteristic():
    with pytest.raises(FieldError):
        fq_make(5)
    with pytest.raises(FieldError):
        fq_make(9)
    with pytest.raises(FieldError):
        fq_make(7, 0)


@given(data=st.data())
@settings(max_examples=300)
def test_mul_matches_sympy(ctx, data):
    a = data.draw(st.integers(0, ctx.q - 1))
    b = data.draw(st.integers(0, ctx.q - 1))
    assert ctx.mul(a, b) == sympy_mul(ctx, a, b)


@given(data=st.data())
@settings(max_examples=300)
def test_field_axioms(ctx, data):
    a, b, c = (data.draw(st.integers(0, ctx.q - 1)) for _ in range(3))
    assert ctx.add(a, ctx.add(b, c)) == ctx.add(ctx.add(a, b), c)
    assert ctx.mul(a, ctx.mul(b, c)) == ctx.mul(ctx.mul(a, b), c)
    assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
    assert ctx.add(a, ctx.neg(a)) == 0
    assert ctx.sub(ctx.add(a, b), b) == a
    if a:
        assert ctx.mul(a, ctx.inv(a)) == 1
        assert ctx.div(ctx.mul(a, b), a) == b


@given(data=st.data())
@settings(max_examples=300)
def test_frobenius_is_a_field_automorphism(ctx, data):
    a = data.draw(st.integers(0, ctx.q - 1))
    b = data.draw(st.integers(0, ctx.q - 1))
    assert ctx.frobenius(ctx.add(a, b)) == ctx.add(ctx.frobenius(a), ctx.frobenius(b))
    assert ctx.frobenius(ctx.mul(a, b)) == ctx.mul(ctx.frobenius(a), ctx.frobenius(b))
    assert ctx.frobenius(a, ctx.k) == a
    assert ctx.pow(a, ctx.q) == a


def test_large_field_without_tables():
    # above the log-table limit multiplication goes through polynomial reduction
    ctx = fq_make(7, 8)
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, ctx.q, size=(200, 2)).tolist():
        assert ctx.mul(a, b) == sympy_mul(ctx, a, b)
        if a:
            assert ctx.mul(a, ctx.inv(a)) == 1


def test_sqrt_and_squares(ctx):
    squares = [a for a in range(ctx.q) if ctx.is_square(a)]
    assert len(squares) == (ctx.q - 1) // 2 + 1
    for a in squares[:200]:
        r = ctx.sqrt(a)
        assert ctx.mul(r, r) == a
        assert ctx.key(r) <= ctx.key(ctx.neg(r))
    non = next(a for a in range(ctx.q) if not ctx.is_square(a))
    assert ctx.sqrt(non) is None


def test_primitive_element(ctx):
    g = ctx.primitive_element
    assert ctx.order(g) == ctx.q - 1
    for l in set(_prime_factors(ctx.q - 1)):
        assert ctx.pow(g, (ctx.q - 1) // l) != 1


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    return out + ([n] if n > 1 else [])


def test_roots_of_unity(ctx):
    for n in (2, 3, 4, 5, 6):
        if (ctx.q - 1) % n:
            with pytest.raises(FieldError):
                primitive_root_of_unity(ctx, n)
            continue
        rs = roots_of_unity(ctx, n)
        assert len(set(rs)) == n
        assert all(ctx.pow(r, n) == 1 for r in rs)
        assert ctx.order(primitive_root_of_unity(ctx, n)) == n


@pytest.mark.parametrize("p,k", [(7, 1), (7, 2), (11, 2), (13, 3)])
def test_vector_ops_match_scalar(p, k):
    ctx = fq_make(p, k)
    vf = ctx.vec
    rng = np.random.default_rng(p * 10 + k)
    a = rng.integers(0, ctx.q, 10_000)
    b = rng.integers(0, ctx.q, 10_000)
    pairs = list(zip(a.tolist(), b.tolist()))
    assert vf.add(a, b).tolist() == [ctx.add(x, y) for x, y in pairs]
    assert vf.sub(a, b).tolist() == [ctx.sub(x, y) for x, y in pairs]
    assert vf.mul(a, b).tolist() == [ctx.mul(x, y) for x, y in pairs]
    assert vf.pow(a, 5).tolist() == [ctx.pow(x, 5) for x in a.tolist()]
    sq = vf.sqrt_table
    for x in range(ctx.q):
        r = int(sq[x])
        assert (r == -1) == (not ctx.is_square(x))
        if r >= 0:
            assert r == ctx.sqrt(x)


def test_elem_wrapper():
    F = fq_make(7, 2)
    a, b = F.elem(10), F.elem(33)
    assert (a + b).code == F.add(10, 33)
    assert (a * b / b) == a
    assert a - a == 0
    assert 3 * a == a + a + a
    assert (a**48) == 1
    assert isinstance(a.inv(), FqElem)
    with pytest.raises(FieldError):
        a + fq_make(11).elem(1)


def test_serialisation_roundtrip(ctx):
    for a in range(0, ctx.q, max(1, ctx.q // 50)):
        assert parse_elem(ctx, format_elem(ctx, a)) == a
    assert parse_ctx(format_ctx(ctx)) == ctx
    with pytest.raises(FieldError):
        parse_elem(ctx, ",".join(["0"] * (ctx.k + 1)))


def test_dense_poly_roots_and_gcd():
    F = fq_make(11)
    f = DensePoly.from_ints(F, [-6, 11, -6, 1])  # (X-1)(X-2)(X-3)
    assert f.roots() == [1, 2, 3]
    g = DensePoly.from_ints(F, [2, -3, 1])  # (X-1)(X-2)
    assert f.gcd(g) == g.monic()
    x = DensePoly.x(F)
    assert f.compose(x + DensePoly(F, [1])).roots() == [0, 1, 2]


@pytest.mark.parametrize("p", [7, 11, 13, 17])
@pytest.mark.parametrize("coeffs", [[1, 0, 1], [2, 1, 0, 1], [1, 1, 1, 1, 1], [3, 0, 0, 0, 0, 1], [1, 2, 3, 4, 5, 6, 1]])
def test_splitting_degree_matches_factorisation(p, coeffs):
    poly = Poly(list(reversed(coeffs)), X, domain=GF(p))
    degrees = [fac.degree() for fac, _ in poly.factor_list()[1]]
    assert splitting_degree(p, coeffs) == math.lcm(*degrees)


def test_power_series_ring():
    F = fq_make(13)
    t = PowerSeries.t(F, 20)
    one = PowerSeries.const(F, 1, 20)
    geo = (one - t).inverse()
    assert all(geo[i] == 1 for i in range(20))
    assert ((one + t) ** 13)[13] == 1 and ((one + t) ** 13)[1] == 0
    assert (t**3).valuation() == 3
    assert (geo * (one - t)) == one
    with pytest.raises(ZeroDivisionError):
        t.inverse()


def test_documented_choices():
    assert fq_make(7, 2).modulus == (1, 0, 1)
    assert fq_make(7).sqrt(2) == 3
    assert fq_make(7).primitive_element == 3
    assert fq_make(11).primitive_element == 2
    F7, F49 = fq_make(7), fq_make(7, 2)
    assert F7.inv(3) == 5 and F7.pow(3, 6) == 1
    assert F7.sqrt(3) is None and F49.sqrt(0) == 0
    x = F49.from_coeffs([0, 1])
    assert F49.mul(x, x) == 6
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)


def test_documented_roots_frobenius_splitting_series():
    F11, F29, F7, F49 = fq_make(11), fq_make(29), fq_make(7), fq_make(7, 2)
    assert set(roots_of_unity(F11, 5)) == {1, 3, 9, 5, 4}
    assert 12 in roots_of_unity(F29, 4)
    with pytest.raises(FieldError):
        roots_of_unity(F7, 5)
    x = F49.from_coeffs([0, 1])
    assert F7.frobenius(3) == 3
    assert F49.frobenius(x, 2) == x
    assert F49.frobenius(x) == F49.neg(x)
    assert splitting_degree(7, [-2, 0, 1]) == 1
    assert splitting_degree(7, [-3, 0, 1]) == 2
    assert splitting_degree(7, [0, 1]) == 1
    t3 = PowerSeries.t(F7, 3)
    one3 = PowerSeries.const(F7, 1, 3)
    assert (one3 + t3) * (one3 - t3) == PowerSeries(F7, [1, 0, 6], 3)
    assert PowerSeries.t(F7, 5) ** 2 == PowerSeries(F7, [0, 0, 1], 5)
    assert PowerSeries(F7, [0, 1, 2], 4) ** 2 == PowerSeries(F7, [0, 0, 1, 4], 4)

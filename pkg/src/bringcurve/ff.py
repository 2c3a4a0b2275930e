"""Finite fields F_{p^k}, dense polynomials and truncated power series.

Elements of a field are carried around as plain integer *codes*: the element
c_0 + c_1 X + ... + c_{k-1} X^{k-1} has code sum(c_i * p**i), so the prime
subfield is embedded as 0..p-1.  ``FqElem`` wraps a code together with its
context for callers that want operator syntax.

The element order used for every "smallest"/"first" tie-break is the
lexicographic order on the coefficient tuple (c_0, ..., c_{k-1}); see
``FieldCtx.key``.
"""

from __future__ import annotations

import math
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

LOG_TABLE_LIMIT = 1 << 20
VECTOR_TABLE_LIMIT = 4096


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- raw polynomial helpers over F_p (lists of ints, low degree first) ------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([v % p for v in out])


def _pdivmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead % p
        q[shift] = coef
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * y) % p
        _trim(a)
    return _trim(q), a


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def _ppowmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin-style test: no common factor with X^{p^i} - X for i <= deg/2."""
    k = len(f) - 1
    if k == 1:
        return True
    if f[0] == 0:
        return False
    xp = [0, 1]
    for _ in range(k // 2):
        xp = _ppowmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, _trim(diff), p)) > 1:
            return False
    return True


def first_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree k over F_p."""
    if k == 1:
        return (0, 1)
    for low in product(range(p), repeat=k):
        f = list(low) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {k} mod {p}")  # pragma: no cover


# --- field context -----------------------------------------------------------


class FieldCtx:
    """The field F_{p^k} = F_p[X]/(modulus).  Immutable once built."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p < 7:
            raise FieldError("characteristic must be at least 7")
        if k < 1:
            raise FieldError("extension degree must be positive")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = first_irreducible(p, k)

    def __repr__(self) -> str:
        return f"FieldCtx({self.p}^{self.k})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    # encoding

    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, coeffs: Iterable[int]) -> int:
        c = [x % self.p for x in coeffs]
        if len(c) > self.k:
            c = _pdivmod(c, self.modulus, self.p)[1]
        code = 0
        for x in reversed(c):
            code = code * self.p + x
        return code

    def embed(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    key = coeffs

    @cached_property
    def elements_lex(self) -> list[int]:
        """All codes in lexicographic element order."""
        return sorted(range(self.q), key=self.coeffs)

    # arithmetic

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a + b) % p
        res, mult = 0, 1
        while a or b:
            res += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return res

    def neg(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return -a % p
        res, mult = 0, 1
        while a:
            res += (-(a % p) % p) * mult
            a //= p
            mult *= p
        return res

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self.q <= LOG_TABLE_LIMIT:
            exp, log = self._tables
            return exp[(log[a] + log[b]) % (self.q - 1)]
        prod = _pmul(self.coeffs(a), self.coeffs(b), self.p)
        return self.from_coeffs(prod)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self.q <= LOG_TABLE_LIMIT:
            exp, log = self._tables
            return exp[(-log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.k == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        if self.q <= LOG_TABLE_LIMIT:
            exp, log = self._tables
            return exp[log[a] * e % (self.q - 1)]
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a: int, i: int = 1) -> int:
        """a^(p^i)."""
        return self.pow(a, self.p ** (i % self.k))

    def smul(self, n: int, a: int) -> int:
        """Integer multiple n*a."""
        return self.mul(n % self.p, a)

    def is_square(self, a: int) -> bool:
        return a == 0 or self.pow(a, (self.q - 1) // 2) == 1

    def sqrt(self, a: int) -> int | None:
        """Square root of a, choosing the lexicographically smaller of +-r."""
        if a == 0:
            return 0
        if not self.is_square(a):
            return None
        q = self.q
        if q % 4 == 3:
            r = self.pow(a, (q + 1) // 4)
        else:
            r = self._tonelli_shanks(a)
        return min(r, self.neg(r), key=self.key)

    def _tonelli_shanks(self, a: int) -> int:
        odd, s = self.q - 1, 0
        while odd % 2 == 0:
            odd //= 2
            s += 1
        z = self._non_residue
        m, c = s, self.pow(z, odd)
        t, r = self.pow(a, odd), self.pow(a, (odd + 1) // 2)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = self.mul(t2, t2)
                i += 1
            b = c
            for _ in range(m - i - 1):
                b = self.mul(b, b)
            m, c = i, self.mul(b, b)
            t, r = self.mul(t, c), self.mul(r, b)
        return r

    @cached_property
    def _non_residue(self) -> int:
        minus_one = self.neg(1)
        for z in self.elements_lex:
            if z and self.pow(z, (self.q - 1) // 2) == minus_one:
                return z
        raise FieldError("no quadratic non-residue")  # pragma: no cover

    def _poly_pow(self, a: int, e: int) -> int:
        result, base = [1], list(self.coeffs(a))
        while e:
            if e & 1:
                result = _pdivmod(_pmul(result, base, self.p), self.modulus, self.p)[1]
            base = _pdivmod(_pmul(base, base, self.p), self.modulus, self.p)[1]
            e >>= 1
        return self.from_coeffs(result)

    @cached_property
    def primitive_element(self) -> int:
        """Smallest generator of the multiplicative group (lexicographic order)."""
        n = self.q - 1
        ell = prime_factors(n)
        powf = (lambda a, e: pow(a, e, self.p)) if self.k == 1 else self._poly_pow
        for g in self.elements_lex:
            if g and all(powf(g, n // l) != 1 for l in ell):
                return g
        raise FieldError("no primitive element")  # pragma: no cover

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]]:
        g = self.primitive_element
        n = self.q - 1
        exp = [0] * n
        log = [0] * self.q
        x = [1]
        gc = list(self.coeffs(g))
        for i in range(n):
            code = self.from_coeffs(x)
            exp[i] = code
            log[code] = i
            x = _pdivmod(_pmul(x, gc, self.p), self.modulus, self.p)[1]
        return exp, log

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.q - 1
        for l in prime_factors(self.q - 1):
            while n % l == 0 and self.pow(a, n // l) == 1:
                n //= l
        return n

    # element wrappers

    def __call__(self, value) -> "FqElem":
        if isinstance(value, FqElem):
            return value
        if isinstance(value, int):
            return FqElem(self, self.embed(value))
        return FqElem(self, self.from_coeffs(value))

    def elem(self, code: int) -> "FqElem":
        return FqElem(self, code)

    @cached_property
    def vec(self) -> "VecField":
        return VecField(self)


def fq_make(p: int, k: int = 1) -> FieldCtx:
    return _ctx_cache(p, k)


_CTX: dict[tuple[int, int], FieldCtx] = {}


def _ctx_cache(p: int, k: int) -> FieldCtx:
    key = (p, k)
    if key not in _CTX:
        _CTX[key] = FieldCtx(p, k)
    return _CTX[key]


class FqElem:
    """A field element with operator syntax.  Hashable, immutable."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    def _other(self, other) -> int:
        if isinstance(other, FqElem):
            if other.ctx != self.ctx:
                raise FieldError("mixed field contexts")
            return other.code
        if isinstance(other, int):
            return self.ctx.embed(other)
        return NotImplemented

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.code)

    def __add__(self, other):
        return FqElem(self.ctx, self.ctx.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FqElem(self.ctx, self.ctx.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FqElem(self.ctx, self.ctx.sub(self._other(other), self.code))

    def __mul__(self, other):
        return FqElem(self.ctx, self.ctx.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FqElem(self.ctx, self.ctx.div(self.code, self._other(other)))

    def __rtruediv__(self, other):
        return FqElem(self.ctx, self.ctx.div(self._other(other), self.code))

    def __neg__(self):
        return FqElem(self.ctx, self.ctx.neg(self.code))

    def __pow__(self, e: int):
        return FqElem(self.ctx, self.ctx.pow(self.code, e))

    def inv(self) -> "FqElem":
        return FqElem(self.ctx, self.ctx.inv(self.code))

    def sqrt(self) -> "FqElem | None":
        r = self.ctx.sqrt(self.code)
        return None if r is None else FqElem(self.ctx, r)

    def frobenius(self, i: int = 1) -> "FqElem":
        return FqElem(self.ctx, self.ctx.frobenius(self.code, i))

    def __eq__(self, other) -> bool:
        if isinstance(other, FqElem):
            return self.ctx == other.ctx and self.code == other.code
        if isinstance(other, int):
            return self.code == self.ctx.embed(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.ctx.k, self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        if self.ctx.k == 1:
            return f"{self.code}"
        return f"FqElem({format_elem(self.ctx, self.code)})"


def roots_of_unity(ctx: FieldCtx, n: int) -> list[int]:
    """All n-th roots of unity as powers 1, z, z^2, ... of the primitive root."""
    z = primitive_root_of_unity(ctx, n)
    out = [1]
    for _ in range(n - 1):
        out.append(ctx.mul(out[-1], z))
    return out


def primitive_root_of_unity(ctx: FieldCtx, n: int) -> int:
    """Smallest (lexicographic) primitive n-th root of unity."""
    if n < 1 or (ctx.q - 1) % n:
        raise FieldError(f"no primitive {n}-th roots of unity in F_{ctx.q}")
    g = ctx.primitive_element
    base = ctx.pow(g, (ctx.q - 1) // n)
    gens = [ctx.pow(base, j) for j in range(1, n + 1) if math.gcd(j, n) == 1]
    return min(gens, key=ctx.key)


# --- vectorised arithmetic for exhaustive searches --------------------------


class VecField:
    """numpy counterparts of the field operations on arrays of codes.

    Prime fields use modular integer arithmetic; extension fields use full
    addition and multiplication tables and so are limited to small q.
    """

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.p = ctx.p
        self.q = ctx.q
        self.prime = ctx.k == 1
        self.dtype = np.int64
        if not self.prime:
            if ctx.q > VECTOR_TABLE_LIMIT:
                raise FieldError(f"F_{ctx.q} is too large for table arithmetic")
            q = ctx.q
            codes = np.arange(q, dtype=np.int64)
            digits = np.stack([(codes // ctx.p**i) % ctx.p for i in range(ctx.k)])
            weights = np.array([ctx.p**i for i in range(ctx.k)], dtype=np.int64)
            summed = (digits[:, :, None] + digits[:, None, :]) % ctx.p
            self.add_table = np.tensordot(weights, summed, axes=1).astype(np.int32)
            self.neg_table = (((-digits) % ctx.p) * weights[:, None]).sum(axis=0)
            exp, log = ctx._tables
            exp_a = np.array(exp, dtype=np.int64)
            log_a = np.array(log, dtype=np.int64)
            mt = exp_a[(log_a[:, None] + log_a[None, :]) % (q - 1)]
            mt[0, :] = 0
            mt[:, 0] = 0
            self.mul_table = mt.astype(np.int32)
        self._pow: dict[int, np.ndarray] = {}

    def arange(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def add(self, a, b):
        if self.prime:
            return (a + b) % self.p
        return self.add_table[a, b]

    def neg(self, a):
        if self.prime:
            return (-a) % self.p
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.prime:
            return (a * b) % self.p
        return self.mul_table[a, b]

    def pow_table(self, e: int) -> np.ndarray:
        if e not in self._pow:
            ctx = self.ctx
            self._pow[e] = np.array([ctx.pow(x, e) for x in range(self.q)], dtype=np.int64)
        return self._pow[e]

    def pow(self, a, e: int):
        return self.pow_table(e)[a]

    @cached_property
    def sqrt_table(self) -> np.ndarray:
        """sqrt_table[a] is the chosen root of a, or -1 for non-squares."""
        ctx = self.ctx
        tab = np.full(self.q, -1, dtype=np.int64)
        for x in ctx.elements_lex[::-1]:
            tab[ctx.mul(x, x)] = x
        # reverse traversal leaves the lexicographically smallest root in place
        return tab

    @cached_property
    def inv_table(self) -> np.ndarray:
        ctx = self.ctx
        return np.array([0] + [ctx.inv(x) for x in range(1, self.q)], dtype=np.int64)

    def inv(self, a):
        return self.inv_table[a]

    def const(self, n: int) -> int:
        return self.ctx.embed(n)


# --- dense univariate polynomials -------------------------------------------


class DensePoly:
    """Polynomial over a FieldCtx, coefficients low degree first."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable[int]):
        self.ctx = ctx
        self.coeffs = _trim(list(coeffs))

    @classmethod
    def from_ints(cls, ctx: FieldCtx, coeffs: Iterable[int]) -> "DensePoly":
        return cls(ctx, [ctx.embed(c) for c in coeffs])

    @classmethod
    def x(cls, ctx: FieldCtx) -> "DensePoly":
        return cls(ctx, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "DensePoly") -> None:
        if other.ctx != self.ctx:
            raise FieldError("mixed field contexts")

    def __eq__(self, other) -> bool:
        return isinstance(other, DensePoly) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs))

    def __repr__(self) -> str:
        return f"DensePoly({self.coeffs})"

    def __add__(self, other: "DensePoly") -> "DensePoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        out = [self.ctx.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
        return DensePoly(self.ctx, out)

    def __neg__(self) -> "DensePoly":
        return DensePoly(self.ctx, [self.ctx.neg(c) for c in self.coeffs])

    def __sub__(self, other: "DensePoly") -> "DensePoly":
        return self + (-other)

    def __mul__(self, other: "DensePoly") -> "DensePoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return DensePoly(self.ctx, [])
        ctx = self.ctx
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
        return DensePoly(ctx, out)

    def scale(self, c: int) -> "DensePoly":
        return DensePoly(self.ctx, [self.ctx.mul(c, x) for x in self.coeffs])

    def divmod(self, other: "DensePoly") -> tuple["DensePoly", "DensePoly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        a = list(self.coeffs)
        b = other.coeffs
        inv_lead = ctx.inv(b[-1])
        q = [0] * max(len(a) - len(b) + 1, 0)
        while len(a) >= len(b) and a:
            shift = len(a) - len(b)
            coef = ctx.mul(a[-1], inv_lead)
            q[shift] = coef
            for i, y in enumerate(b):
                a[shift + i] = ctx.sub(a[shift + i], ctx.mul(coef, y))
            _trim(a)
        return DensePoly(ctx, q), DensePoly(ctx, a)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "DensePoly":
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.coeffs[-1]))

    def gcd(self, other: "DensePoly") -> "DensePoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, e: int, mod: "DensePoly") -> "DensePoly":
        result = DensePoly(self.ctx, [1])
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = self.ctx.add(self.ctx.mul(acc, x), c)
        return acc

    def compose(self, other: "DensePoly") -> "DensePoly":
        """self(other(X))."""
        acc = DensePoly(self.ctx, [])
        for c in reversed(self.coeffs):
            acc = acc * other + DensePoly(self.ctx, [c])
        return acc

    def roots(self) -> list[int]:
        """Roots in the base field by exhaustive evaluation (small fields only)."""
        return [x for x in self.ctx.elements_lex if self(x) == 0]


def splitting_degree(p: int, f: DensePoly | Sequence[int]) -> int:
    """Degree of the splitting field of f over F_p (distinct-degree factorisation)."""
    ctx = fq_make(p, 1)
    if not isinstance(f, DensePoly):
        f = DensePoly.from_ints(ctx, f)
    if f.is_zero():
        raise FieldError("zero polynomial has no splitting field")
    g = f.monic()
    x = DensePoly.x(ctx)
    degrees = []
    d = 0
    xpow = x
    while g.degree > 0:
        d += 1
        xpow = xpow.powmod(p, g)
        h = g.gcd(xpow - x)
        if h.degree > 0:
            degrees.append(d)
            while True:
                c = g.gcd(h)
                if c.degree == 0:
                    break
                g = g // c
            if g.degree > 0:
                xpow = xpow % g
    return math.lcm(*degrees) if degrees else 1


# --- truncated power series --------------------------------------------------


class PowerSeries:
    """Element of F_q[[t]] known modulo t^prec."""

    __slots__ = ("ctx", "coeffs", "prec")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable[int], prec: int):
        c = list(coeffs)[:prec]
        c += [0] * (prec - len(c))
        self.ctx = ctx
        self.coeffs = c
        self.prec = prec

    @classmethod
    def t(cls, ctx: FieldCtx, prec: int) -> "PowerSeries":
        return cls(ctx, [0, 1], prec)

    @classmethod
    def const(cls, ctx: FieldCtx, c: int, prec: int) -> "PowerSeries":
        return cls(ctx, [c], prec)

    def _check(self, other: "PowerSeries") -> int:
        if other.ctx != self.ctx:
            raise FieldError("mixed field contexts")
        return min(self.prec, other.prec)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries) or other.ctx != self.ctx:
            return NotImplemented
        n = min(self.prec, other.prec)
        return self.coeffs[:n] == other.coeffs[:n]

    def __repr__(self) -> str:
        terms = [f"{c}*t^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"PowerSeries({' + '.join(terms) or '0'} + O(t^{self.prec}))"

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = self._check(other)
        add = self.ctx.add
        return PowerSeries(self.ctx, [add(self.coeffs[i], other.coeffs[i]) for i in range(n)], n)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(self.ctx, [self.ctx.neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def __mul__(self, other) -> "PowerSeries":
        if isinstance(other, int):
            return self.scale(self.ctx.embed(other))
        n = self._check(other)
        ctx = self.ctx
        a, b = self.coeffs[:n], other.coeffs[:n]
        if ctx.k == 1:
            conv = np.convolve(np.array(a, dtype=object), np.array(b, dtype=object))[:n]
            return PowerSeries(ctx, [int(v) % ctx.p for v in conv], n)
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                for j in range(n - i):
                    if b[j]:
                        out[i + j] = ctx.add(out[i + j], ctx.mul(x, b[j]))
        return PowerSeries(ctx, out, n)

    def scale(self, c: int) -> "PowerSeries":
        return PowerSeries(self.ctx, [self.ctx.mul(c, x) for x in self.coeffs], self.prec)

    def __pow__(self, e: int) -> "PowerSeries":
        if e < 0:
            return self.inverse() ** (-e)
        result = PowerSeries.const(self.ctx, 1, self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "PowerSeries":
        ctx = self.ctx
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = ctx.inv(self.coeffs[0])
        out = [inv0]
        for n in range(1, self.prec):
            acc = 0
            for i in range(1, n + 1):
                acc = ctx.add(acc, ctx.mul(self.coeffs[i], out[n - i]))
            out.append(ctx.neg(ctx.mul(acc, inv0)))
        return PowerSeries(ctx, out, self.prec)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None if zero to precision."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None


# --- serialisation -----------------------------------------------------------


def format_elem(ctx: FieldCtx, code: int) -> str:
    return ",".join(str(c) for c in ctx.coeffs(code))


def parse_elem(ctx: FieldCtx, text: str) -> int:
    parts = [int(s) for s in text.split(",")]
    if len(parts) > ctx.k or any(not 0 <= c < ctx.p for c in parts):
        raise FieldError(f"bad element {text!r} for F_{ctx.q}")
    return ctx.from_coeffs(parts)


def format_ctx(ctx: FieldCtx) -> str:
    return f"{ctx.p}^{ctx.k}:" + ",".join(str(c) for c in ctx.modulus)


def parse_ctx(text: str) -> FieldCtx:
    head, _, mod = text.partition(":")
    p, k = (int(s) for s in head.split("^"))
    ctx = fq_make(p, k)
    if mod and tuple(int(s) for s in mod.split(",")) != ctx.modulus:
        raise FieldError(f"modulus {mod} is not the canonical choice for F_{p}^{k}")
    return ctx

"""Dense univariate polynomials over a field context.

Coefficients are stored as raw field values (index = degree) so that the
inner loops avoid wrapper allocation.  The zero polynomial has no
coefficients and degree -1.
"""

from __future__ import annotations

import itertools
import math
from enum import Enum
from fractions import Fraction

from . import _rawpoly
from .errors import (
    CharacteristicZero,
    ConstantPolynomial,
    DivisionByZero,
    FactorizationOutOfScope,
    MixedContexts,
    ParseError,
)
from .parsing import parse_expression
from .scalars import Extension, FieldContext, Rationals, Scalar, format_univariate


class Answer(Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


class Poly:
    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx: FieldContext, coeffs=()):
        self.ctx = ctx
        self.coeffs = tuple(_rawpoly.trim(ctx, coeffs))
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def from_scalars(cls, ctx, values) -> "Poly":
        return cls(ctx, [ctx.coerce(v) for v in values])

    @classmethod
    def const(cls, ctx, c) -> "Poly":
        return cls(ctx, [ctx.coerce(c)])

    @classmethod
    def x(cls, ctx) -> "Poly":
        return cls(ctx, [ctx.zero, ctx.one])

    @classmethod
    def monomial(cls, ctx, k: int, c=1) -> "Poly":
        return cls(ctx, [ctx.zero] * k + [ctx.coerce(c)])

    @classmethod
    def parse(cls, ctx, text: str, var: str = "x") -> "Poly":
        """Parse e.g. ``"x^2 - 1/2*x + 7"``; only the variable ``var`` is allowed."""
        return parse_expression(text, _PolyAlgebra(ctx, var))

    # -- basic properties ---------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lc(self) -> Scalar:
        if not self.coeffs:
            return Scalar(self.ctx, self.ctx.zero)
        return Scalar(self.ctx, self.coeffs[-1])

    def coeff(self, k: int) -> Scalar:
        if 0 <= k < len(self.coeffs):
            return Scalar(self.ctx, self.coeffs[k])
        return Scalar(self.ctx, self.ctx.zero)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return Poly(self.ctx, _rawpoly.scale(self.ctx, self.coeffs, self.ctx.inv(self.coeffs[-1])))

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ctx.one

    # -- arithmetic -----------------------------------------------------

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise MixedContexts(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return Poly(self.ctx, [self.ctx.coerce(other)])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Poly(self.ctx, _rawpoly.add(self.ctx, self.coeffs, o.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Poly(self.ctx, _rawpoly.sub(self.ctx, self.coeffs, o.coeffs))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return Poly(self.ctx, _rawpoly.neg(self.ctx, self.coeffs))

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Poly(self.ctx, _rawpoly.mul(self.ctx, self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly(self.ctx, [self.ctx.one])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        return divrem(self, self._lift(other))

    def __floordiv__(self, other):
        return divrem(self, self._lift(other))[0]

    def __mod__(self, other):
        return divrem(self, self._lift(other))[1]

    def divides(self, other: "Poly") -> bool:
        return not (other % self)

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divrem(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, Scalar)):
            try:
                return self == self._lift(other)
            except (MixedContexts, DivisionByZero):
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.coeffs))
        return self._hash

    def __str__(self):
        return format_univariate(self.ctx, self.coeffs, "x")

    def __repr__(self):
        return f"Poly({self.ctx}, {self})"

    def sort_key(self):
        return (self.degree, str(self))

    # -- calculus / evaluation -----------------------------------------

    def derivative(self, k: int = 1) -> "Poly":
        return derivative(self, k)

    def p_adic_derivative(self, k: int) -> "Poly":
        return p_adic_derivative(self, k)

    def __call__(self, a):
        return evaluate(self, a)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()


class _PolyAlgebra:
    def __init__(self, ctx, var):
        self.ctx = ctx
        self.varname = var

    def const(self, value):
        return Poly(self.ctx, [self.ctx.coerce(value)])

    def var(self, name):
        if name == self.varname:
            return Poly.x(self.ctx)
        if name == "t" and isinstance(self.ctx, Extension):
            return Poly(self.ctx, [self.ctx.gen.v])
        raise ParseError(f"unknown variable {name!r} (expected {self.varname!r})")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def pow(self, a, n):
        return a**n


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def _digits(n: int, p: int) -> list[int]:
    out = []
    while n:
        out.append(n % p)
        n //= p
    return out


def derivative(f: Poly, k: int = 1) -> Poly:
    """The k-th formal derivative."""
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    F = f.ctx
    out = [F.mul(F.from_int(_falling(i, k)), c) for i, c in enumerate(f.coeffs) if i >= k]
    return Poly(F, out)


def p_adic_digit_factor(ell: int, k: int, p: int) -> int:
    """prod_i l_i (l_i - 1) ... (l_i - k_i + 1) over base-p digits (integer)."""
    ld, kd = _digits(ell, p), _digits(k, p)
    out = 1
    for i, ki in enumerate(kd):
        if ki:
            li = ld[i] if i < len(ld) else 0
            out *= _falling(li, ki)
    return out


def p_adic_derivative(f: Poly, k: int) -> Poly:
    """The characteristic-p derivative f^[k], built monomial-wise from base-p digits."""
    F = f.ctx
    p = F.characteristic
    if p == 0:
        raise CharacteristicZero("the p-adic derivative needs positive characteristic")
    if k == 0:
        return f
    out = [F.zero] * max(len(f.coeffs) - k, 0)
    for ell, c in enumerate(f.coeffs):
        if ell < k or F.is_zero(c):
            continue
        out[ell - k] = F.mul(F.from_int(p_adic_digit_factor(ell, k, p)), c)
    return Poly(F, out)


def taylor_coefficient(f: Poly, k: int, lam) -> Scalar:
    """Coefficient of (x - lam)^k in f.

    Char 0: f^(k)(lam)/k!.  Char p: f^[k](lam)/prod_i k_i! over base-p digits.
    """
    F = f.ctx
    p = F.characteristic
    if p == 0:
        return evaluate(derivative(f, k), lam) / math.factorial(k)
    denom = 1
    for d in _digits(k, p):
        denom *= math.factorial(d)
    return evaluate(p_adic_derivative(f, k), lam) / F(denom)


def divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if a.ctx != b.ctx:
        raise MixedContexts(f"{a.ctx} vs {b.ctx}")
    if not b:
        raise DivisionByZero("polynomial division by zero")
    q, r = _rawpoly.divmod_(a.ctx, a.coeffs, b.coeffs)
    return Poly(a.ctx, q), Poly(a.ctx, r)


def evaluate(f: Poly, a):
    """Horner evaluation at a scalar (same field or an extension of it) or a Matrix."""
    from .linalg import Matrix

    if isinstance(a, Matrix):
        if a.ctx != f.ctx:
            raise MixedContexts(f"{a.ctx} vs {f.ctx}")
        n = a.nrows
        result = Matrix.zeros(f.ctx, n, n)
        ident = Matrix.identity(f.ctx, n)
        for c in reversed(f.coeffs):
            result = result @ a + ident.scale_raw(c)
        return result
    F = f.ctx
    if not isinstance(a, Scalar):
        a = F(a)
    if a.ctx == F:
        acc = F.zero
        for c in reversed(f.coeffs):
            acc = F.add(F.mul(acc, a.v), c)
        return Scalar(F, acc)
    E = a.ctx
    if isinstance(E, Extension) and E.base == F:
        acc = E.zero
        for c in reversed(f.coeffs):
            acc = E.add(E.mul(acc, a.v), E.embed(c))
        return Scalar(E, acc)
    raise MixedContexts(f"cannot evaluate a polynomial over {F} at an element of {E}")


def in_xp_subring(f: Poly) -> bool:
    """True iff f lies in F[x^p]."""
    p = f.ctx.characteristic
    if p == 0:
        raise CharacteristicZero("F[x^p] membership needs positive characteristic")
    return all(f.ctx.is_zero(c) for i, c in enumerate(f.coeffs) if i % p)


# -- irreducibility and factorization ----------------------------------


def monic_polys(F: FieldContext, d: int):
    """All monic polynomials of degree d over a finite field."""
    for tail in itertools.product(list(F.elements()), repeat=d):
        yield Poly(F, list(tail) + [F.one])


def _is_finite_field(F) -> bool:
    return F.order is not None


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(f: Poly) -> list[Scalar]:
    """Distinct rational roots of a polynomial over Q (rational root test)."""
    F = f.ctx
    if not isinstance(F, Rationals):
        raise TypeError("rational_roots needs a polynomial over Q")
    if f.degree < 1:
        return []
    den = 1
    for c in f.coeffs:
        den = den * int(c.denominator) // math.gcd(den, int(c.denominator))
    ints = [int(c * den) for c in f.coeffs]
    roots = []
    low = 0
    while ints[low] == 0:
        low += 1
    if low:
        roots.append(F(0))
    ints = ints[low:]
    if len(ints) == 1:
        return roots
    cands = set()
    for num in _divisors(ints[0]):
        for dd in _divisors(ints[-1]):
            cands.add(Fraction(num, dd))
            cands.add(Fraction(-num, dd))
    for r in sorted(cands):
        s = F(r)
        if evaluate(f, s).is_zero():
            roots.append(s)
    return roots


def find_factor(f: Poly):
    """A monic proper factor of f, or None when none is found.

    Exhaustive over finite fields; over Q only linear factors are searched.
    """
    F = f.ctx
    if f.degree < 2:
        return None
    if _is_finite_field(F):
        for a in F.scalars():
            if evaluate(f, a).is_zero():
                return Poly(F, [F.neg(a.v), F.one])
        for d in range(2, f.degree // 2 + 1):
            for g in monic_polys(F, d):
                if not (f % g):
                    return g
        return None
    if isinstance(F, Rationals):
        roots = rational_roots(f)
        if roots:
            return Poly(F, [F.neg(roots[0].v), F.one])
    return None


def is_irreducible(f: Poly) -> Answer:
    """Yes/No/Unknown irreducibility verdict.

    Finite fields: exact, by trial division.  Q: exact up to degree 3 via the
    rational root test (and No whenever a rational root exists).
    """
    if f.degree < 1:
        raise ConstantPolynomial("irreducibility is undefined for constants")
    if f.degree == 1:
        return Answer.YES
    F = f.ctx
    if _is_finite_field(F):
        return Answer.NO if find_factor(f) is not None else Answer.YES
    if isinstance(F, Rationals):
        if rational_roots(f):
            return Answer.NO
        return Answer.YES if f.degree <= 3 else Answer.UNKNOWN
    return Answer.UNKNOWN


def _squarefree_parts(f: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm (characteristic 0); f monic."""
    out = []
    fp = derivative(f)
    a = f.gcd(fp)
    b = f // a
    c = fp // a
    d = c - derivative(b)
    i = 1
    while b.degree > 0:
        a = b.gcd(d)
        b = b // a
        c = d // a
        if a.degree > 0:
            out.append((a.monic(), i))
        i += 1
        d = c - derivative(b)
    return out


def factor_into_primes(f: Poly) -> list[tuple[Poly, int]]:
    """Monic prime factors with multiplicities; f == f.lc * prod(g**e)."""
    F = f.ctx
    if f.degree < 1:
        return []
    rest = f.monic()
    found: dict[Poly, int] = {}
    if _is_finite_field(F):
        d = 1
        while 2 * d <= rest.degree:
            candidates = (
                [Poly(F, [F.neg(a), F.one]) for a in F.elements()] if d == 1 else monic_polys(F, d)
            )
            for g in candidates:
                while rest.degree >= g.degree:
                    q, r = divrem(rest, g)
                    if r:
                        break
                    found[g] = found.get(g, 0) + 1
                    rest = q
            d += 1
        if rest.degree >= 1:
            found[rest] = found.get(rest, 0) + 1
    elif isinstance(F, Rationals):
        for root in rational_roots(rest):
            g = Poly(F, [F.neg(root.v), F.one])
            while True:
                q, r = divrem(rest, g)
                if r:
                    break
                found[g] = found.get(g, 0) + 1
                rest = q
        if rest.degree >= 1:
            for part, mult in _squarefree_parts(rest):
                if part.degree > 3:
                    raise FactorizationOutOfScope(
                        f"factor {part} of degree {part.degree} is beyond the degree-3 bound over Q"
                    )
                found[part] = found.get(part, 0) + mult
    else:
        if f.degree == 1:
            return [(rest, 1)]
        raise FactorizationOutOfScope(f"factorization over {F} is not supported")
    return sorted(found.items(), key=lambda kv: kv[0].sort_key())

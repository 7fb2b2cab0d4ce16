"""Exact field arithmetic over Q, prime fields F_p and simple extensions.

A :class:`FieldContext` knows how to do arithmetic on *raw* values (``mpq``
for Q, ``int`` residues for F_p, coefficient tuples for extensions).  The
heavier containers (polynomials, matrices, algebra elements) store raw values
and call the context directly; :class:`Scalar` is the user-facing wrapper.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

from . import _rawpoly
from .errors import (
    CharacteristicZero,
    DivisionByZero,
    MixedContexts,
    NotIrreducible,
    NotPrime,
    ParseError,
    SizeGuard,
)
from .parsing import parse_expression

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FieldContext:
    """Common interface of the three field kinds."""

    characteristic: int
    order = None  # number of elements, None when infinite

    # raw-value operations are provided by subclasses

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def eq(self, a, b) -> bool:
        return a == b

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def __call__(self, value) -> "Scalar":
        return Scalar(self, self.coerce(value))

    def coerce(self, value):
        """Turn an int, Fraction, string or Scalar into a raw value."""
        if isinstance(value, Scalar):
            if value.ctx == self:
                return value.v
            if isinstance(self, Extension) and value.ctx == self.base:
                return self.embed(value.v)
            raise MixedContexts(f"cannot coerce element of {value.ctx} into {self}")
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, (Fraction, type(mpq()))):
            return self.from_fraction(Fraction(int(value.numerator), int(value.denominator)))
        if isinstance(value, str):
            return self.parse_raw(value)
        raise TypeError(f"cannot interpret {value!r} as a field element")

    def from_fraction(self, q: Fraction):
        if q.denominator == 1:
            return self.from_int(q.numerator)
        den = self.from_int(q.denominator)
        if self.is_zero(den):
            raise DivisionByZero(f"denominator {q.denominator} vanishes in {self}")
        return self.div(self.from_int(q.numerator), den)

    def parse_raw(self, text: str):
        return parse_expression(text, _ScalarAlgebra(self))

    def parse(self, text: str) -> "Scalar":
        return Scalar(self, self.parse_raw(text))

    def scalars(self):
        """Iterate over all elements of a finite field as Scalars."""
        for v in self.elements():
            yield Scalar(self, v)

    @property
    def zero_scalar(self) -> "Scalar":
        return Scalar(self, self.zero)

    @property
    def one_scalar(self) -> "Scalar":
        return Scalar(self, self.one)


@dataclass(frozen=True)
class Rationals(FieldContext):
    characteristic: int = field(default=0, init=False)

    zero = mpq(0)
    one = mpq(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("division by zero in Q")
        return 1 / a

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int):
        return mpq(n)

    def from_fraction(self, q: Fraction):
        return mpq(q.numerator, q.denominator)

    def format(self, a) -> str:
        return str(a)

    def spec(self) -> str:
        return "q"

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField(FieldContext):
    p: int

    def __post_init__(self):
        if self.p > MAX_PRIME:
            raise SizeGuard(f"prime {self.p} exceeds 2^31")
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    @property
    def order(self) -> int:  # type: ignore[override]
        return self.p

    zero = 0
    one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int):
        return n % self.p

    def elements(self):
        return range(self.p)

    def format(self, a) -> str:
        return str(a)

    def spec(self) -> str:
        return f"fp:{self.p}"

    def __str__(self):
        return f"F_{self.p}"


@dataclass(frozen=True)
class Extension(FieldContext):
    """The field base[t]/(modulus) for an irreducible modulus.

    Raw values are tuples of base raw values of length ``deg(modulus)``.
    ``modulus`` may be given as a Poly over ``base`` or a raw coefficient
    sequence; it is stored monic.
    """

    base: FieldContext
    modulus: tuple

    def __post_init__(self):
        if isinstance(self.base, Extension):
            raise NotIrreducible("extensions are supported one level deep only")
        from .poly import Poly, Answer, is_irreducible

        mod = self.modulus
        if isinstance(mod, Poly):
            if mod.ctx != self.base:
                raise MixedContexts("modulus must be a polynomial over the base field")
            mod = mod.coeffs
        mod = _rawpoly.trim(self.base, mod)
        if len(mod) < 2:
            raise NotIrreducible("modulus must have positive degree")
        inv_lc = self.base.inv(mod[-1])
        mod = tuple(self.base.mul(c, inv_lc) for c in mod)
        object.__setattr__(self, "modulus", mod)
        verdict = is_irreducible(Poly(self.base, mod))
        if verdict is not Answer.YES:
            raise NotIrreducible(
                f"modulus {Poly(self.base, mod)} is not certified irreducible ({verdict.value})"
            )

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.base.characteristic

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def order(self):  # type: ignore[override]
        if self.base.order is None:
            return None
        return self.base.order ** self.degree

    @property
    def zero(self):
        return (self.base.zero,) * self.degree

    @property
    def one(self):
        return (self.base.one,) + (self.base.zero,) * (self.degree - 1)

    @property
    def gen(self) -> "Scalar":
        if self.degree == 1:
            return Scalar(self, (self.base.neg(self.modulus[0]),))
        return Scalar(self, self._pack([self.base.zero, self.base.one]))

    def _pack(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.degree:
            coeffs = _rawpoly.mod(self.base, coeffs, self.modulus)
        return tuple(coeffs) + (self.base.zero,) * (self.degree - len(coeffs))

    def embed(self, a):
        return self._pack([a])

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        prod = _rawpoly.mul(self.base, _rawpoly.trim(self.base, a), _rawpoly.trim(self.base, b))
        return self._pack(_rawpoly.mod(self.base, prod, self.modulus))

    def inv(self, a):
        a_trim = _rawpoly.trim(self.base, a)
        if not a_trim:
            raise DivisionByZero(f"division by zero in {self}")
        return self._pack(_rawpoly.inverse_mod(self.base, a_trim, list(self.modulus)))

    def is_zero(self, a) -> bool:
        return all(self.base.is_zero(x) for x in a)

    def from_int(self, n: int):
        return self.embed(self.base.from_int(n))

    def from_fraction(self, q: Fraction):
        return self.embed(self.base.from_fraction(q))

    def elements(self):
        if self.base.order is None:
            raise TypeError(f"{self} is infinite")
        return itertools.product(self.base.elements(), repeat=self.degree)

    def format(self, a) -> str:
        return format_univariate(self.base, a, "t")

    def spec(self) -> str:
        return f"{self.base.spec()}:{format_univariate(self.base, self.modulus, 't')}"

    def __str__(self):
        return f"{self.base}[t]/({format_univariate(self.base, self.modulus, 't')})"


def format_univariate(F: FieldContext, coeffs, var: str) -> str:
    """Render raw coefficients (index = degree) as 'c*v^k + ...', highest first."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if F.is_zero(c):
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        terms.append(format_term(F, c, mono))
    return join_terms(terms)


def format_term(F: FieldContext, c, mono: str) -> str:
    """Render one term ``c*mono``; mono == '' means the constant term."""
    text = F.format(c)
    if isinstance(F, Extension) and (" " in text.strip() or text.startswith("-")):
        text = f"({text})"
    if not mono:
        return text
    if text == "1":
        return mono
    if text == "-1":
        return "-" + mono
    return f"{text}*{mono}"


def join_terms(terms) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        if t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


class _ScalarAlgebra:
    """Evaluation target for scalar literals: integers, fractions, and t."""

    def __init__(self, F: FieldContext):
        self.F = F

    def const(self, value):
        if isinstance(value, Fraction):
            return self.F.from_fraction(value)
        return self.F.from_int(value)

    def var(self, name):
        if name == "t" and isinstance(self.F, Extension):
            return self.F.gen.v
        raise ParseError(f"unknown symbol {name!r} in a scalar of {self.F}")

    def add(self, a, b):
        return self.F.add(a, b)

    def sub(self, a, b):
        return self.F.sub(a, b)

    def mul(self, a, b):
        return self.F.mul(a, b)

    def neg(self, a):
        return self.F.neg(a)

    def pow(self, a, n):
        return self.F.pow(a, n)


class Scalar:
    """An exact field element bound to its context."""

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldContext, v):
        self.ctx = ctx
        self.v = v

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise MixedContexts(f"{self.ctx} vs {other.ctx}")
            return other.v
        if isinstance(other, (int, Fraction)):
            return self.ctx.coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.ctx, self.ctx.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.ctx, self.ctx.sub(self.v, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.ctx, self.ctx.sub(o, self.v))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.ctx, self.ctx.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.ctx, self.ctx.div(self.v, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.ctx, self.ctx.div(o, self.v))

    def __neg__(self):
        return Scalar(self.ctx, self.ctx.neg(self.v))

    def __pow__(self, n: int):
        return Scalar(self.ctx, self.ctx.pow(self.v, n))

    def inv(self) -> "Scalar":
        return Scalar(self.ctx, self.ctx.inv(self.v))

    def is_zero(self) -> bool:
        return self.ctx.is_zero(self.v)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.ctx == other.ctx and self.v == other.v
        if isinstance(other, (int, Fraction)):
            try:
                return self.v == self.ctx.coerce(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.v))

    def __str__(self):
        return self.ctx.format(self.v)

    def __repr__(self):
        return f"Scalar({self.ctx}, {self})"


def arith(a: Scalar, b: Scalar | None, op: str) -> Scalar:
    """Apply ``op`` in {add, sub, mul, div, neg, inv, pow}; for pow ``b`` is an int."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** int(b)
    if isinstance(b, Scalar) and b.ctx != a.ctx:
        raise MixedContexts(f"{a.ctx} vs {b.ctx}")
    return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op](b)


def frobenius_fixed(a: Scalar) -> bool:
    """True iff a^p == a, i.e. ``a`` lies in the prime subfield."""
    p = a.ctx.characteristic
    if p == 0:
        raise CharacteristicZero("Frobenius test needs positive characteristic")
    return a ** p == a


def field_from_spec(spec: str) -> FieldContext:
    """Parse 'q', 'fp:<p>', or an extension 'q:<modulus in t>' / 'fp:<p>:<modulus>'."""
    text = spec.strip()
    low = text.lower()
    if low in ("q", "qq", "rationals"):
        return Rationals()
    if low.startswith("q:"):
        base: FieldContext = Rationals()
        return _extension_from_text(base, text[2:])
    if low.startswith("fp:"):
        rest = text[3:]
        p_text, _, mod_text = rest.partition(":")
        try:
            p = int(p_text)
        except ValueError:
            raise ParseError(f"bad prime in field spec {spec!r}") from None
        base = PrimeField(p)
        if mod_text:
            return _extension_from_text(base, mod_text)
        return base
    raise ParseError(f"unknown field spec {spec!r} (expected q or fp:<p>)")


def _extension_from_text(base: FieldContext, text: str) -> Extension:
    from .poly import Poly

    return Extension(base, Poly.parse(base, text, var="t"))

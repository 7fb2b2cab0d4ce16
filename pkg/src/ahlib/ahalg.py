"""Arithmetic in A_h = F<x, y>/(yx - xy - h).

Elements are kept in the normal form sum_n A_n(x) y^n, stored as a dict
from y-degree n to the nonzero polynomial A_n.  Products use the
reordering identity

    y^n r = sum_j C(n, j) delta^j(r) y^(n-j),      delta(r) = r' h,

with binomials taken in the coefficient field.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .errors import (
    CenterIdentityViolated,
    CharacteristicZero,
    DivisibilityViolated,
    MixedContexts,
    ParseError,
    ZeroElement,
)
from .linalg import Subspace, nullspace
from .parsing import parse_expression
from .poly import Poly, derivative, divrem, in_xp_subring
from .scalars import Extension, FieldContext, Scalar, format_term, join_terms


class AhContext:
    """The algebra A_h for a fixed field and a fixed nonzero h."""

    def __init__(self, field: FieldContext, h):
        if isinstance(h, str):
            h = Poly.parse(field, h)
        elif not isinstance(h, Poly):
            h = Poly.const(field, h)
        if h.ctx != field:
            raise MixedContexts("h must be a polynomial over the context field")
        if not h:
            raise ValueError("h must be nonzero")
        self.field = field
        self.h = h
        self._delta_cache: dict = {}

    def __eq__(self, other):
        return isinstance(other, AhContext) and self.field == other.field and self.h == other.h

    def __hash__(self):
        return hash((self.field, self.h))

    def __repr__(self):
        return f"AhContext({self.field}, h={self.h})"

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    # -- element constructors -------------------------------------------

    def element(self, parts) -> "AhElement":
        """From a dict y-degree -> Poly (or anything Poly.parse accepts)."""
        clean = {}
        for n, a in parts.items():
            if not isinstance(a, Poly):
                a = Poly.parse(self.field, a) if isinstance(a, str) else Poly.const(self.field, a)
            if a:
                clean[n] = a
        return AhElement(self, clean)

    def from_terms(self, terms) -> "AhElement":
        """From a dict (m, n) -> scalar for the monomial x^m y^n."""
        F = self.field
        rows: dict[int, list] = {}
        for (m, n), c in terms.items():
            c = F.coerce(c)
            row = rows.setdefault(n, [])
            if len(row) <= m:
                row.extend([F.zero] * (m + 1 - len(row)))
            row[m] = F.add(row[m], c)
        return self.element({n: Poly(F, row) for n, row in rows.items()})

    def monomial(self, m: int, n: int, c=1) -> "AhElement":
        return self.element({n: Poly.monomial(self.field, m, c)})

    def const(self, c) -> "AhElement":
        return self.element({0: Poly.const(self.field, c)})

    def from_poly(self, r: Poly) -> "AhElement":
        return self.element({0: r})

    @property
    def zero(self) -> "AhElement":
        return AhElement(self, {})

    @property
    def one(self) -> "AhElement":
        return self.const(1)

    @property
    def x(self) -> "AhElement":
        return self.monomial(1, 0)

    @property
    def y(self) -> "AhElement":
        return self.monomial(0, 1)

    def parse(self, text: str) -> "AhElement":
        return parse_expression(text, _ElementAlgebra(self))

    # -- the derivation ---------------------------------------------------

    def delta(self, r: Poly) -> Poly:
        return derivative(r) * self.h

    def delta_powers(self, r: Poly, k: int) -> list[Poly]:
        """[r, delta(r), ..., delta^k(r)]."""
        out = [r]
        for _ in range(k):
            if not out[-1]:
                out.append(out[-1])
            else:
                out.append(self.delta(out[-1]))
        return out

    def delta_apply(self, r: Poly, k: int = 1) -> Poly:
        return self.delta_powers(r, k)[-1]

    def binom(self, n: int, j: int):
        return self.field.from_int(math.comb(n, j))

    # -- characteristic p center -----------------------------------------

    def delta_p_x_over_h(self) -> Poly:
        """The central polynomial delta^p(x)/h of F[x^p]."""
        p = self.characteristic
        if p == 0:
            raise CharacteristicZero("delta^p(x)/h is defined in positive characteristic")
        num = self.delta_apply(Poly.x(self.field), p)
        q, r = divrem(num, self.h)
        if r:
            raise DivisibilityViolated(f"h = {self.h} does not divide delta^p(x) = {num}")
        if not in_xp_subring(q):
            raise DivisibilityViolated(f"delta^p(x)/h = {q} is not in F[x^p]")
        return q

    def make_z_p(self) -> "AhElement":
        """z_p = y (y + h') ... (y + (p-1) h'), checked against y^p - y delta^p(x)/h."""
        p = self.characteristic
        if p == 0:
            raise CharacteristicZero("z_p exists in positive characteristic only")
        hp = derivative(self.h)
        z = self.y
        for i in range(1, p):
            z = z * (self.y + self.from_poly(hp * i))
        other = self.y**p - self.y * self.from_poly(self.delta_p_x_over_h())
        if z != other:
            raise CenterIdentityViolated(f"{z} != {other}")
        return z

    # -- bounded searches -------------------------------------------------

    def window(self, dx: int, dy: int) -> list[tuple[int, int]]:
        """Monomials x^m y^n with m <= dx, n <= dy, in display order."""
        return [(m, n) for n in range(dy, -1, -1) for m in range(dx, -1, -1)]

    def centralizer_bounded(self, dx: int, dy: int) -> list["AhElement"]:
        """Reduced basis of the elements of the window commuting with x and y."""
        mons = self.window(dx, dy)
        images = []
        for m, n in mons:
            g = self.monomial(m, n)
            images.append((commutator(g, self.x), commutator(g, self.y)))
        keys = sorted({k for a, b in images for k in a.terms} | {k for a, b in images for k in b.terms})
        keys2 = [("x", k) for k in keys] + [("y", k) for k in keys]
        F = self.field
        cols = []
        for a, b in images:
            ta, tb = a.raw_terms(), b.raw_terms()
            cols.append([ta.get(k, F.zero) if tag == "x" else tb.get(k, F.zero) for tag, k in keys2])
        eqs = [[c[i] for c in cols] for i in range(len(keys2))]
        kernel = nullspace(F, eqs, len(mons)) if eqs else [
            [F.one if i == j else F.zero for i in range(len(mons))] for j in range(len(mons))
        ]
        space = Subspace(F, len(mons), kernel)
        return [self.from_vector(v, mons) for v in space.basis]

    def from_vector(self, v, mons) -> "AhElement":
        return self.from_terms({mn: c for mn, c in zip(mons, v) if not self.field.is_zero(c)})


class _ElementAlgebra:
    def __init__(self, ctx: AhContext):
        self.ctx = ctx

    def const(self, value):
        return self.ctx.const(value)

    def var(self, name):
        if name == "x":
            return self.ctx.x
        if name == "y":
            return self.ctx.y
        if name == "t" and isinstance(self.ctx.field, Extension):
            return self.ctx.const(self.ctx.field.gen)
        raise ParseError(f"unknown variable {name!r} in an element of A_h")

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


class AhElement:
    """A normal-form element sum_n A_n(x) y^n of A_h."""

    __slots__ = ("ctx", "parts", "_hash")

    def __init__(self, ctx: AhContext, parts: dict):
        self.ctx = ctx
        self.parts = parts
        self._hash = None

    # -- views --------------------------------------------------------------

    @property
    def terms(self) -> dict:
        """Map (m, n) -> Scalar coefficient of x^m y^n."""
        F = self.ctx.field
        return {(m, n): Scalar(F, c) for n, a in self.parts.items() for m, c in enumerate(a.coeffs) if not F.is_zero(c)}

    def raw_terms(self) -> dict:
        F = self.ctx.field
        return {(m, n): c for n, a in self.parts.items() for m, c in enumerate(a.coeffs) if not F.is_zero(c)}

    @property
    def y_degree(self) -> int:
        return max(self.parts, default=-1)

    @property
    def x_degree(self) -> int:
        return max((a.degree for a in self.parts.values()), default=-1)

    def coeff(self, n: int) -> Poly:
        """The polynomial coefficient of y^n (normal form, coefficients on the left)."""
        return self.parts.get(n, Poly(self.ctx.field))

    def is_zero(self) -> bool:
        return not self.parts

    def __bool__(self):
        return bool(self.parts)

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other) -> "AhElement":
        if isinstance(other, AhElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise MixedContexts(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, Poly):
            return self.ctx.from_poly(other)
        return self.ctx.const(other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.parts)
        for n, a in o.parts.items():
            s = out[n] + a if n in out else a
            if s:
                out[n] = s
            else:
                out.pop(n, None)
        return AhElement(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return AhElement(self.ctx, {n: -a for n, a in self.parts.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        return multiply(self, self._lift(other))

    def __rmul__(self, other):
        return multiply(self._lift(other), self)

    def __pow__(self, k: int):
        result = self.ctx.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, AhElement):
            try:
                other = self._lift(other)
            except (TypeError, MixedContexts):
                return NotImplemented
        return self.ctx == other.ctx and self.parts == other.parts

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, tuple(sorted((n, a.coeffs) for n, a in self.parts.items()))))
        return self._hash

    def __str__(self):
        F = self.ctx.field
        out = []
        for n in sorted(self.parts, reverse=True):
            a = self.parts[n]
            for m in range(a.degree, -1, -1):
                c = a.coeffs[m]
                if F.is_zero(c):
                    continue
                mono = []
                if m:
                    mono.append("x" if m == 1 else f"x^{m}")
                if n:
                    mono.append("y" if n == 1 else f"y^{n}")
                out.append(format_term(F, c, "*".join(mono)))
        return join_terms(out)

    def __repr__(self):
        return f"AhElement({self})"

    # -- other bases ------------------------------------------------------

    def to_y_left(self) -> dict:
        """Coefficients r_n with self = sum_n y^n r_n(x)."""
        ctx = self.ctx
        out: dict[int, Poly] = {}
        for n, a in self.parts.items():
            ds = ctx.delta_powers(a, n)
            for j in range(n + 1):
                c = ctx.binom(n, j)
                if j % 2:
                    c = ctx.field.neg(c)
                term = ds[j] * Scalar(ctx.field, c)
                if term:
                    out[n - j] = out[n - j] + term if n - j in out else term
        return {n: a for n, a in out.items() if a}


def from_y_left(ctx: AhContext, parts: dict) -> AhElement:
    """The normal form of sum_n y^n r_n(x)."""
    out = ctx.zero
    for n, r in parts.items():
        out = out + ctx.monomial(0, n) * ctx.from_poly(r)
    return out


def multiply(a: AhElement, b: AhElement) -> AhElement:
    """Exact product in normal form."""
    if a.ctx is not b.ctx and a.ctx != b.ctx:
        raise MixedContexts(f"{a.ctx} vs {b.ctx}")
    ctx = a.ctx
    if not a.parts or not b.parts:
        return ctx.zero
    F = ctx.field
    top = max(a.parts)
    out: dict[int, list] = {}
    for d, bd in b.parts.items():
        ds = ctx.delta_powers(bd, top)
        for n, an in a.parts.items():
            for j in range(n + 1):
                dj = ds[j]
                if not dj:
                    break
                c = F.from_int(math.comb(n, j))
                if F.is_zero(c):
                    continue
                prod = an * dj
                if c != F.one:
                    prod = prod * Scalar(F, c)
                k = n - j + d
                out[k] = out[k] + prod if k in out else prod
    return AhElement(ctx, {k: v for k, v in out.items() if v})


def commutator(a: AhElement, b: AhElement) -> AhElement:
    return a * b - b * a


def delta_apply(ctx: AhContext, r: Poly, k: int = 1) -> Poly:
    """delta^k(r) by k-fold application of r -> r' h."""
    return ctx.delta_apply(r, k)


def left_quotient(c: AhElement, b: AhElement):
    """q with c == b*q, or None when c is not in b A_h (exact division)."""
    return _divide(c, b, left=True)


def right_quotient(c: AhElement, b: AhElement):
    """q with c == q*b, or None when c is not in A_h b."""
    return _divide(c, b, left=False)


def _divide(c: AhElement, b: AhElement, left: bool):
    if not b:
        raise ZeroElement("division by the zero element")
    ctx = c.ctx
    s = b.y_degree
    lead = b.parts[s]
    q = ctx.zero
    rem = c
    while rem:
        t = rem.y_degree - s
        if t < 0:
            return None
        qq, r = divrem(rem.parts[rem.y_degree], lead)
        if r:
            return None
        step = ctx.element({t: qq})
        q = q + step
        rem = rem - (b * step if left else step * b)
    return q


def is_normal_bounded(b: AhElement, dx: int, dy: int) -> bool:
    """True iff g b is in b A_h and b g is in A_h b for every monomial g of the window."""
    if not b:
        raise ZeroElement("normality is tested for nonzero elements")
    ctx = b.ctx
    for m, n in ctx.window(dx, dy):
        g = ctx.monomial(m, n)
        if left_quotient(g * b, b) is None or right_quotient(b * g, b) is None:
            return False
    return True


# -- the embedding into the Weyl algebra A_1 ------------------------------


@lru_cache(maxsize=None)
def weyl_context(field: FieldContext) -> AhContext:
    return AhContext(field, Poly.const(field, 1))


class _WeylEmbedding:
    def __init__(self, src: AhContext):
        self.src = src
        self.dst = weyl_context(src.field)
        self.yh = self.dst.y * self.dst.from_poly(src.h)
        self.powers = [self.dst.one]

    def power(self, n: int) -> AhElement:
        while len(self.powers) <= n:
            self.powers.append(self.powers[-1] * self.yh)
        return self.powers[n]

    def __call__(self, a: AhElement) -> AhElement:
        out = self.dst.zero
        for n, an in a.parts.items():
            out = out + self.dst.from_poly(an) * self.power(n)
        return out


_embeddings: dict = {}


def embed_weyl(a: AhElement) -> AhElement:
    """Image under x -> x, y -> y h in A_1 (the algebra with yx - xy = 1)."""
    emb = _embeddings.get(a.ctx)
    if emb is None:
        emb = _embeddings[a.ctx] = _WeylEmbedding(a.ctx)
    return emb(a)

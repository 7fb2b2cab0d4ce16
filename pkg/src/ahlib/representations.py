"""Finite-dimensional A_h-modules as matrix pairs, and induced modules U(m).

A :class:`FinModule` stores matrices X, Y acting on coordinate columns with
YX - XY = h(X).  An :class:`InducedElement` is a finitely supported element
sum_k y^k r_k u_m of U(m) = A_h (x) D/m, residues taken modulo f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .ahalg import AhContext, AhElement
from .errors import (
    CharacteristicZero,
    FNotFactorOfH,
    GNotPrime,
    HVanishesAtLambda,
    LambdaNotRootOfH,
    MixedContexts,
    NotAWeylModule,
    NotDeltaInvariant,
    NotIrreducible,
    RelationViolated,
)
from .linalg import Matrix
from .poly import Answer, Poly, divrem, evaluate, find_factor, is_irreducible, taylor_coefficient
from .scalars import Extension, Scalar


@dataclass(frozen=True)
class FinModule:
    ctx: AhContext
    X: Matrix
    Y: Matrix
    provenance: dict = field(default_factory=lambda: {"kind": "Custom"}, compare=False, hash=False)

    def __post_init__(self):
        F = self.ctx.field
        if self.X.ctx != F or self.Y.ctx != F:
            raise MixedContexts("module matrices must live over the algebra's field")
        n = self.X.nrows
        if not (self.X.ncols == n and self.Y.nrows == n and self.Y.ncols == n):
            raise ValueError("X and Y must be square of the same size")

    @property
    def dim(self) -> int:
        return self.X.nrows

    @property
    def field(self):
        return self.ctx.field

    @property
    def kind(self) -> str:
        return self.provenance.get("kind", "Custom")

    def act(self, a: AhElement) -> Matrix:
        """The matrix of a = sum_n A_n(x) y^n, namely sum_n A_n(X) Y^n."""
        if a.ctx != self.ctx:
            raise MixedContexts("element and module have different algebras")
        out = Matrix.zeros(self.field, self.dim)
        ypow = Matrix.identity(self.field, self.dim)
        for n in range(a.y_degree + 1):
            if n in a.parts:
                out = out + evaluate(a.parts[n], self.X) @ ypow
            ypow = ypow @ self.Y
        return out


def verify_relation(M: FinModule) -> bool:
    """YX - XY == h(X)."""
    return M.Y @ M.X - M.X @ M.Y == evaluate(M.ctx.h, M.X)


def _checked(M: FinModule) -> FinModule:
    if not verify_relation(M):
        raise RelationViolated(f"YX - XY != h(X) for a {M.kind} module")
    return M


def custom_module(ctx: AhContext, X, Y, check: bool = True) -> FinModule:
    F = ctx.field
    if not isinstance(X, Matrix):
        X = Matrix.from_values(F, X)
    if not isinstance(Y, Matrix):
        Y = Matrix.from_values(F, Y)
    M = FinModule(ctx, X, Y, {"kind": "Custom"})
    return _checked(M) if check else M


def direct_sum(M1: FinModule, M2: FinModule) -> FinModule:
    if M1.ctx != M2.ctx:
        raise MixedContexts("direct sum of modules over different algebras")
    return _checked(
        FinModule(M1.ctx, Matrix.block_diag(M1.X, M2.X), Matrix.block_diag(M1.Y, M2.Y), {"kind": "Custom"})
    )


def one_dim(ctx: AhContext, lam, mu) -> FinModule:
    """X = [lam], Y = [mu]; requires h(lam) == 0."""
    F = ctx.field
    lam, mu = F(lam), F(mu)
    if not evaluate(ctx.h, lam).is_zero():
        raise LambdaNotRootOfH(f"h({lam}) != 0")
    prov = {"kind": "OneDim", "lambda": str(lam), "mu": str(mu)}
    return _checked(FinModule(ctx, Matrix(F, [[lam.v]]), Matrix(F, [[mu.v]]), prov))


def n_module(ctx: AhContext, lam, q, n: int) -> FinModule:
    """N(m^(n+1), q) on the basis v_j = (x - lam)^(n-j), j = 0..n.

    x.v_j = lam v_j + v_(j-1) and
    y.v_j = q.v_j + (n - j) sum_(l<=j) eta_(j+1-l) v_l,
    where eta_k and the q-action come from Taylor coefficients at lam
    (p-adic derivatives in positive characteristic).
    """
    F = ctx.field
    lam = F(lam)
    if not isinstance(q, Poly):
        q = Poly.parse(F, q) if isinstance(q, str) else Poly.const(F, q)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not evaluate(ctx.h, lam).is_zero():
        raise LambdaNotRootOfH(f"h({lam}) != 0")
    d = n + 1
    eta = [taylor_coefficient(ctx.h, k, lam).v for k in range(d + 1)]
    tq = [taylor_coefficient(q, k, lam).v for k in range(d)]
    X = [[F.zero] * d for _ in range(d)]
    Y = [[F.zero] * d for _ in range(d)]
    for j in range(d):
        X[j][j] = lam.v
        if j >= 1:
            X[j - 1][j] = F.one
        for k in range(j + 1):
            Y[j - k][j] = F.add(Y[j - k][j], tq[k])
        w = F.from_int(n - j)
        for ell in range(j + 1):
            Y[ell][j] = F.add(Y[ell][j], F.mul(w, eta[j + 1 - ell]))
    prov = {"kind": "NModule", "lambda": str(lam), "q": str(q), "n": n}
    return _checked(FinModule(ctx, Matrix(F, X), Matrix(F, Y), prov))


def _y_poly_answer(f: Poly, gbar: list) -> tuple[Answer, object]:
    """Primality of y^n - sum_j y^j gbar_j over D/(f); returns (answer, witness)."""
    F = f.ctx
    if f.degree == 1:
        K = F
        lam = F(F.neg(f.coeffs[0]))
        coeffs = [evaluate(g, lam).v for g in gbar]
    else:
        K = Extension(F, f)
        coeffs = [K._pack(list(g.coeffs)) for g in gbar]
    poly = Poly(K, [K.neg(c) for c in coeffs] + [K.one])
    verdict = is_irreducible(poly)
    witness = find_factor(poly) if verdict is Answer.NO else None
    return verdict, witness


def l_module_factor(ctx: AhContext, f, g) -> FinModule:
    """L(m, gbar) for m = (f), f a monic prime factor of h, gbar = y^n - sum_j y^j g_j.

    Basis y^k x^l v (index k*deg f + l); x acts by the companion matrix of f
    on each block, y shifts blocks and
    y.y^(n-1) x^l v = sum_j y^j s_(j,l) v with s_(j,l) = g_j x^l mod f.
    """
    F = ctx.field
    if not isinstance(f, Poly):
        f = Poly.parse(F, f)
    g = [gj if isinstance(gj, Poly) else (Poly.parse(F, gj) if isinstance(gj, str) else Poly.const(F, gj)) for gj in g]
    if f.degree < 1:
        raise FNotFactorOfH("f must be nonconstant")
    f = f.monic()
    if ctx.h % f:
        raise FNotFactorOfH(f"{f} does not divide h = {ctx.h}")
    f_prime = is_irreducible(f)
    if f_prime is Answer.NO:
        raise NotIrreducible(f"{f} is not prime")
    n = len(g)
    if n < 1:
        raise ValueError("gbar must have positive degree")
    gbar = [gj % f for gj in g]
    if f_prime is Answer.YES:
        g_prime, witness = _y_poly_answer(f, gbar)
        if g_prime is Answer.NO:
            raise GNotPrime(f"y-polynomial is reducible over D/({f})", witness=witness)
    else:
        g_prime = Answer.UNKNOWN
    d = f.degree
    dim = d * n
    X = [[F.zero] * dim for _ in range(dim)]
    Y = [[F.zero] * dim for _ in range(dim)]
    # x.x^l = x^(l+1) mod f
    for k in range(n):
        for ell in range(d):
            col = k * d + ell
            if ell + 1 < d:
                X[col + 1][col] = F.one
            else:
                for i, c in enumerate(f.coeffs[:d]):
                    X[k * d + i][col] = F.neg(c)
    xpow = Poly.const(F, 1)
    for ell in range(d):
        for k in range(n - 1):
            Y[(k + 1) * d + ell][k * d + ell] = F.one
        col = (n - 1) * d + ell
        for j in range(n):
            s = (gbar[j] * xpow) % f
            for i, c in enumerate(s.coeffs):
                Y[j * d + i][col] = c
        xpow = xpow * Poly.x(F)
    prov = {
        "kind": "LFactor",
        "f": str(f),
        "g": [str(gj) for gj in gbar],
        "prime": g_prime.value,
    }
    return _checked(FinModule(ctx, Matrix(F, X), Matrix(F, Y), prov))


def l_z_beta(ctx: AhContext, lam, beta) -> FinModule:
    """The p-dimensional module L(m, z_beta) at a point lam with h(lam) != 0.

    y.v_n = v_(n+1), y.v_(p-1) = c v_1 + beta v_0 with c = (delta^p(x)/h)(lam),
    x.v_n = sum_j (-1)^j C(n, j) delta^j(x)(lam) v_(n-j).
    """
    F = ctx.field
    p = F.characteristic
    if p == 0:
        raise CharacteristicZero("L(m, z_beta) needs positive characteristic")
    lam, beta = F(lam), F(beta)
    if evaluate(ctx.h, lam).is_zero():
        raise HVanishesAtLambda(f"h({lam}) == 0")
    dx = [evaluate(r, lam).v for r in ctx.delta_powers(Poly.x(F), p - 1)]
    c = evaluate(ctx.delta_p_x_over_h(), lam).v
    X = [[F.zero] * p for _ in range(p)]
    Y = [[F.zero] * p for _ in range(p)]
    for n in range(p):
        for j in range(n + 1):
            b = F.from_int(math.comb(n, j))
            if j % 2:
                b = F.neg(b)
            X[n - j][n] = F.add(X[n - j][n], F.mul(b, dx[j]))
        if n + 1 < p:
            Y[n + 1][n] = F.one
    Y[1 % p][p - 1] = F.add(Y[1 % p][p - 1], c)
    Y[0][p - 1] = F.add(Y[0][p - 1], beta.v)
    prov = {"kind": "LZBeta", "lambda": str(lam), "beta": str(beta)}
    return _checked(FinModule(ctx, Matrix(F, X), Matrix(F, Y), prov))


def weyl_restrict(X, Y, ctx: AhContext) -> FinModule:
    """Restrict an A_1-module (YX - XY = I) along x -> x, y -> y h: Y becomes Y h(X)."""
    F = ctx.field
    if not isinstance(X, Matrix):
        X = Matrix.from_values(F, X)
    if not isinstance(Y, Matrix):
        Y = Matrix.from_values(F, Y)
    if Y @ X - X @ Y != Matrix.identity(F, X.nrows):
        raise NotAWeylModule("YX - XY != I")
    return _checked(FinModule(ctx, X, Y @ evaluate(ctx.h, X), {"kind": "WeylRestrict"}))


def truncated_weyl_module(F, lam) -> tuple[Matrix, Matrix]:
    """A_1-module F[x]/(x^p - lam^p) in characteristic p: X = multiplication by x, Y = d/dx."""
    p = F.characteristic
    if p == 0:
        raise CharacteristicZero("truncated polynomial Weyl modules need characteristic p")
    lam = F(lam)
    lp = (lam**p).v
    X = [[F.zero] * p for _ in range(p)]
    Y = [[F.zero] * p for _ in range(p)]
    for i in range(p):
        if i + 1 < p:
            X[i + 1][i] = F.one
        else:
            X[0][i] = lp
        if i >= 1:
            Y[i - 1][i] = F.from_int(i)
    return Matrix(F, X), Matrix(F, Y)


# -- induced modules U(m) ------------------------------------------------


class InducedElement:
    """sum_k y^k r_k u_m with residues r_k reduced modulo the monic f."""

    __slots__ = ("ctx", "f", "terms")

    def __init__(self, ctx: AhContext, f: Poly, terms: dict):
        if f.degree < 1:
            raise ValueError("the ideal generator must be nonconstant")
        if not f.is_monic():
            f = f.monic()
        self.ctx = ctx
        self.f = f
        clean = {}
        for k, r in terms.items():
            if not isinstance(r, Poly):
                r = Poly.parse(ctx.field, r) if isinstance(r, str) else Poly.const(ctx.field, r)
            r = r % f
            if r:
                clean[k] = r
        self.terms = clean

    @classmethod
    def generator(cls, ctx: AhContext, f: Poly) -> "InducedElement":
        return cls(ctx, f, {0: Poly.const(ctx.field, 1)})

    @property
    def y_degree(self) -> int:
        return max(self.terms, default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other):
        if self.ctx != other.ctx or self.f != other.f:
            raise MixedContexts("elements of different induced modules")

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for k, r in other.terms.items():
            out[k] = out[k] + r if k in out else r
        return InducedElement(self.ctx, self.f, out)

    def __neg__(self):
        return InducedElement(self.ctx, self.f, {k: -r for k, r in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "InducedElement":
        c = self.ctx.field(c)
        return InducedElement(self.ctx, self.f, {k: r * c for k, r in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, InducedElement):
            return NotImplemented
        return self.ctx == other.ctx and self.f == other.f and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, self.f, tuple(sorted((k, r.coeffs) for k, r in self.terms.items()))))

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms, reverse=True):
            ypart = "" if k == 0 else ("y" if k == 1 else f"y^{k}")
            lead = f"{ypart}*" if ypart else ""
            bits.append(f"{lead}({self.terms[k]})*u")
        return " + ".join(bits)

    __repr__ = __str__


def induced_act_poly(r: Poly, v: InducedElement) -> InducedElement:
    """r . y^n s u = sum_j (-1)^j C(n, j) y^(n-j) delta^j(r) s u."""
    ctx = v.ctx
    F = ctx.field
    out: dict[int, Poly] = {}
    top = v.y_degree
    ds = ctx.delta_powers(r, max(top, 0))
    for n, s in v.terms.items():
        for j in range(n + 1):
            dj = ds[j]
            if not dj:
                break
            c = F.from_int(math.comb(n, j))
            if F.is_zero(c):
                continue
            if j % 2:
                c = F.neg(c)
            term = (dj * s) * Scalar(F, c)
            out[n - j] = out[n - j] + term if n - j in out else term
    return InducedElement(ctx, v.f, out)


def induced_act_x(v: InducedElement) -> InducedElement:
    return induced_act_poly(Poly.x(v.ctx.field), v)


def induced_act_y(v: InducedElement) -> InducedElement:
    return InducedElement(v.ctx, v.f, {k + 1: r for k, r in v.terms.items()})


def induced_act(a: AhElement, v: InducedElement) -> InducedElement:
    """Action of a general element, through a = sum_n A_n(x) y^n."""
    out = InducedElement(v.ctx, v.f, {})
    cur = v
    for n in range(a.y_degree + 1):
        if n in a.parts:
            out = out + induced_act_poly(a.parts[n], cur)
        cur = induced_act_y(cur)
    return out


def check_delta_invariant(ctx: AhContext, f: Poly) -> None:
    if ctx.delta(f) % f:
        raise NotDeltaInvariant(f"the ideal ({f}) is not delta-invariant")


def quotient_action(ctx: AhContext, f: Poly, q: Poly, r: Poly) -> Poly:
    """y.(r + m) = q r + delta(r) mod f in N(m, q) = D/m."""
    return (q * r + ctx.delta(r)) % f


def n_quotient_hom(v: InducedElement, q) -> Poly:
    """Image of v under the map U(m) -> N(m, q) sending u_m to 1 + m."""
    ctx = v.ctx
    F = ctx.field
    if not isinstance(q, Poly):
        q = Poly.parse(F, q) if isinstance(q, str) else Poly.const(F, q)
    check_delta_invariant(ctx, v.f)
    total = Poly(F)
    for k, r in v.terms.items():
        cur = r
        for _ in range(k):
            cur = quotient_action(ctx, v.f, q, cur)
        total = total + cur
    return total % v.f


def quotient_module(ctx: AhContext, f: Poly, q) -> FinModule:
    """N(m, q) = D/(f) on the basis 1, x, ..., x^(d-1), for a delta-invariant (f)."""
    F = ctx.field
    if not isinstance(q, Poly):
        q = Poly.parse(F, q) if isinstance(q, str) else Poly.const(F, q)
    f = f.monic()
    check_delta_invariant(ctx, f)
    d = f.degree
    xs = Poly.x(F)
    Xcols, Ycols = [], []
    for ell in range(d):
        basis = Poly.monomial(F, ell)
        Xcols.append(_residue_vector((xs * basis) % f, d))
        Ycols.append(_residue_vector(quotient_action(ctx, f, q, basis), d))
    X = Matrix(F, [list(r) for r in zip(*Xcols)])
    Y = Matrix(F, [list(r) for r in zip(*Ycols)])
    return _checked(FinModule(ctx, X, Y, {"kind": "Custom", "quotient": str(f), "q": str(q)}))


def _residue_vector(r: Poly, d: int) -> list:
    F = r.ctx
    return list(r.coeffs) + [F.zero] * (d - len(r.coeffs))


def residue_vector(r: Poly, d: int) -> list:
    return _residue_vector(r, d)

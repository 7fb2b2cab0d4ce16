"""Structural analysis of finite-dimensional A_h-modules.

Exhaustive answers are given where the field is finite and small enough;
otherwise verdicts rest on the module's construction or come back Unknown.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .ahalg import AhContext, AhElement
from .errors import (
    CharacteristicPositive,
    CharZeroUnsupported,
    FactorizationOutOfScope,
    FDividesH,
    FieldTooLarge,
    ZeroElement,
)
from .linalg import Matrix, Subspace, min_poly_coeffs, nullspace, span_closure
from .poly import Answer, Poly, evaluate, factor_into_primes
from .representations import (
    FinModule,
    InducedElement,
    induced_act_poly,
    l_module_factor,
    l_z_beta,
    one_dim,
)

LATTICE_LIMIT = 2**22
ENDO_LIMIT = 2**20
RANDOM_TRIALS = 64
DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class Verdict:
    value: Answer
    method: str
    witness: object = None

    def __bool__(self):
        return self.value is Answer.YES


@dataclass
class SubmoduleLattice:
    n: int
    subspaces: list

    @property
    def is_chain(self) -> bool:
        return all(a <= b or b <= a for a, b in itertools.combinations(self.subspaces, 2))

    def __len__(self):
        return len(self.subspaces)

    def contains(self, i: int, j: int) -> bool:
        """True iff subspaces[i] is inside subspaces[j]."""
        return self.subspaces[i] <= self.subspaces[j]

    def incomparable_pair(self):
        for a, b in itertools.combinations(self.subspaces, 2):
            if not (a <= b or b <= a):
                return a, b
        return None


def _exhaustion_size(M: FinModule, limit: int) -> int:
    F = M.field
    if F.order is None:
        if F.characteristic == 0:
            raise CharZeroUnsupported("exhaustive enumeration needs a finite field")
        raise FieldTooLarge(f"{F} is infinite")
    size = F.order**M.dim
    if size > limit:
        raise FieldTooLarge(f"|F|^dim = {size} exceeds {limit}")
    return size


def projective_vectors(F, n: int):
    """Nonzero vectors of F^n whose first nonzero coordinate is 1."""
    elems = list(F.elements())
    for lead in range(n):
        for tail in itertools.product(elems, repeat=n - lead - 1):
            yield [F.zero] * lead + [F.one] + list(tail)


def cyclic_submodule(M: FinModule, v) -> Subspace:
    return span_closure(M.field, M.dim, [v], [M.X, M.Y])


def submodule_lattice(M: FinModule) -> SubmoduleLattice:
    """All submodules, as sums of cyclic submodules generated by single vectors."""
    _exhaustion_size(M, LATTICE_LIMIT)
    F, n = M.field, M.dim
    cyclic = set()
    for v in projective_vectors(F, n):
        cyclic.add(cyclic_submodule(M, v))
    members = {Subspace.zero(F, n)} | cyclic
    frontier = set(members)
    while frontier:
        fresh = set()
        for a in frontier:
            for c in cyclic:
                s = a + c
                if s not in members:
                    fresh.add(s)
        members |= fresh
        frontier = fresh
    return SubmoduleLattice(n, sorted(members, key=Subspace.sort_key))


def _theorem_irreducible(M: FinModule) -> bool:
    prov = M.provenance
    if prov.get("kind") == "LFactor" and prov.get("prime") == Answer.YES.value:
        return True
    if prov.get("kind") == "LZBeta":
        lam = M.field.parse(prov["lambda"])
        return not evaluate(M.ctx.h, lam).is_zero()
    return False


def _random_vectors(F, n: int, count: int, seed: int):
    rng = random.Random(seed)
    elems = list(F.elements()) if F.order is not None and F.order <= 1000 else None
    for _ in range(count):
        if elems is not None:
            yield [rng.choice(elems) for _ in range(n)]
        else:
            yield [F.coerce(rng.randint(-9, 9)) for _ in range(n)]


def is_irreducible(M: FinModule, seed: int = DEFAULT_SEED) -> Verdict:
    F, n = M.field, M.dim
    if n == 1:
        return Verdict(Answer.YES, "dimension-one")
    try:
        _exhaustion_size(M, LATTICE_LIMIT)
        exhaustive = True
    except (FieldTooLarge, CharZeroUnsupported):
        exhaustive = False
    if exhaustive:
        for v in projective_vectors(F, n):
            if cyclic_submodule(M, v).dim < n:
                return Verdict(Answer.NO, "exhaustive", v)
        return Verdict(Answer.YES, "exhaustive")
    if _theorem_irreducible(M):
        return Verdict(Answer.YES, "theorem")
    ident = Matrix.identity(F, n)
    candidates = itertools.chain(ident.rows, _random_vectors(F, n, RANDOM_TRIALS, seed))
    for v in candidates:
        if all(F.is_zero(a) for a in v):
            continue
        if cyclic_submodule(M, v).dim < n:
            return Verdict(Answer.NO, "cyclic-span", list(v))
    return Verdict(Answer.UNKNOWN, "random-search")


def endomorphisms(M: FinModule) -> list[Matrix]:
    """Basis of {E : EX = XE, EY = YE}."""
    F, n = M.field, M.dim
    cols = []
    for a in range(n):
        for b in range(n):
            E = [[F.zero] * n for _ in range(n)]
            E[a][b] = F.one
            E = Matrix(F, E)
            cols.append((E @ M.X - M.X @ E).flat() + (E @ M.Y - M.Y @ E).flat())
    eqs = [[c[i] for c in cols] for i in range(2 * n * n)]
    basis = Subspace(F, n * n, nullspace(F, eqs, n * n)).basis
    return [Matrix(F, [list(v[i * n : (i + 1) * n]) for i in range(n)]) for v in basis]


def _scalar_part(E: Matrix):
    """c with E - cI nilpotent, or None when E has more than one eigenvalue."""
    mp = Poly(E.ctx, min_poly_coeffs(E))
    factors = factor_into_primes(mp)
    if len(factors) != 1 or factors[0][0].degree != 1:
        return None
    return E.ctx.neg(factors[0][0].coeffs[0])


def _local_endomorphisms(M: FinModule, ends: list[Matrix]) -> bool:
    """True when End(M) = F I + N with N a nilpotent ideal, so End(M) is local."""
    F, n = M.field, M.dim
    ident = Matrix.identity(F, n)
    nil = []
    for E in ends:
        try:
            c = _scalar_part(E)
        except FactorizationOutOfScope:
            return False
        if c is None:
            return False
        N = E - ident.scale_raw(c)
        if not N.is_zero():
            nil.append(N)
    space = Subspace(F, n * n, [N.flat() for N in nil])
    if space.dim != len(ends) - 1:
        return False
    nil_basis = [Matrix(F, [list(v[i * n : (i + 1) * n]) for i in range(n)]) for v in space.basis]
    power = nil_basis
    for _ in range(n + 1):
        if not power:
            return True
        prods = [(P @ N).flat() for P in power for N in nil_basis]
        nxt = Subspace(F, n * n, prods)
        if not nxt <= space:
            return False
        power = [Matrix(F, [list(v[i * n : (i + 1) * n]) for i in range(n)]) for v in nxt.basis]
    return not power


def is_indecomposable(M: FinModule) -> Verdict:
    F, n = M.field, M.dim
    if n == 1:
        return Verdict(Answer.YES, "dimension-one")
    ends = endomorphisms(M)
    if len(ends) == 1:
        return Verdict(Answer.YES, "endomorphism-dimension")
    if F.order is not None and F.order ** len(ends) <= ENDO_LIMIT:
        ident = Matrix.identity(F, n)
        zero = Matrix.zeros(F, n)
        elems = list(F.elements())
        for coeffs in itertools.product(elems, repeat=len(ends)):
            E = zero
            for c, B in zip(coeffs, ends):
                if not F.is_zero(c):
                    E = E + B.scale_raw(c)
            if E != zero and E != ident and E @ E == E:
                return Verdict(Answer.NO, "exhaustive", E)
        return Verdict(Answer.YES, "exhaustive")
    if _local_endomorphisms(M, ends):
        return Verdict(Answer.YES, "local-endomorphisms")
    return Verdict(Answer.UNKNOWN, "endomorphism-search")


def is_uniserial(M: FinModule) -> Verdict:
    if M.dim == 1:
        return Verdict(Answer.YES, "dimension-one")
    lat = submodule_lattice(M)
    pair = lat.incomparable_pair()
    if pair is None:
        return Verdict(Answer.YES, "exhaustive", len(lat))
    return Verdict(Answer.NO, "exhaustive", pair)


def d_annihilator(M: FinModule) -> Poly:
    """Monic generator of {r in F[x] : r(X) = 0}."""
    return Poly(M.field, min_poly_coeffs(M.X))


@dataclass(frozen=True)
class WeightSpace:
    prime: Poly
    generalized: Subspace
    weight: Subspace

    @property
    def is_weight_space(self) -> bool:
        return self.generalized == self.weight


def _kernel(A: Matrix) -> Subspace:
    return Subspace(A.ctx, A.ncols, nullspace(A.ctx, A.rows, A.ncols))


def weight_decomposition(M: FinModule) -> dict:
    """Prime f -> generalized weight space ker f(X)^dim (and weight space ker f(X))."""
    out = {}
    for f, _ in factor_into_primes(d_annihilator(M)):
        fX = evaluate(f, M.X)
        out[f] = WeightSpace(f, _kernel(fX**M.dim), _kernel(fX))
    return out


def ann_subspace(M: FinModule, dx: int, dy: int) -> Subspace:
    """Annihilator inside the window, as coordinates over ctx.window(dx, dy)."""
    ctx = M.ctx
    F, n = M.field, M.dim
    mons = ctx.window(dx, dy)
    xp = [Matrix.identity(F, n)]
    for _ in range(dx):
        xp.append(xp[-1] @ M.X)
    yp = [Matrix.identity(F, n)]
    for _ in range(dy):
        yp.append(yp[-1] @ M.Y)
    cols = [(xp[m] @ yp[k]).flat() for m, k in mons]
    eqs = [[c[i] for c in cols] for i in range(n * n)]
    return Subspace(F, len(mons), nullspace(F, eqs, len(mons)))


def ann_bounded(M: FinModule, dx: int, dy: int) -> list[AhElement]:
    """Basis of the elements with x-degree <= dx, y-degree <= dy acting as zero on M."""
    mons = M.ctx.window(dx, dy)
    return [M.ctx.from_vector(v, mons) for v in ann_subspace(M, dx, dy).basis]


def same_annihilator(M1: FinModule, M2: FinModule, dx: int, dy: int) -> bool:
    if M1.ctx != M2.ctx:
        return False
    return ann_subspace(M1, dx, dy) == ann_subspace(M2, dx, dy)


def element_vector(a: AhElement, dx: int, dy: int):
    """Coordinates of a over the window, or None when a does not fit."""
    if a.x_degree > dx or a.y_degree > dy:
        return None
    raw = a.raw_terms()
    F = a.ctx.field
    return [raw.get(mn, F.zero) for mn in a.ctx.window(dx, dy)]


# -- induced modules -----------------------------------------------------


def induced_reduce(v: InducedElement) -> InducedElement:
    """f . v, which has strictly smaller y-degree when f is prime and does not divide h."""
    ctx = v.ctx
    if ctx.characteristic != 0:
        raise CharacteristicPositive("the degree-lowering step needs characteristic 0")
    if not (ctx.h % v.f):
        raise FDividesH(f"{v.f} divides h")
    if v.is_zero():
        raise ZeroElement("the zero element generates nothing")
    return induced_act_poly(v.f, v)


def recover_generator(v: InducedElement) -> tuple[InducedElement, int]:
    """Lower v to y-degree 0 and invert the residue; returns (u_m, steps)."""
    steps = 0
    cur = v
    while cur.y_degree > 0:
        cur = induced_reduce(cur)
        steps += 1
    if cur.is_zero():
        raise ZeroElement("reduction reached zero")
    r0 = cur.terms[0]
    from . import _rawpoly

    inv = Poly(r0.ctx, _rawpoly.inverse_mod(r0.ctx, list(r0.coeffs), list(cur.f.coeffs)))
    return induced_act_poly(inv, cur), steps + 1


# -- characteristic p classification ---------------------------------------


@dataclass
class Classification:
    case: str
    modules: list = field(default_factory=list)
    roots: list = field(default_factory=list)


def z_beta_element(ctx: AhContext, beta) -> AhElement:
    """z_p - beta."""
    return ctx.make_z_p() - ctx.const(beta)


def classify_char_p(ctx: AhContext, lam, beta) -> Classification:
    """Irreducible modules on which x - lam acts nilpotently and z_p acts as beta."""
    F = ctx.field
    p = F.characteristic
    if p == 0:
        from .errors import CharacteristicZero

        raise CharacteristicZero("classification applies in positive characteristic")
    lam, beta = F(lam), F(beta)
    if not evaluate(ctx.h, lam).is_zero():
        return Classification("iii", [l_z_beta(ctx, lam, beta)])
    from .poly import derivative

    a = evaluate(derivative(ctx.h), lam) ** (p - 1)
    roots = [t for t in F.scalars() if (t**p - a * t - beta).is_zero()]
    if roots:
        return Classification("i", [one_dim(ctx, lam, t) for t in roots], roots)
    f = Poly(F, [F.neg(lam.v), F.one])
    g = [Poly.const(F, beta), Poly.const(F, a)] + [Poly(F)] * (p - 2)
    return Classification("ii", [l_module_factor(ctx, f, g)])


def all_modules(ctx: AhContext, dim: int):
    """Every pair (X, Y) over a finite field with YX - XY = h(X) (tiny cases only)."""
    F = ctx.field
    if F.order is None or F.order ** (2 * dim * dim) > 2**20:
        raise FieldTooLarge("matrix pair enumeration is limited to 2^20 pairs")
    elems = list(F.elements())
    mats = [
        Matrix(F, [list(e[i * dim : (i + 1) * dim]) for i in range(dim)])
        for e in itertools.product(elems, repeat=dim * dim)
    ]
    for X in mats:
        hX = evaluate(ctx.h, X)
        for Y in mats:
            if Y @ X - X @ Y == hX:
                yield FinModule(ctx, X, Y, {"kind": "Custom"})

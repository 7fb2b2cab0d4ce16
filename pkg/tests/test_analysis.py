import itertools
import random

import pytest

from ahlib.ahalg import AhContext
from ahlib.analysis import (
    all_modules,
    ann_bounded,
    ann_subspace,
    classify_char_p,
    d_annihilator,
    element_vector,
    endomorphisms,
    induced_reduce,
    is_indecomposable,
    is_irreducible,
    is_uniserial,
    recover_generator,
    same_annihilator,
    submodule_lattice,
    weight_decomposition,
    z_beta_element,
)
from ahlib.errors import CharacteristicPositive, CharZeroUnsupported, FDividesH, FieldTooLarge, ZeroElement
from ahlib.linalg import Matrix, Subspace, nullspace
from ahlib.poly import Answer, Poly
from ahlib.representations import (
    InducedElement,
    custom_module,
    direct_sum,
    induced_act,
    l_module_factor,
    l_z_beta,
    n_module,
    one_dim,
)
from ahlib.scalars import PrimeField, Rationals

Q = Rationals()
F2, F3 = PrimeField(2), PrimeField(3)


def test_lattice_examples():
    A = AhContext(F2, "x")
    L = submodule_lattice(one_dim(A, 0, 1))
    assert len(L) == 2 and L.is_chain
    B = AhContext(F2, "x^2")
    L = submodule_lattice(n_module(B, 0, Poly(F2), 2))
    assert L.is_chain and [S.dim for S in L.subspaces] == [0, 1, 2, 3]
    assert L.subspaces[1].basis == ((1, 0, 0),)
    assert L.subspaces[2].basis == ((1, 0, 0), (0, 1, 0))
    L = submodule_lattice(l_z_beta(A, 1, 0))
    assert [S.dim for S in L.subspaces] == [0, 2]


def test_lattice_guards():
    with pytest.raises(CharZeroUnsupported):
        submodule_lattice(one_dim(AhContext(Q, "x"), 0, 0))
    big = n_module(AhContext(PrimeField(7), "x^2"), 0, Poly(PrimeField(7)), 8)
    with pytest.raises(FieldTooLarge):
        submodule_lattice(big)


def test_lattice_is_order_independent_and_closed():
    A = AhContext(F2, "x")
    M = direct_sum(direct_sum(one_dim(A, 0, 0), one_dim(A, 0, 1)), one_dim(A, 0, 0))
    L = submodule_lattice(M)
    subs = set(L.subspaces)
    for a, b in itertools.product(L.subspaces, repeat=2):
        assert a + b in subs
    for S in subs:
        assert S.is_invariant([M.X, M.Y])
    # two copies of V_{0,0} and one V_{0,1}: every subspace of the 2-dim isotypic part
    # (5 of them) plus those sums with the third line -> 10
    assert len(L) == 10
    # brute force over all subspaces spanned by subsets of vectors
    vecs = [list(v) for v in itertools.product(range(2), repeat=3)]
    brute = set()
    for r in range(4):
        for combo in itertools.combinations(vecs, r):
            S = Subspace(F2, 3, combo)
            if S.is_invariant([M.X, M.Y]):
                brute.add(S)
    assert brute == subs


def test_irreducible_examples():
    A = AhContext(F2, "x")
    assert is_irreducible(one_dim(A, 0, 0)).value is Answer.YES
    N = n_module(AhContext(F3, "x^2"), 0, Poly(F3), 1)
    v = is_irreducible(N)
    assert v.value is Answer.NO and v.witness == [1, 0]
    v = is_irreducible(l_z_beta(A, 1, 1))
    assert v.value is Answer.YES and v.method == "exhaustive"


def test_irreducible_over_q():
    A = AhContext(Q, "x")
    L = l_module_factor(A, Poly.x(Q), [Poly.const(Q, -1), Poly(Q)])
    v = is_irreducible(L)
    assert v.value is Answer.YES and v.method == "theorem"
    N = n_module(AhContext(Q, "x^2"), 0, Poly(Q), 2)
    v = is_irreducible(N)
    assert v.value is Answer.NO
    assert Subspace(Q, 3, [v.witness]).dim == 1
    # a custom module with no provenance certificate: Yes is never claimed
    C = custom_module(A, L.X, L.Y)
    assert is_irreducible(C).value is Answer.UNKNOWN


def test_indecomposable_examples():
    B = AhContext(F2, "x^2")
    assert is_indecomposable(n_module(B, 0, Poly(F2), 2)).value is Answer.YES
    A = AhContext(F2, "x")
    v = is_indecomposable(direct_sum(one_dim(A, 0, 0), one_dim(A, 0, 1)))
    assert v.value is Answer.NO
    E = v.witness
    assert E @ E == E and not E.is_zero() and E != Matrix.identity(F2, 2)
    assert is_indecomposable(l_z_beta(A, 1, 0)).value is Answer.YES


def test_indecomposable_over_q():
    A = AhContext(Q, "x^2")
    for n in range(1, 5):
        v = is_indecomposable(n_module(A, 0, Poly.parse(Q, "x + 2"), n))
        assert v.value is Answer.YES
    v = is_indecomposable(direct_sum(one_dim(A, 0, 1), one_dim(A, 0, 2)))
    assert v.value is not Answer.YES


def test_uniserial_examples():
    B = AhContext(F2, "x^2")
    v = is_uniserial(n_module(B, 0, Poly(F2), 3))
    assert v.value is Answer.YES and v.witness == 5
    A = AhContext(F2, "x")
    assert is_uniserial(direct_sum(one_dim(A, 0, 0), one_dim(A, 0, 1))).value is Answer.NO
    assert is_uniserial(one_dim(A, 0, 0)).value is Answer.YES


def test_d_annihilator_examples():
    A = AhContext(Q, "x^2 - 4")
    assert d_annihilator(one_dim(A, 2, 7)) == Poly.parse(Q, "x - 2")
    B = AhContext(F3, "x")
    assert d_annihilator(l_z_beta(B, 1, 2)) == Poly.parse(F3, "(x - 1)^3")
    assert d_annihilator(n_module(A, -2, Poly.x(Q), 3)) == Poly.parse(Q, "(x + 2)^4")


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("h", ["x", "x^2 + 1", "x^2 + x"])
def test_d_annihilator_of_l_z_beta(p, h):
    F = PrimeField(p)
    A = AhContext(F, h)
    for lam in F.scalars():
        if A.h(lam).is_zero():
            continue
        for beta in F.scalars():
            want = Poly(F, [F.neg(lam.v), F.one]) ** p
            assert d_annihilator(l_z_beta(A, lam, beta)) == want


def test_weight_examples():
    A = AhContext(Q, "x^2 - x")
    M = custom_module(A, Matrix.diag(Q, [0, 1]), Matrix.zeros(Q, 2))
    W = weight_decomposition(M)
    assert set(W) == {Poly.parse(Q, "x"), Poly.parse(Q, "x - 1")}
    assert all(ws.is_weight_space for ws in W.values())
    B = AhContext(F2, "x")
    W = weight_decomposition(l_z_beta(B, 1, 0))
    (ws,) = W.values()
    assert ws.generalized.dim == 2 and not ws.is_weight_space
    W = weight_decomposition(n_module(A, 0, Poly(Q), 2))
    (ws,) = W.values()
    assert ws.generalized.dim == 3 and ws.weight.dim == 1
    W = weight_decomposition(n_module(A, 0, Poly(Q), 0))
    assert all(ws.is_weight_space for ws in W.values())


def test_weight_spaces_are_submodules_and_direct():
    A = AhContext(F3, "x^3 - x")
    M = direct_sum(direct_sum(n_module(A, 0, Poly(F3), 2), one_dim(A, 1, 2)), n_module(A, 2, Poly.x(F3), 1))
    W = weight_decomposition(M)
    total = Subspace.zero(F3, M.dim)
    for ws in W.values():
        assert ws.generalized.is_invariant([M.X, M.Y])
        total = total + ws.generalized
    assert total.dim == M.dim == sum(ws.generalized.dim for ws in W.values())


def test_ann_examples():
    A = AhContext(Q, "x")
    ann = ann_bounded(one_dim(A, 0, 4), 1, 1)
    S = Subspace(Q, 4, [element_vector(a, 1, 1) for a in ann])
    assert S.contains(element_vector(A.x, 1, 1))
    assert S.contains(element_vector(A.y - 4, 1, 1))
    B = AhContext(F3, "x")
    L = l_z_beta(B, 1, 2)
    z = z_beta_element(B, 2)
    assert z.x_degree == 0
    S = ann_subspace(L, 0, 3)
    assert S.contains(element_vector(z, 0, 3))


def test_same_annihilator_examples():
    A = AhContext(Q, "x")
    V = one_dim(A, 0, 1)
    assert same_annihilator(V, V, 1, 1)
    assert not same_annihilator(V, one_dim(A, 0, 2), 1, 1)
    B = AhContext(F3, "x")
    assert same_annihilator(l_z_beta(B, 2, 1), l_z_beta(B, 2, 1), 2, 3)


def test_ann_contains_left_ideal_products():
    A = AhContext(F3, "x^2 + x")
    f = Poly.parse(F3, "x")
    L = l_module_factor(A, f, [Poly.const(F3, 1), Poly.const(F3, 1), Poly(F3)])  # y^3 - y - 1
    g = A.parse("y^3 - y - 1")
    for mult in (A.one, A.y, A.x * A.y, A.y**2):
        for gen in (g, A.from_poly(f)):
            assert L.act(mult * gen).is_zero()


def test_faithful_induced_module_window():
    """Char 0, f = x not dividing h: no nonzero window element kills U(m)."""
    A = AhContext(Q, "x + 1")
    f = Poly.x(Q)
    dx, dy = 2, 2
    mons = A.window(dx, dy)
    probes = [InducedElement(A, f, {k: 1}) for k in range(0, 5)]
    cols = []
    for m, n in mons:
        a = A.monomial(m, n)
        col = []
        for v in probes:
            w = induced_act(a, v)
            col.extend(w.terms.get(k, Poly(Q)).coeff(0).v for k in range(0, 8))
        cols.append(col)
    eqs = [[c[i] for c in cols] for i in range(len(cols[0]))]
    assert nullspace(Q, eqs, len(mons)) == []


def window_span_of_left_ideal(A, gens, dx, dy, extra=2):
    """span{x^j y^i g} intersected with the (dx, dy) window, for i <= dy + extra, j <= dx + extra."""
    prods = [A.monomial(j, i) * g for i in range(dy + extra + 1) for j in range(dx + extra + 1) for g in gens]
    bx = max(a.x_degree for a in prods)
    by = max(a.y_degree for a in prods)
    big = A.window(bx, by)
    n = len(big)
    S = Subspace(A.field, n, [element_vector(a, bx, by) for a in prods])
    index = {mn: i for i, mn in enumerate(big)}
    small = A.window(dx, dy)
    W = Subspace(A.field, n, [[A.field.one if i == index[mn] else A.field.zero for i in range(n)] for mn in small])
    inter = S.intersection(W)
    back = [[v[index[mn]] for mn in small] for v in inter.basis]
    return Subspace(A.field, len(small), back)


@pytest.mark.parametrize("mu", [0, 1, -2, 5])
def test_annihilator_is_left_ideal_of_f_and_g(mu):
    A = AhContext(Q, "x*(x - 1)")
    ann = ann_subspace(one_dim(A, 0, mu), 3, 3)
    assert window_span_of_left_ideal(A, [A.x, A.y - mu], 3, 3) == ann


def test_residual_finite_dimensionality_with_sufficient_depth():
    """x^a y^b raises the x-adic order by a + b on D/(x^n), so dx + dy + 2 modules are needed."""
    A = AhContext(Q, "x^2")
    dx = dy = 3
    S = None
    for n in range(1, dx + dy + 3):
        T = ann_subspace(n_module(A, 0, Poly(Q), n - 1), dx, dy)
        S = T if S is None else S.intersection(T)
    assert S.dim == 0


def test_residual_window_smaller_depth_leaves_kernel():
    A = AhContext(Q, "x^2")
    S = None
    for n in range(1, 6):
        T = ann_subspace(n_module(A, 0, Poly(Q), n - 1), 3, 3)
        S = T if S is None else S.intersection(T)
    assert S.contains(element_vector(A.parse("x*y^3"), 3, 3))


def test_induced_reduce_examples():
    A = AhContext(Q, "x + 1")
    f = Poly.x(Q)
    v = InducedElement(A, f, {1: 1})
    assert induced_reduce(v) == InducedElement(A, f, {0: -1})
    w = InducedElement(A, f, {0: "x + 3"})
    u, steps = recover_generator(w)
    assert u == InducedElement.generator(A, f) and steps == 1
    with pytest.raises(ZeroElement):
        induced_reduce(InducedElement(A, f, {0: f}))
    with pytest.raises(FDividesH):
        induced_reduce(InducedElement(AhContext(Q, "x^2"), f, {1: 1}))
    with pytest.raises(CharacteristicPositive):
        induced_reduce(InducedElement(AhContext(F3, "x + 1"), Poly.x(F3), {1: 1}))


def test_induced_reduce_lowers_degree_for_quadratic_f():
    A = AhContext(Q, "x^3 + 2")
    f = Poly.parse(Q, "x^2 + 1")
    rng = random.Random(3)
    for _ in range(20):
        terms = {k: Poly(Q, [Q.from_int(rng.randint(-3, 3)) for _ in range(2)]) for k in range(rng.randint(1, 5))}
        v = InducedElement(A, f, terms)
        if v.is_zero():
            continue
        d = v.y_degree
        w = induced_reduce(v)
        if d >= 1:
            assert w.y_degree == d - 1
        u, steps = recover_generator(v)
        assert u == InducedElement.generator(A, f) and steps == d + 1


def test_classify_examples():
    A = AhContext(F2, "x")
    c = classify_char_p(A, 0, 0)
    assert c.case == "i" and sorted(int(t.v) for t in c.roots) == [0, 1]
    assert [M.dim for M in c.modules] == [1, 1]
    c = classify_char_p(A, 0, 1)
    assert c.case == "ii" and c.modules[0].dim == 2
    c = classify_char_p(A, 1, 0)
    assert c.case == "iii" and c.modules[0].kind == "LZBeta"


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("h", ["x", "x^2 + 1", "x^2 - x", "x^3 + x + 1"])
def test_classification_outputs(p, h):
    F = PrimeField(p)
    A = AhContext(F, h)
    for lam in F.scalars():
        for beta in F.scalars():
            c = classify_char_p(A, lam, beta)
            z = z_beta_element(A, beta)
            for M in c.modules:
                assert M.act(z).is_zero()
                if p <= 3:
                    assert is_irreducible(M).value is Answer.YES
                if M.kind in ("LZBeta", "LFactor"):
                    assert is_irreducible(M).method in ("exhaustive", "theorem")
            if c.case == "iii":
                assert d_annihilator(c.modules[0]) == Poly(F, [F.neg(lam.v), F.one]) ** p


def _classified(A):
    F = A.field
    out = []
    for lam in F.scalars():
        for beta in F.scalars():
            out.extend(classify_char_p(A, lam, beta).modules)
    return out


@pytest.mark.parametrize("p,dims", [(2, (1, 2)), (3, (1,))])
def test_classification_is_complete_at_small_scale(p, dims):
    """Every irreducible module found by brute force matches a classified one."""
    F = PrimeField(p)
    A = AhContext(F, "x")
    known = _classified(A)
    for dim in dims:
        for M in all_modules(A, dim):
            if is_irreducible(M).value is not Answer.YES:
                continue
            matches = [K for K in known if K.dim == M.dim and same_annihilator(K, M, p, p)]
            assert matches, (M.X, M.Y)
            # the annihilator test agrees with an explicit isomorphism search
            K = matches[0]
            homs = _hom_space(K, M)
            assert any(_invertible(H) for H in homs) or _has_invertible_combo(homs, F)


def _hom_space(M1, M2):
    F, n = M1.field, M1.dim
    cols = []
    for a in range(n):
        for b in range(n):
            E = [[F.zero] * n for _ in range(n)]
            E[a][b] = F.one
            E = Matrix(F, E)
            cols.append((E @ M1.X - M2.X @ E).flat() + (E @ M1.Y - M2.Y @ E).flat())
    eqs = [[c[i] for c in cols] for i in range(2 * n * n)]
    return [Matrix(F, [v[i * n : (i + 1) * n] for i in range(n)]) for v in nullspace(F, eqs, n * n)]


def _invertible(H):
    return Subspace(H.ctx, H.ncols, H.rows).dim == H.nrows


def _has_invertible_combo(homs, F):
    for coeffs in itertools.product(list(F.elements()), repeat=len(homs)):
        H = Matrix.zeros(F, homs[0].nrows) if homs else None
        for c, B in zip(coeffs, homs):
            H = H + B.scale_raw(c)
        if H is not None and _invertible(H):
            return True
    return False


def test_endomorphisms_of_irreducible_are_scalars():
    A = AhContext(F3, "x")
    ends = endomorphisms(l_z_beta(A, 1, 1))
    assert len(ends) == 1 and ends[0] == Matrix.identity(F3, 3)


@pytest.mark.parametrize("p", [2, 3])
def test_exhaustive_agrees_with_structural_verdict(p):
    F = PrimeField(p)
    for h in ("x", "x^2 + 1", "x^2 + x"):
        A = AhContext(F, h)
        for M in _classified(A):
            if M.kind in ("LZBeta", "LFactor"):
                stripped = custom_module(A, M.X, M.Y)
                assert is_irreducible(stripped).value is Answer.YES

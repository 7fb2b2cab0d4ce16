"""Independent reference computations used only by the tests.

Nothing here calls into ahlib's arithmetic: scalars are Fractions or ints
mod p, polynomials are coefficient lists, and algebra elements are sums of
words in x and y.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb


class Coeffs:
    """Minimal scalar arithmetic: p == 0 means Q (Fractions)."""

    def __init__(self, p: int = 0):
        self.p = p

    def norm(self, a):
        return Fraction(a) if self.p == 0 else int(a) % self.p

    def inv(self, a):
        return 1 / Fraction(a) if self.p == 0 else pow(int(a), -1, self.p)


# -- word rewriting: yx -> xy + h -------------------------------------------


def normalize_words(words: dict, h: list, K: Coeffs) -> dict:
    """Rewrite a combination of words until no 'yx' remains; returns {(m, n): c}."""
    todo = {w: K.norm(c) for w, c in words.items()}
    done: dict = {}
    while todo:
        w, c = todo.popitem()
        if c == 0:
            continue
        i = w.find("yx")
        if i < 0:
            m, n = w.count("x"), w.count("y")
            assert w == "x" * m + "y" * n
            done[(m, n)] = K.norm(done.get((m, n), 0) + c)
            continue
        pre, post = w[:i], w[i + 2 :]
        for nw, cc in [(pre + "xy" + post, 1)] + [(pre + "x" * k + post, hk) for k, hk in enumerate(h) if hk]:
            todo[nw] = K.norm(todo.get(nw, 0) + c * cc)
    return {k: v for k, v in done.items() if v != 0}


def terms_to_words(terms: dict) -> dict:
    return {"x" * m + "y" * n: c for (m, n), c in terms.items()}


def word_product(a: dict, b: dict, h: list, K: Coeffs) -> dict:
    """Product of two normal-form term dicts via rewriting of concatenated words."""
    words: dict = {}
    for (m1, n1), c1 in a.items():
        for (m2, n2), c2 in b.items():
            w = "x" * m1 + "y" * n1 + "x" * m2 + "y" * n2
            words[w] = K.norm(words.get(w, 0) + c1 * c2)
    return normalize_words(words, h, K)


# -- dense list polynomials ----------------------------------------------


def lp_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def lp_add(a, b, K):
    n = max(len(a), len(b))
    return lp_trim([K.norm((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) for i in range(n)])


def lp_mul(a, b, K):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return lp_trim([K.norm(c) for c in out])


def lp_deriv(a, K):
    return lp_trim([K.norm(i * c) for i, c in enumerate(a)][1:])


def lp_shift(a, lam, K):
    """Coefficients of a(s + lam) as a polynomial in s."""
    out = [0] * len(a)
    for i, c in enumerate(a):
        for k in range(i + 1):
            out[k] += c * comb(i, k) * Fraction(lam) ** (i - k) if K.p == 0 else c * comb(i, k) * pow(int(lam), i - k, K.p)
    return lp_trim([K.norm(c) for c in out])


def quotient_ring_module(h, q, lam, n, K):
    """Matrices of x and y on D/(x - lam)^(n+1) with basis v_j = (x - lam)^(n-j).

    y acts by r -> q r + r' h.  Everything is computed in the shifted
    variable s = x - lam by plain list arithmetic.
    """
    d = n + 1
    hs, qs = lp_shift(h, lam, K), lp_shift(q, lam, K)
    X = [[0] * d for _ in range(d)]
    Y = [[0] * d for _ in range(d)]
    for j in range(d):
        r = [0] * (n - j) + [1]
        xr = lp_add(lp_mul([lam, 1], r, K), [], K)  # (s + lam) r
        yr = lp_add(lp_mul(qs, r, K), lp_mul(lp_deriv(r, K), hs, K), K)
        for vec, M in ((xr, X), (yr, Y)):
            for e, c in enumerate(vec):
                if e <= n:
                    M[n - e][j] = K.norm(M[n - e][j] + c)
    return X, Y


# -- delta^k(x) as a formal expression in h, h', h'', ... -------------------


def formal_delta_x(k: int) -> dict:
    """delta^k(x) as {exponent tuple e: coeff} meaning prod_j (h^(j))^e[j].

    Differentiation uses Leibniz with d(h^(j)) = h^(j+1), then multiplies by h.
    """
    expr = {(1,): 1}  # delta(x) = h
    for _ in range(k - 1):
        new: dict = {}
        for e, c in expr.items():
            for j, ej in enumerate(e):
                if not ej:
                    continue
                ne = list(e) + [0] * (j + 2 - len(e))
                ne[j] -= 1
                ne[j + 1] += 1
                ne[0] += 1  # times h
                while ne and ne[-1] == 0:
                    ne.pop()
                key = tuple(ne)
                new[key] = new.get(key, 0) + c * ej
        expr = new
    return expr


def brute_partitions(n: int) -> set:
    """Partitions of n as sorted-descending tuples, by unrestricted recursion."""
    if n == 0:
        return {()}
    out = set()
    for first in range(1, n + 1):
        for rest in brute_partitions(n - first):
            out.add(tuple(sorted((first,) + rest, reverse=True)))
    return out


# -- the general-f coefficients b_nu^k -------------------------------------


def _raise(mult, j):
    m = list(mult) + [0]
    m[j - 1] -= 1
    m[j] += 1
    while m and m[-1] == 0:
        m.pop()
    return tuple(m)


def _plus(mult):
    m = list(mult) or [0]
    m[0] += 1
    return tuple(m)


def b_coefficients(k: int) -> dict:
    """{nu (multiplicity tuple): b_nu^k} with delta^k(f) = sum b f^(k-|nu|) h^(nu) h^(k-len nu)."""
    row = {(): 1}
    for kk in range(1, k):
        nxt: dict = {}
        for nu, b in row.items():
            w = sum(j * v for j, v in enumerate(nu, start=1))
            ln = sum(nu)
            if w < kk:  # the f-derivative term keeps nu
                nxt[nu] = nxt.get(nu, 0) + b
            for j, v in enumerate(nu, start=1):
                if v:
                    mu = _raise(nu, j)
                    nxt[mu] = nxt.get(mu, 0) + v * b
            if kk - ln:
                mu = _plus(nu)
                nxt[mu] = nxt.get(mu, 0) + (kk - ln) * b
        row = {k2: v for k2, v in nxt.items() if v}
    return row

# Dense polynomial kernels on raw coefficient lists (index = degree).
# ``F`` is any field context exposing the raw-value operations of
# ahlib.scalars.FieldContext.  No trailing zeros in outputs.

from __future__ import annotations

from .errors import DivisionByZero


def trim(F, c):
    c = list(c)
    while c and F.is_zero(c[-1]):
        c.pop()
    return c


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = F.add(out[i], v)
    return trim(F, out)


def sub(F, a, b):
    n = max(len(a), len(b))
    z = F.zero
    out = [F.sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)]
    return trim(F, out)


def neg(F, a):
    return [F.neg(v) for v in a]


def scale(F, a, s):
    if F.is_zero(s):
        return []
    return trim(F, [F.mul(v, s) for v in a])


def mul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    fadd, fmul, fzero = F.add, F.mul, F.is_zero
    for i, ai in enumerate(a):
        if fzero(ai):
            continue
        for j, bj in enumerate(b):
            out[i + j] = fadd(out[i + j], fmul(ai, bj))
    return trim(F, out)


def divmod_(F, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return [], trim(F, r)
    inv_lc = F.inv(b[-1])
    q = [F.zero] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if F.is_zero(c):
            continue
        c = F.mul(c, inv_lc)
        q[k - db] = c
        for j in range(db + 1):
            r[k - db + j] = F.sub(r[k - db + j], F.mul(c, b[j]))
    return trim(F, q), trim(F, r[:db])


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def inverse_mod(F, a, m):
    """Inverse of ``a`` modulo ``m`` by the extended Euclidean algorithm."""
    r0, r1 = list(m), mod(F, a, m)
    s0, s1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
    if len(r0) != 1:
        raise DivisionByZero("element is not invertible modulo the given polynomial")
    return scale(F, s0, F.inv(r0[0]))

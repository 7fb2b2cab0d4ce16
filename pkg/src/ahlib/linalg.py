"""Exact dense linear algebra over a field context.

Matrices hold raw field values (see :mod:`ahlib.scalars`).  Vectors are
plain lists of raw values; subspaces are kept as reduced row echelon bases,
which makes them canonical and hashable.
"""

from __future__ import annotations

from .errors import MixedContexts


class Matrix:
    __slots__ = ("ctx", "rows", "nrows", "ncols", "_hash")

    def __init__(self, ctx, rows, ncols: int | None = None):
        self.ctx = ctx
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")
        self._hash = None

    @classmethod
    def zeros(cls, ctx, n: int, m: int | None = None) -> "Matrix":
        m = n if m is None else m
        return cls(ctx, [[ctx.zero] * m for _ in range(n)], m)

    @classmethod
    def identity(cls, ctx, n: int) -> "Matrix":
        return cls(ctx, [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_values(cls, ctx, rows) -> "Matrix":
        """Build from ints, Fractions, strings or Scalars."""
        return cls(ctx, [[ctx.coerce(v) for v in r] for r in rows])

    @classmethod
    def diag(cls, ctx, values) -> "Matrix":
        vals = [ctx.coerce(v) for v in values]
        n = len(vals)
        return cls(ctx, [[vals[i] if i == j else ctx.zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def block_diag(cls, a: "Matrix", b: "Matrix") -> "Matrix":
        F = a.ctx
        n = a.nrows + b.nrows
        out = Matrix.zeros(F, n).to_lists()
        for i in range(a.nrows):
            out[i][: a.ncols] = a.rows[i]
        for i in range(b.nrows):
            out[a.nrows + i][a.ncols :] = b.rows[i]
        return cls(F, out, n)

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.rows]

    def entry(self, i: int, j: int):
        from .scalars import Scalar

        return Scalar(self.ctx, self.rows[i][j])

    def to_strings(self) -> list[list[str]]:
        return [[self.ctx.format(v) for v in r] for r in self.rows]

    def _check(self, other: "Matrix"):
        if self.ctx != other.ctx:
            raise MixedContexts(f"{self.ctx} vs {other.ctx}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        F = self.ctx
        return Matrix(F, [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        F = self.ctx
        return Matrix(F, [[F.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "Matrix":
        F = self.ctx
        return Matrix(F, [[F.neg(a) for a in r] for r in self.rows], self.ncols)

    def scale_raw(self, c) -> "Matrix":
        F = self.ctx
        return Matrix(F, [[F.mul(c, a) for a in r] for r in self.rows], self.ncols)

    def scale(self, c) -> "Matrix":
        return self.scale_raw(self.ctx.coerce(c))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        F = self.ctx
        add, mul, is_zero = F.add, F.mul, F.is_zero
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if not is_zero(a)]
            row = []
            for c in cols:
                acc = F.zero
                for k, a in nz:
                    b = c[k]
                    if not is_zero(b):
                        acc = add(acc, mul(a, b))
                row.append(acc)
            out.append(row)
        return Matrix(F, out, other.ncols)

    def __pow__(self, n: int) -> "Matrix":
        result = Matrix.identity(self.ctx, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def apply(self, v) -> list:
        """Matrix times a raw column vector."""
        F = self.ctx
        out = []
        for r in self.rows:
            acc = F.zero
            for a, b in zip(r, v):
                if not F.is_zero(a) and not F.is_zero(b):
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return out

    @property
    def T(self) -> "Matrix":
        return Matrix(self.ctx, list(zip(*self.rows)) if self.rows else [], self.nrows)

    def is_zero(self) -> bool:
        return all(self.ctx.is_zero(a) for r in self.rows for a in r)

    def flat(self) -> list:
        return [a for r in self.rows for a in r]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ctx == other.ctx and self.rows == other.rows and self.ncols == other.ncols

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.rows))
        return self._hash

    def __str__(self):
        return "\n".join("[" + ", ".join(r) + "]" for r in self.to_strings())

    def __repr__(self):
        return f"Matrix({self.ctx}, {self.to_strings()})"


# -- row reduction -----------------------------------------------------


def rref(F, rows, ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of a list of raw rows; returns (nonzero rows, pivots)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if not F.is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, a) for a in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r and not F.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(F, rows, ncols: int) -> int:
    return len(rref(F, rows, ncols)[1])


def nullspace(F, rows, ncols: int) -> list[list]:
    """Basis of {v : A v = 0} for A given by raw rows with ncols columns."""
    red, pivots = rref(F, rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for row, pc in zip(red, pivots):
            if not F.is_zero(row[free]):
                v[pc] = F.neg(row[free])
        basis.append(v)
    return basis


def solve(F, rows, rhs, ncols: int):
    """One solution of A v = rhs, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(F, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    v = [F.zero] * ncols
    for row, pc in zip(red, pivots):
        v[pc] = row[ncols]
    return v


class Subspace:
    """A subspace of F^n stored by its reduced row echelon basis."""

    __slots__ = ("ctx", "n", "basis", "pivots", "_hash")

    def __init__(self, ctx, n: int, vectors=()):
        self.ctx = ctx
        self.n = n
        red, piv = rref(ctx, vectors, n)
        self.basis = tuple(tuple(r) for r in red)
        self.pivots = tuple(piv)
        self._hash = None

    @classmethod
    def zero(cls, ctx, n: int) -> "Subspace":
        return cls(ctx, n)

    @classmethod
    def full(cls, ctx, n: int) -> "Subspace":
        return cls(ctx, n, Matrix.identity(ctx, n).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        F = self.ctx
        w = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = w[pc]
            if not F.is_zero(c):
                w = [F.sub(a, F.mul(c, b)) for a, b in zip(w, row)]
        return all(F.is_zero(a) for a in w)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ctx, self.n, list(self.basis) + list(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        F = self.ctx
        if not self.basis or not other.basis:
            return Subspace(F, self.n)
        cols = list(self.basis) + [[F.neg(a) for a in w] for w in other.basis]
        # unknowns: coefficients of the two bases; equations: coordinates
        eqs = [[c[i] for c in cols] for i in range(self.n)]
        vecs = []
        k = len(self.basis)
        for sol in nullspace(F, eqs, len(cols)):
            v = [F.zero] * self.n
            for a, u in zip(sol[:k], self.basis):
                if not F.is_zero(a):
                    v = [F.add(s, F.mul(a, b)) for s, b in zip(v, u)]
            vecs.append(v)
        return Subspace(F, self.n, vecs)

    def is_invariant(self, mats) -> bool:
        return all(self.contains(M.apply(v)) for M in mats for v in self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ctx == other.ctx and self.n == other.n and self.basis == other.basis

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.basis))
        return self._hash

    def sort_key(self):
        return (self.dim, tuple(tuple(self.ctx.format(a) for a in r) for r in self.basis))

    def __repr__(self):
        rows = [[self.ctx.format(a) for a in r] for r in self.basis]
        return f"Subspace(dim={self.dim}, basis={rows})"


def span_closure(ctx, n: int, seeds, mats) -> Subspace:
    """Smallest subspace containing ``seeds`` and invariant under every matrix in ``mats``."""
    red: list[list] = []
    pivots: list[int] = []
    queue = [list(v) for v in seeds]

    def reduce(v):
        for row, pc in zip(red, pivots):
            c = v[pc]
            if not ctx.is_zero(c):
                v = [ctx.sub(a, ctx.mul(c, b)) for a, b in zip(v, row)]
        return v

    while queue:
        v = reduce(queue.pop())
        lead = next((i for i, a in enumerate(v) if not ctx.is_zero(a)), None)
        if lead is None:
            continue
        inv = ctx.inv(v[lead])
        v = [ctx.mul(inv, a) for a in v]
        red.append(v)
        pivots.append(lead)
        if len(red) == n:
            break
        for M in mats:
            queue.append(M.apply(v))
    return Subspace(ctx, n, red)


def min_poly_coeffs(X: Matrix) -> list:
    """Raw coefficients (low to high, monic) of the minimal polynomial of X."""
    F = X.ctx
    n = X.nrows
    ident = Matrix.identity(F, n)
    powers = [ident]
    while True:
        cur = powers[-1]
        # does cur lie in span of the previous powers?
        prev = [P.flat() for P in powers[:-1]]
        if prev:
            eqs = [[p[i] for p in prev] for i in range(n * n)]
            sol = solve(F, eqs, cur.flat(), len(prev))
            if sol is not None:
                return [F.neg(a) for a in sol] + [F.one]
        powers.append(cur @ X)

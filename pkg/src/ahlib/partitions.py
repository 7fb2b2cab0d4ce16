"""Partitions and the integer coefficients c_mu^k in the expansion

    delta^k(x) = sum_{mu |- k-1} c_mu^k h^(mu) h^(k - len(mu)),

where h^(mu) = prod_j (h^(j))^(mu_j) uses ordinary derivatives of h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import MissingPart, SizeGuard
from .poly import Poly, derivative

MAX_PARTITION_WEIGHT = 60
MAX_TABLE_K = 40


@dataclass(frozen=True, order=True)
class Partition:
    """A partition stored by multiplicities: mult[j-1] = number of parts equal to j."""

    mult: tuple = ()

    def __post_init__(self):
        m = list(self.mult)
        while m and m[-1] == 0:
            m.pop()
        if any(v < 0 for v in m):
            raise ValueError("multiplicities must be nonnegative")
        object.__setattr__(self, "mult", tuple(m))

    @classmethod
    def from_parts(cls, parts) -> "Partition":
        parts = [p for p in parts if p]
        if any(p < 0 for p in parts):
            raise ValueError("parts must be positive")
        mult = [0] * max(parts, default=0)
        for p in parts:
            mult[p - 1] += 1
        return cls(tuple(mult))

    @property
    def parts(self) -> tuple:
        """Parts in nonincreasing order."""
        out = []
        for j in range(len(self.mult), 0, -1):
            out.extend([j] * self.mult[j - 1])
        return tuple(out)

    @property
    def weight(self) -> int:
        return sum(j * v for j, v in enumerate(self.mult, start=1))

    @property
    def length(self) -> int:
        return sum(self.mult)

    def count(self, j: int) -> int:
        return self.mult[j - 1] if 1 <= j <= len(self.mult) else 0

    def label(self) -> str:
        """Exponential notation, e.g. (2^2,1); the empty partition is (0)."""
        if not self.mult:
            return "(0)"
        bits = []
        for j in range(len(self.mult), 0, -1):
            v = self.mult[j - 1]
            if v == 1:
                bits.append(str(j))
            elif v > 1:
                bits.append(f"{j}^{v}")
        return "(" + ",".join(bits) + ")"

    def __str__(self):
        return self.label()


EMPTY = Partition()


def _partitions_desc(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_desc(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse lexicographic order of their part lists."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_PARTITION_WEIGHT:
        raise SizeGuard(f"partitions of {n} exceed the guard {MAX_PARTITION_WEIGHT}")
    return [Partition.from_parts(p) for p in _partitions_desc(n, n)]


def raise_part(nu: Partition, j: int) -> Partition:
    """nu[j]: one part j replaced by j + 1."""
    if nu.count(j) < 1:
        raise MissingPart(f"{nu} has no part equal to {j}")
    m = list(nu.mult) + [0]
    m[j - 1] -= 1
    m[j] += 1
    return Partition(tuple(m))


def add_unit_part(nu: Partition) -> Partition:
    """nu+: one more part equal to 1."""
    m = list(nu.mult) or [0]
    m[0] += 1
    return Partition(tuple(m))


@dataclass(frozen=True)
class PartitionCoeffTable:
    k: int
    coeffs: dict

    def entries(self) -> list[tuple[Partition, int]]:
        """Entries ordered like enumerate_partitions(k - 1)."""
        order = {p: i for i, p in enumerate(enumerate_partitions(self.k - 1))}
        return sorted(self.coeffs.items(), key=lambda kv: order[kv[0]])

    def total(self) -> int:
        return sum(self.coeffs.values())

    def row_text(self) -> str:
        return " ".join(f"{mu.label()}_{c}" for mu, c in self.entries())


def _next_row(prev: dict, k: int) -> dict:
    """Row k from row k - 1 by the two transfer rules."""
    out: dict[Partition, int] = {}
    for nu, c in prev.items():
        for j, v in enumerate(nu.mult, start=1):
            if v:
                mu = raise_part(nu, j)
                out[mu] = out.get(mu, 0) + v * c
        w = k - 1 - nu.length
        if w:
            mu = add_unit_part(nu)
            out[mu] = out.get(mu, 0) + w * c
    return {mu: c for mu, c in out.items() if c}


def coeff_rows(k: int) -> list[PartitionCoeffTable]:
    """Tables for rows 1..k."""
    if k < 1:
        raise ValueError("k must be positive")
    if k > MAX_TABLE_K:
        raise SizeGuard(f"k = {k} exceeds the table guard {MAX_TABLE_K}")
    rows = [PartitionCoeffTable(1, {EMPTY: 1})]
    for kk in range(2, k + 1):
        rows.append(PartitionCoeffTable(kk, _next_row(rows[-1].coeffs, kk)))
    return rows


def coeff_table(k: int) -> PartitionCoeffTable:
    return coeff_rows(k)[-1]


def factorial_sum_check(k: int) -> tuple[int, bool]:
    total = coeff_table(k).total()
    return total, total == math.factorial(k - 1)


def expand_delta_x(k: int, ctx) -> Poly:
    """delta^k(x) assembled from the coefficient table and derivatives of h."""
    if k < 1:
        raise ValueError("k must be positive")
    table = coeff_table(k)
    F = ctx.field
    h = ctx.h
    derivs = [h]
    for _ in range(k):
        derivs.append(derivative(derivs[-1]))
    total = Poly(F)
    for mu, c in table.coeffs.items():
        term = h ** (k - mu.length)
        for j, v in enumerate(mu.mult, start=1):
            if v:
                term = term * derivs[j] ** v
        total = total + term * c
    return total

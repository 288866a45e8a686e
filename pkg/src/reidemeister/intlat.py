"""Exact integer matrices, Smith normal form and lattice queries.

Everything here works on Python ints, so there is no overflow however large
the entries of A^n get. Matrices are small (2x2 for the group, k x k for
abelian twists), so plain tuples beat any array library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InfiniteCokernel, NonInvertible

INFINITE = math.inf

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntMat:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "IntMat":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, k: int) -> "IntMat":
        return cls(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))

    @classmethod
    def zero(cls, r: int, c: int | None = None) -> "IntMat":
        c = r if c is None else c
        return cls(tuple((0,) * c for _ in range(r)))

    @classmethod
    def diag(cls, entries: Sequence[int]) -> "IntMat":
        k = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(k))
                         for i in range(k)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def is_square(self) -> bool:
        r, c = self.shape
        return r == c

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    @property
    def T(self) -> "IntMat":
        r, c = self.shape
        return IntMat(tuple(tuple(self.rows[i][j] for i in range(r)) for j in range(c)))

    def __add__(self, other: "IntMat") -> "IntMat":
        return IntMat(tuple(tuple(a + b for a, b in zip(r, s))
                            for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "IntMat") -> "IntMat":
        return IntMat(tuple(tuple(a - b for a, b in zip(r, s))
                            for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "IntMat":
        return IntMat(tuple(tuple(-a for a in r) for r in self.rows))

    def __mul__(self, scalar: int) -> "IntMat":
        return IntMat(tuple(tuple(scalar * a for a in r) for r in self.rows))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, IntMat):
            cols = list(zip(*other.rows))
            return IntMat(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols)
                                for r in self.rows))
        return self.apply(other)

    def apply(self, v: Sequence[int]) -> Vector:
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __repr__(self) -> str:
        return f"IntMat({self.tolist()})"


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ M @ V == D`` with ``D`` diagonal, ``d1 | d2 | ...``, U and V unimodular."""
    D: IntMat
    U: IntMat
    V: IntMat

    @property
    def diagonal(self) -> tuple[int, ...]:
        r, c = self.D.shape
        return tuple(self.D[i, i] for i in range(min(r, c)))


def det(m: IntMat) -> int:
    """Exact determinant; Bareiss fraction-free elimination above 2x2."""
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    k = m.shape[0]
    if k == 0:
        return 1
    if k == 1:
        return m[0, 0]
    if k == 2:
        return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    a = [list(r) for r in m.rows]
    sign = 1
    prev = 1
    for t in range(k - 1):
        if a[t][t] == 0:
            for i in range(t + 1, k):
                if a[i][t] != 0:
                    a[t], a[i] = a[i], a[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, k):
            for j in range(t + 1, k):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * a[t][t] - a[i][t] * a[t][j]) // prev
        prev = a[t][t]
    return sign * a[k - 1][k - 1]


def inverse(m: IntMat) -> IntMat:
    """Integer inverse of a unimodular matrix."""
    d = det(m)
    if d not in (1, -1):
        raise NonInvertible(f"det = {d}, matrix has no integer inverse")
    k = m.shape[0]
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(k)]
         for i, r in enumerate(m.rows)]
    for t in range(k):
        p = next(i for i in range(t, k) if a[i][t] != 0)
        a[t], a[p] = a[p], a[t]
        piv = a[t][t]
        a[t] = [x / piv for x in a[t]]
        for i in range(k):
            if i != t and a[i][t] != 0:
                f = a[i][t]
                a[i] = [x - f * y for x, y in zip(a[i], a[t])]
    return IntMat(tuple(tuple(int(x) for x in r[k:]) for r in a))


@lru_cache(maxsize=4096)
def mat_pow(m: IntMat, n: int) -> IntMat:
    if not m.is_square:
        raise ValueError("power of a non-square matrix")
    if n < 0:
        return mat_pow(inverse(m), -n)
    result = IntMat.identity(m.shape[0])
    base = m
    while n:
        if n & 1:
            result = result @ base
        base = base @ base
        n >>= 1
    return result


def snf(m: IntMat) -> SnfDecomposition:
    """Smith normal form with transforms.

    Pivot: smallest nonzero absolute value in the remaining block, first in
    row-major order on ties. The output is therefore deterministic.
    """
    r, c = m.shape
    D = [list(row) for row in m.rows]
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    x = abs(D[i][j])
                    if x and (best is None or x < best[0]):
                        best = (x, i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, r):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, c):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, r)
                        if any(D[i][j] % p for j in range(t + 1, c))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SnfDecomposition(IntMat.of(D), IntMat.of(U), IntMat.of(V))


def lattice_member(m: IntMat, v: Sequence[int]) -> Vector | None:
    """Return ``w`` with ``m @ w == v``, or None if ``v`` is outside the column lattice."""
    s = snf(m)
    r, c = m.shape
    y = s.U.apply(v)
    diag = s.diagonal
    x = [0] * c
    for i in range(r):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if y[i] != 0:
                return None
        else:
            q, rem = divmod(y[i], d)
            if rem:
                return None
            x[i] = q
    return s.V.apply(x)


def coker_order(m: IntMat) -> int | float:
    d = det(m)
    return abs(d) if d else INFINITE


def coset_label(s: SnfDecomposition, v: Sequence[int]) -> Vector:
    """Canonical coordinates of ``v`` in Z^k / mZ^k; equal labels iff same coset."""
    r = s.D.shape[0]
    diag = s.diagonal
    if len(diag) < r or any(d == 0 for d in diag):
        raise InfiniteCokernel("cokernel is infinite; no finite coset labelling")
    y = s.U.apply(v)
    return tuple(yi % d for yi, d in zip(y, diag))


def coset_representatives(m: IntMat) -> list[Vector]:
    """One vector per coset of Z^k / mZ^k, in label order (finite cokernels only)."""
    s = snf(m)
    diag = s.diagonal
    if any(d == 0 for d in diag) or len(diag) < m.shape[0]:
        raise InfiniteCokernel("cokernel is infinite")
    Uinv = inverse(s.U)
    reps = [()]
    for d in diag:
        reps = [r + (a,) for r in reps for a in range(d)]
    return [Uinv.apply(x) for x in reps]

"""Twisted conjugacy: decision, canonical labels, Reidemeister numbers, congruences.

For g = ((x,y),z) and h = (v,n) the twisted conjugate is

    g h t(g^-1) = (A^z v + (I - A^(z+n) M A^(-z)) (x,y),  z + n - eps z).

With eps = -1 this is ``(A^z v + (I - A^(2z+n) M)(x,y), 2z+n)``, so a class
meets only levels of one parity, and on the base level p in {0, 1} it is a
coset of ``(I - A^p M) Z^2``. With eps = +1 levels are preserved and
``A^(z+n) M A^(-z) = A^n M``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DegenerateLattice, DomainError, InfiniteReidemeister, UnsupportedTwist
from .grp import PHI, Elem, Twist, twisted_conj
from .intlat import (INFINITE, IntMat, SnfDecomposition, coker_order, coset_label,
                     coset_representatives, det, lattice_member, mat_pow, snf)

# j mod 6 -> class -> condition on ((m,k), j) for membership
PARITY_TABLE: dict[int, dict[str, str | None]] = {
    0: {"B1": "m+k even", "B2": "m+k odd", "B3": None, "B4": None},
    1: {"B1": None, "B2": None, "B3": "m even", "B4": "m odd"},
    2: {"B1": "k even", "B2": "k odd", "B3": None, "B4": None},
    3: {"B1": None, "B2": None, "B3": "m+k even", "B4": "m+k odd"},
    4: {"B1": "m even", "B2": "m odd", "B3": None, "B4": None},
    5: {"B1": None, "B2": None, "B3": "k even", "B4": "k odd"},
}

CONDITIONS = {
    "m+k even": lambda m, k: (m + k) % 2 == 0,
    "m+k odd": lambda m, k: (m + k) % 2 == 1,
    "m even": lambda m, k: m % 2 == 0,
    "m odd": lambda m, k: m % 2 == 1,
    "k even": lambda m, k: k % 2 == 0,
    "k odd": lambda m, k: k % 2 == 1,
}

CLASS_NAMES = ("B1", "B2", "B3", "B4")


@dataclass(frozen=True, order=True)
class ClassId:
    parity: int
    coset: tuple[int, ...]


@dataclass(frozen=True)
class ConjugacyWitness:
    g: Elem


def level_matrix(t: Twist, n: int) -> IntMat:
    """I - A^n M: the image of conjugators (x,y) on level n."""
    return IntMat.identity(2) - mat_pow(t.A, n) @ t.M


@lru_cache(maxsize=256)
def _level_snf(t: Twist, n: int) -> SnfDecomposition:
    return snf(level_matrix(t, n))


def _solve(t: Twist, n: int, target) -> tuple[int, int] | None:
    L = level_matrix(t, n)
    if det(L) == 0:
        raise DegenerateLattice(f"det(I - A^{n} M) = 0 on level {n}")
    return lattice_member(L, target)


def are_twisted_conjugate(h1: Elem, h2: Elem, t: Twist) -> ConjugacyWitness | None:
    """A witness g with ``twisted_conj(g, h1, t) == h2``, or None."""
    A = t.A
    if t.eps == -1:
        dn = h2.n - h1.n
        if dn % 2:
            return None
        z = dn // 2
        Az = mat_pow(A, z).apply(h1.v)
        w = _solve(t, h2.n, (h2.v[0] - Az[0], h2.v[1] - Az[1]))
        return None if w is None else ConjugacyWitness(Elem(w, z))

    if h1.n != h2.n:
        return None
    n = h1.n
    L = level_matrix(t, n)
    if det(L) == 0:
        raise DegenerateLattice(f"det(I - A^{n} M) = 0 on level {n}")
    s = _level_snf(t, n)
    # A commutes with M, so it permutes the finite quotient; walk one cycle.
    target = coset_label(s, h2.v)
    start = coset_label(s, h1.v)
    cur = h1.v
    z = 0
    while True:
        if coset_label(s, cur) == target:
            Az = mat_pow(A, z).apply(h1.v)
            w = lattice_member(L, (h2.v[0] - Az[0], h2.v[1] - Az[1]))
            return ConjugacyWitness(Elem(w, z))
        cur = A.apply(cur)
        z += 1
        if coset_label(s, cur) == start:
            return None


def base_transport(h: Elem) -> tuple[int, int]:
    """(p, z) with h.n = 2z + p, p in {0, 1}."""
    p = h.n % 2
    return p, (h.n - p) // 2


def base_representative(h: Elem, t: Twist = PHI) -> tuple[Elem, Elem]:
    """(h0, g): h0 on level 0 or 1 and ``twisted_conj(g, h0, t) == h``."""
    _require_reversing(t)
    p, z = base_transport(h)
    v0 = mat_pow(t.A, -z).apply(h.v)
    return Elem(v0, p), Elem((0, 0), z)


def _require_reversing(t: Twist):
    if t.eps != -1:
        raise UnsupportedTwist("canonical labels need eps = -1; eps = +1 has infinitely many classes")


def class_id(h: Elem, t: Twist = PHI) -> ClassId:
    _require_reversing(t)
    h0, _ = base_representative(h, t)
    return ClassId(h0.n, coset_label(_level_snf(t, h0.n), h0.v))


def class_name(cid: ClassId, t: Twist = PHI) -> str | None:
    """B1..B4 for phi (B1/B3 = trivial coset on level 0/1)."""
    if t != PHI:
        return None
    trivial = all(c == 0 for c in cid.coset)
    return CLASS_NAMES[2 * cid.parity + (0 if trivial else 1)]


def class_representatives(t: Twist = PHI) -> dict[ClassId, Elem]:
    """One representative per class, on the base levels, in ClassId order."""
    _require_reversing(t)
    out = {}
    for p in (0, 1):
        for v in coset_representatives(level_matrix(t, p)):
            h = Elem(v, p)
            out[class_id(h, t)] = h
    return dict(sorted(out.items()))


def reidemeister_number(t: Twist) -> int | float:
    if t.eps == 1:
        return INFINITE
    even = coker_order(level_matrix(t, 0))
    odd = coker_order(level_matrix(t, 1))
    return even + odd


def infinite_reason(t: Twist) -> str | None:
    if t.eps == 1:
        return "level-preserving"
    if reidemeister_number(t) == INFINITE:
        return "degenerate cokernel"
    return None


def reidemeister_abelian(F: IntMat) -> int | float:
    return coker_order(IntMat.identity(F.shape[0]) - F)


def mobius(d: int) -> int:
    if d <= 0:
        raise DomainError(f"mobius needs d >= 1, got {d}")
    sign = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            sign = -sign
        p += 1
    return -sign if d > 1 else sign


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def congruence_check(F: IntMat, n_max: int) -> list[tuple[int, int, bool]]:
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    R = {}
    for j in range(1, n_max + 1):
        r = reidemeister_abelian(mat_pow(F, j))
        if r == INFINITE:
            raise InfiniteReidemeister(j)
        R[j] = r
    rows = []
    for n in range(1, n_max + 1):
        lhs = sum(mobius(d) * R[n // d] for d in divisors(n))
        rows.append((n, lhs, lhs % n == 0))
    return rows


__all__ = [
    "ClassId", "ConjugacyWitness", "PARITY_TABLE", "CONDITIONS", "CLASS_NAMES",
    "are_twisted_conjugate", "class_id", "class_name", "class_representatives",
    "base_representative", "reidemeister_number", "reidemeister_abelian",
    "mobius", "congruence_check", "level_matrix", "infinite_reason", "twisted_conj",
]

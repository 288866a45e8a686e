"""Finite orbits on the dual torus, induced representations, twisted characters.

A finite A-orbit ``{p_1, ..., p_r}`` of rational torus points gives an
r-dimensional representation on the span of basis vectors e_1..e_r:

    rho((v, 0)) e_i = exp(2 pi i <v, p_i>) e_i
    rho((0, n)) e_i = e_j  where p_j = A^(-n) p_i

The second line uses A as its own dual action, which needs A symmetric.
If the orbit is also M-invariant, the permutation S: e_i -> e_(M p_i)
intertwines rho with rho o phi, and ``g -> Tr(S rho(g))`` is constant on
twisted conjugacy classes.

Matrices here are monomial (one root of unity per row and column), so they
are stored as a permutation plus one angle per column and multiplied exactly.
Irreducibility of the induced representations is not checked.
"""

from __future__ import annotations

import cmath
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from .errors import DegenerateLattice, NotInvariant, UnsupportedMatrix
from .grp import A as A_BASE, PHI, Elem, Twist
from .intlat import IntMat, det, lattice_member, mat_pow
from . import reid

# -- exact root-of-unity sums -------------------------------------------------


def _angle(x) -> Fraction:
    return Fraction(x) % 1


class RootSum:
    """Integer combination of roots of unity ``sum c * exp(2 pi i a)``.

    Angles are folded into [0, 1/2) using exp(2 pi i (a + 1/2)) = -exp(2 pi i a),
    which makes the representation canonical whenever every denominator is <= 2.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict[Fraction, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for a, c in items:
            a = _angle(a)
            if a >= Fraction(1, 2):
                a -= Fraction(1, 2)
                c = -c
            acc[a] += c
        self.terms = {a: c for a, c in sorted(acc.items()) if c}

    @classmethod
    def root(cls, angle, coeff: int = 1) -> "RootSum":
        return cls([(angle, coeff)])

    @classmethod
    def integer(cls, n: int) -> "RootSum":
        return cls([(0, n)])

    def __add__(self, other):
        other = _coerce(other)
        return RootSum(list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return RootSum([(a, -c) for a, c in self.terms.items()])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __mul__(self, other):
        other = _coerce(other)
        return RootSum([(a + b, c * d) for a, c in self.terms.items()
                        for b, d in other.terms.items()])

    __rmul__ = __mul__

    @property
    def max_denominator(self) -> int:
        return max((a.denominator for a in self.terms), default=1)

    @property
    def exact(self) -> bool:
        """Equality against this value is decided exactly (denominators <= 2)."""
        return self.max_denominator <= 2

    def is_integer(self) -> bool:
        return all(a == 0 for a in self.terms)

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self!r} is not an integer")
        return self.terms.get(Fraction(0), 0)

    def __complex__(self) -> complex:
        return sum((c * cmath.exp(2j * math.pi * float(a)) for a, c in self.terms.items()),
                   0j)

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        if self.exact and other.exact:
            return self.terms == other.terms
        return abs(complex(self) - complex(other)) < 1e-12

    def __hash__(self):
        if self.exact:
            return hash(tuple(self.terms.items()))
        return hash(round(complex(self).real, 9))

    def __repr__(self):
        if self.is_integer():
            return f"RootSum({self.to_int()})"
        body = " + ".join(f"{c}*e({a})" for a, c in self.terms.items())
        return f"RootSum({body})"


def _coerce(x) -> RootSum:
    if isinstance(x, RootSum):
        return x
    if isinstance(x, int):
        return RootSum.integer(x)
    raise TypeError(f"cannot treat {type(x).__name__} as RootSum")


@dataclass(frozen=True)
class Monomial:
    """Column j has its single nonzero entry exp(2 pi i angles[j]) in row perm[j]."""
    perm: tuple[int, ...]
    angles: tuple[Fraction, ...]

    @classmethod
    def identity(cls, r: int) -> "Monomial":
        return cls(tuple(range(r)), (Fraction(0),) * r)

    @classmethod
    def permutation(cls, perm) -> "Monomial":
        return cls(tuple(perm), (Fraction(0),) * len(perm))

    @classmethod
    def diagonal(cls, angles) -> "Monomial":
        return cls(tuple(range(len(angles))), tuple(_angle(a) for a in angles))

    @property
    def dim(self) -> int:
        return len(self.perm)

    def __matmul__(self, other: "Monomial") -> "Monomial":
        # (self @ other) e_j = self(c_j e_{other.perm[j]})
        perm = tuple(self.perm[other.perm[j]] for j in range(other.dim))
        angles = tuple(_angle(other.angles[j] + self.angles[other.perm[j]])
                       for j in range(other.dim))
        return Monomial(perm, angles)

    def inverse(self) -> "Monomial":
        perm = [0] * self.dim
        angles = [Fraction(0)] * self.dim
        for j, i in enumerate(self.perm):
            perm[i] = j
            angles[i] = _angle(-self.angles[j])
        return Monomial(tuple(perm), tuple(angles))

    def trace(self) -> RootSum:
        return RootSum([(a, 1) for j, a in enumerate(self.angles) if self.perm[j] == j])

    def to_dense(self) -> list[list[RootSum]]:
        out = [[RootSum() for _ in range(self.dim)] for _ in range(self.dim)]
        for j, (i, a) in enumerate(zip(self.perm, self.angles)):
            out[i][j] = RootSum.root(a)
        return out

    def to_int_matrix(self) -> list[list[int]]:
        return [[x.to_int() for x in row] for row in self.to_dense()]


# -- torus points and orbits ---------------------------------------------------


@dataclass(frozen=True, order=True)
class TorusPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", _angle(self.x))
        object.__setattr__(self, "y", _angle(self.y))

    @classmethod
    def of(cls, x, y) -> "TorusPoint":
        return cls(Fraction(x), Fraction(y))

    def moved(self, m: IntMat) -> "TorusPoint":
        (a, b), (c, d) = m.rows
        return TorusPoint(a * self.x + b * self.y, c * self.x + d * self.y)

    def pair(self, v) -> Fraction:
        return _angle(v[0] * self.x + v[1] * self.y)

    def __str__(self):
        return f"({self.x},{self.y})"


@dataclass(frozen=True)
class OrbitRep:
    points: tuple[TorusPoint, ...]
    alpha_perm: tuple[int, ...]
    mu_perm: tuple[int, ...] | None = None

    def __len__(self):
        return len(self.points)


def _require_symmetric(a: IntMat):
    if a != a.T:
        raise UnsupportedMatrix("dual torus action via A itself needs A symmetric")


def _require_orthogonal(m: IntMat):
    if m @ m.T != IntMat.identity(2):
        raise UnsupportedMatrix("dual torus action via M itself needs M orthogonal")


def _perm_of(points, m: IntMat) -> tuple[int, ...] | None:
    index = {p: i for i, p in enumerate(points)}
    out = []
    for p in points:
        q = p.moved(m)
        if q not in index:
            return None
        out.append(index[q])
    return tuple(out)


def alpha_orbit(p: TorusPoint, a: IntMat = A_BASE) -> OrbitRep:
    """Orbit of p under A (mod 1), listed in iteration order from p."""
    _require_symmetric(a)
    pts = [p]
    q = p.moved(a)
    while q != p:
        pts.append(q)
        q = q.moved(a)
    return OrbitRep(tuple(pts), tuple((i + 1) % len(pts) for i in range(len(pts))))


def canonical_orbit(orbit: OrbitRep, t: Twist = PHI) -> OrbitRep:
    """Points sorted lexicographically; mu_perm filled when M preserves the set."""
    pts = tuple(sorted(orbit.points))
    alpha = _perm_of(pts, t.A)
    _require_orthogonal(t.M)
    return OrbitRep(pts, alpha, _perm_of(pts, t.M))


def find_invariant_orbits(q_max: int, t: Twist = PHI) -> list[OrbitRep]:
    """All A-orbits in the grid (1/q_max Z / Z)^2 that M maps onto themselves."""
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    seen: set[TorusPoint] = set()
    out = []
    for i, j in product(range(q_max), repeat=2):
        p = TorusPoint.of(Fraction(i, q_max), Fraction(j, q_max))
        if p in seen:
            continue
        orb = canonical_orbit(alpha_orbit(p, t.A), t)
        seen.update(orb.points)
        if orb.mu_perm is not None:
            out.append(orb)
    return sorted(out, key=lambda o: (len(o), o.points))


def all_orbits(q_max: int, t: Twist = PHI) -> list[OrbitRep]:
    """Every A-orbit in the grid, invariant or not (mu_perm None when not)."""
    seen: set[TorusPoint] = set()
    out = []
    for i, j in product(range(q_max), repeat=2):
        p = TorusPoint.of(Fraction(i, q_max), Fraction(j, q_max))
        if p not in seen:
            orb = canonical_orbit(alpha_orbit(p, t.A), t)
            seen.update(orb.points)
            out.append(orb)
    return sorted(out, key=lambda o: (len(o), o.points))


@dataclass(frozen=True)
class Representation:
    orbit: OrbitRep
    twist: Twist = field(default=PHI)

    def __post_init__(self):
        _require_symmetric(self.twist.A)

    @property
    def dimension(self) -> int:
        return len(self.orbit)


def _shift(rep: Representation, n: int) -> Monomial:
    # rho((0,n)) e_i = e_{sigma^(-n)(i)}, sigma = alpha_perm
    sigma = rep.orbit.alpha_perm
    if n > 0:
        inv = [0] * len(sigma)
        for i, j in enumerate(sigma):
            inv[j] = i
        sigma = tuple(inv)
    perm = list(range(len(sigma)))
    for _ in range(abs(n) % _order(sigma)):
        perm = [sigma[i] for i in perm]
    return Monomial.permutation(perm)


def _order(perm) -> int:
    cur, k = tuple(perm), 1
    ident = tuple(range(len(perm)))
    while cur != ident:
        cur = tuple(perm[i] for i in cur)
        k += 1
    return k


def rep_matrix(rep: Representation, g: Elem) -> Monomial:
    diag = Monomial.diagonal([p.pair(g.v) for p in rep.orbit.points])
    return diag @ _shift(rep, g.n)


def intertwiner(rep: Representation) -> Monomial:
    if rep.orbit.mu_perm is None:
        raise NotInvariant("orbit is not M-invariant; rho o phi is not equivalent to rho")
    return Monomial.permutation(rep.orbit.mu_perm)


def twisted_character(rep: Representation, g: Elem) -> RootSum:
    return (intertwiner(rep) @ rep_matrix(rep, g)).trace()


def sign_character(g: Elem) -> int:
    return -1 if g.n % 2 else 1


def twisted_character_tensor_sign(rep: Representation, g: Elem) -> RootSum:
    return twisted_character(rep, g) * sign_character(g)


def standard_representations(t: Twist = PHI) -> tuple[Representation, Representation]:
    """(rho_1, rho_2): the trivial orbit and the 3-point orbit at denominator 2."""
    small, big = find_invariant_orbits(2, t)
    return Representation(small, t), Representation(big, t)


CHARACTER_NAMES = ("phi_rho1", "phi_pi", "phi_rho2", "phi_rho2_x_pi")


def character_functions(t: Twist = PHI):
    rho1, rho2 = standard_representations(t)
    return {
        "phi_rho1": lambda g: twisted_character(rho1, g),
        "phi_pi": lambda g: RootSum.integer(sign_character(g)),
        "phi_rho2": lambda g: twisted_character(rho2, g),
        "phi_rho2_x_pi": lambda g: twisted_character_tensor_sign(rho2, g),
    }


@dataclass(frozen=True)
class CharacterTable:
    rows: tuple[tuple[int, ...], ...]
    determinant: int
    row_names: tuple[str, ...] = CHARACTER_NAMES
    column_names: tuple[str, ...] = reid.CLASS_NAMES
    representatives: tuple[Elem, ...] = ()


def character_table(t: Twist = PHI) -> CharacterTable:
    if t != PHI:
        raise NotInvariant("the character table is defined for phi only")
    reps = reid.class_representatives(t)
    cols = sorted(reps, key=lambda c: reid.class_name(c, t))
    chars = character_functions(t)
    rows = tuple(tuple(chars[name](reps[c]).to_int() for c in cols) for name in CHARACTER_NAMES)
    return CharacterTable(rows, det(IntMat.of(rows)),
                          representatives=tuple(reps[c] for c in cols))


def l2_twisted_character(g: Elem, t: Twist = PHI) -> int:
    """Number of (s,t) in Z^2 with (m,k) = (M - A^n)(s,t)."""
    L = t.M - mat_pow(t.A, g.n)
    if det(L) == 0:
        raise DegenerateLattice(f"det(M - A^{g.n}) = 0")
    return 0 if lattice_member(L, g.v) is None else 1

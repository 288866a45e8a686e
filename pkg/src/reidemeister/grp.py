"""The group G = Z^2 x|_A Z and its twist endomorphisms.

An element ((m, k), n) multiplies by
``((m,k),n) * ((m',k'),n') = ((m,k) + A^n (m',k'), n + n')``.
A twist acts by ``((m,k),n) -> (M (m,k), eps * n)`` and is a homomorphism
exactly when ``M A = A^eps M``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import IncompatibleTwist, ParseError, UnsupportedMatrix
from .intlat import IntMat, det, mat_pow

A = IntMat.of([[2, 1], [1, 1]])
M_PHI = IntMat.of([[0, 1], [-1, 0]])
I2 = IntMat.identity(2)


def check_hyperbolic(a: IntMat) -> IntMat:
    if a.shape != (2, 2) or det(a) != 1 or abs(a[0, 0] + a[1, 1]) <= 2:
        raise UnsupportedMatrix(f"{a} is not a hyperbolic element of SL(2,Z)")
    return a


@dataclass(frozen=True, order=True)
class Elem:
    v: tuple[int, int]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "v", (int(self.v[0]), int(self.v[1])))
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def of(cls, m: int, k: int, n: int) -> "Elem":
        return cls((m, k), n)

    @property
    def m(self) -> int:
        return self.v[0]

    @property
    def k(self) -> int:
        return self.v[1]

    def __str__(self) -> str:
        return f"(({self.v[0]},{self.v[1]}),{self.n})"


IDENTITY = Elem((0, 0), 0)


@dataclass(frozen=True)
class Twist:
    M: IntMat
    eps: int
    A: IntMat = A

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise IncompatibleTwist(f"eps must be +1 or -1, got {self.eps}")
        if self.M.shape != (2, 2):
            raise IncompatibleTwist("M must be 2x2")
        if self.M @ self.A != mat_pow(self.A, self.eps) @ self.M:
            raise IncompatibleTwist(
                f"M A != A^{self.eps} M for M = {self.M.tolist()}; not an endomorphism of G")

    def __str__(self) -> str:
        (a, b), (c, d) = self.M.rows
        return f"M=[[{a},{b}],[{c},{d}]];eps={self.eps:+d}"


PHI = Twist(M_PHI, -1)
ID_TWIST = Twist(I2, 1)


def mul(a: Elem, b: Elem, alpha: IntMat = A) -> Elem:
    w = mat_pow(alpha, a.n).apply(b.v)
    return Elem((a.v[0] + w[0], a.v[1] + w[1]), a.n + b.n)


def inv(a: Elem, alpha: IntMat = A) -> Elem:
    w = mat_pow(alpha, -a.n).apply(a.v)
    return Elem((-w[0], -w[1]), -a.n)


def apply(t: Twist, a: Elem) -> Elem:
    return Elem(t.M.apply(a.v), t.eps * a.n)


def twist_compose(s: Twist, t: Twist) -> Twist:
    """The twist ``s o t`` (apply t first)."""
    if s.A != t.A:
        raise IncompatibleTwist("twists over different base matrices")
    return Twist(s.M @ t.M, s.eps * t.eps, s.A)


def twist_pow(t: Twist, j: int) -> Twist:
    if j < 0:
        raise ValueError("twist_pow needs j >= 0")
    out = Twist(I2, 1, t.A)
    for _ in range(j):
        out = twist_compose(t, out)
    return out


def twisted_conj(g: Elem, h: Elem, t: Twist) -> Elem:
    """g h t(g^-1)."""
    return mul(mul(g, h, t.A), apply(t, inv(g, t.A)), t.A)


# -- text syntax -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(-?\d+)|(.))")
_ELEM_SHAPE = ["(", "(", int, ",", int, ")", ",", int, ")"]


def parse_elem(text: str) -> Elem:
    """Parse ``((m,k),n)``; whitespace is allowed between tokens."""
    vals = []
    pos = 0
    for want in _ELEM_SHAPE:
        mt = _TOKEN.match(text, pos)
        if mt is None or mt.end() == mt.start() or not mt.group(0).strip():
            raise ParseError(f"unexpected end of input, expected {_name(want)}",
                             text, len(text))
        at = mt.start(1) if mt.group(1) is not None else mt.start(2)
        if want is int:
            if mt.group(1) is None:
                raise ParseError(f"expected integer, found {mt.group(2)!r}", text, at)
            vals.append(int(mt.group(1)))
        elif mt.group(2) != want:
            found = mt.group(1) or mt.group(2)
            raise ParseError(f"expected {want!r}, found {found!r}", text, at)
        pos = mt.end()
    if text[pos:].strip():
        raise ParseError("trailing characters", text, pos + len(text[pos:]) - len(text[pos:].lstrip()))
    return Elem((vals[0], vals[1]), vals[2])


def _name(want) -> str:
    return "integer" if want is int else repr(want)


_MAT_LIT = re.compile(r"\[\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*,\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\]")


def parse_matrix(text: str) -> IntMat:
    """``A``, ``I``, ``-A``, ``A^3``, ``-A^2`` or a literal ``[[a,b],[c,d]]``."""
    s = text.replace(" ", "")
    mt = re.fullmatch(r"(-?)(A|I|\[\[.*\]\])(?:\^(\d+))?", s)
    if not mt:
        raise ParseError("expected A, I, or [[a,b],[c,d]] with optional '-' and '^k'", text, 0)
    sign, body, power = mt.groups()
    if body == "A":
        base = A
    elif body == "I":
        base = I2
    else:
        lit = _MAT_LIT.fullmatch(body)
        if not lit:
            raise ParseError("malformed matrix literal", text, s.index("["))
        a, b, c, d = map(int, lit.groups())
        base = IntMat.of([[a, b], [c, d]])
    out = mat_pow(base, int(power)) if power else base
    return -out if sign else out


def parse_twist(text: str) -> Twist:
    """``phi``, ``phi^k`` or ``M=[[a,b],[c,d]];eps=+-1``."""
    s = text.replace(" ", "")
    mt = re.fullmatch(r"phi(?:\^(\d+))?", s)
    if mt:
        return twist_pow(PHI, int(mt.group(1) or 1))
    mt = re.fullmatch(r"M=(\[\[.*\]\]);eps=([+-]?1)", s)
    if not mt:
        raise ParseError("expected 'phi', 'phi^k' or 'M=[[a,b],[c,d]];eps=+-1'", text, 0)
    M = parse_matrix(mt.group(1))
    return Twist(M, int(mt.group(2)))

"""Twisted conjugacy classes, Reidemeister numbers and twisted characters
for the group Z^2 x|_A Z with A = [[2,1],[1,1]]."""

from .errors import ReidemeisterError
from .grp import A, ID_TWIST, IDENTITY, M_PHI, PHI, Elem, Twist, twisted_conj
from .intlat import INFINITE, IntMat
from .reid import class_id, class_name, reidemeister_number

__all__ = [
    "A", "M_PHI", "PHI", "ID_TWIST", "IDENTITY", "INFINITE",
    "Elem", "Twist", "IntMat", "ReidemeisterError",
    "twisted_conj", "class_id", "class_name", "reidemeister_number",
]

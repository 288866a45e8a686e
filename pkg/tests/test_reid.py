import itertools
import math

import pytest
from hypothesis import given

from reidemeister import reid
from reidemeister.errors import (DegenerateLattice, DomainError, InfiniteReidemeister,
                                 UnsupportedTwist)
from reidemeister.grp import A, I2, ID_TWIST, IDENTITY, M_PHI, PHI, Elem, Twist, twist_pow, twisted_conj
from reidemeister.intlat import INFINITE, IntMat, lattice_member, mat_pow
from reidemeister.oracle import brute_force_abelian
from reidemeister.reid import (ClassId, are_twisted_conjugate, class_id, class_name,
                               congruence_check, mobius, reidemeister_abelian,
                               reidemeister_number)

from conftest import elems, random_elem

PHI2 = twist_pow(PHI, 2)


def brute_witness(h1, h2, t, v=8, z=3):
    for zz in range(-z, z + 1):
        for x in range(-v, v + 1):
            for y in range(-v, v + 1):
                g = Elem((x, y), zz)
                if twisted_conj(g, h1, t) == h2:
                    return g
    return None


# -- are_twisted_conjugate -----------------------------------------------------

def test_conjugate_examples():
    w = are_twisted_conjugate(Elem((0, 0), 0), Elem((1, 1), 0), PHI)
    assert w.g == Elem((1, 0), 0)
    assert are_twisted_conjugate(Elem((0, 0), 0), Elem((1, 0), 0), PHI) is None
    assert are_twisted_conjugate(Elem((0, 0), 0), Elem((0, 0), 1), PHI) is None


@given(elems(8, 6))
def test_reflexive_with_identity_witness(h):
    for t in (PHI, PHI2):
        w = are_twisted_conjugate(h, h, t)
        assert w is not None and twisted_conj(w.g, h, t) == h
    assert are_twisted_conjugate(h, h, PHI).g == IDENTITY


@pytest.mark.parametrize("t", [PHI, PHI2, Twist(-I2, 1)], ids=["phi", "phi2", "minusI"])
def test_decision_agrees_with_brute_force(t):
    box = [Elem((m, k), n) for n in (0, 1, 2) for m in range(-2, 3) for k in range(-2, 3)]
    base = [Elem((0, 0), 0), Elem((1, 0), 0), Elem((0, 1), 1), Elem((1, 1), 2)]
    for h1 in base:
        for h2 in box:
            w = are_twisted_conjugate(h1, h2, t)
            if w is not None:
                assert twisted_conj(w.g, h1, t) == h2
            g = brute_witness(h1, h2, t)
            if g is not None:
                assert w is not None, (h1, h2, g)


def test_phi2_level_zero_classes():
    # (I + I) Z^2 = 2Z^2 and A permutes the three nonzero classes mod 2
    assert are_twisted_conjugate(Elem((1, 0), 0), Elem((0, 1), 0), PHI2).g.n == 1
    assert are_twisted_conjugate(Elem((1, 0), 0), Elem((1, 1), 0), PHI2) is not None
    assert are_twisted_conjugate(Elem((0, 0), 0), Elem((1, 0), 0), PHI2) is None
    assert are_twisted_conjugate(Elem((0, 0), 0), Elem((0, 0), 1), PHI2) is None


def test_degenerate_lattice_raises():
    with pytest.raises(DegenerateLattice):
        are_twisted_conjugate(Elem((0, 0), 0), Elem((1, 0), 0), ID_TWIST)
    t = Twist(A, 1)  # I - A^n A is singular only on level -1
    with pytest.raises(DegenerateLattice):
        are_twisted_conjugate(Elem((0, 0), -1), Elem((1, 0), -1), t)
    assert are_twisted_conjugate(Elem((0, 0), 0), Elem((0, 0), 0), t) is not None


def test_symmetric_and_transitive(rng):
    for t in (PHI, PHI2):
        for _ in range(150):
            h1 = random_elem(rng, 6, 4)
            g1, g2 = random_elem(rng, 3, 2), random_elem(rng, 3, 2)
            h2 = twisted_conj(g1, h1, t)
            h3 = twisted_conj(g2, h2, t)
            back = are_twisted_conjugate(h2, h1, t)
            assert back is not None and twisted_conj(back.g, h2, t) == h1
            w13 = are_twisted_conjugate(h1, h3, t)
            assert w13 is not None and twisted_conj(w13.g, h1, t) == h3


def test_random_pairs_symmetric(rng):
    for _ in range(300):
        h1, h2 = random_elem(rng, 6, 4), random_elem(rng, 6, 4)
        assert (are_twisted_conjugate(h1, h2, PHI) is None) == \
               (are_twisted_conjugate(h2, h1, PHI) is None)


# -- class_id ------------------------------------------------------------------

def test_class_id_examples():
    c0 = class_id(Elem((0, 0), 0))
    assert c0 == ClassId(0, (0, 0)) and class_name(c0) == "B1"
    c1 = class_id(Elem((1, 0), 1))
    assert c1.parity == 1 and c1.coset != (0, 0) and class_name(c1) == "B4"
    # level 2 transports to level 0 through A^-1: A^-1 (0,1) = (-1,2), odd sum
    c2 = class_id(Elem((0, 1), 2))
    assert c2 == class_id(Elem((-1, 2), 0))
    assert class_name(c2) == "B2"
    assert class_name(class_id(Elem((0, 2), 2))) == "B1"


def test_class_id_rejects_level_preserving():
    with pytest.raises(UnsupportedTwist):
        class_id(Elem((0, 0), 0), PHI2)


def test_class_id_invariant_under_conjugation_1000(rng):
    for _ in range(1000):
        g, h = random_elem(rng, 8, 6), random_elem(rng, 8, 6)
        assert class_id(twisted_conj(g, h, PHI)) == class_id(h)


def test_class_id_equal_iff_conjugate(rng):
    for _ in range(1000):
        h1, h2 = random_elem(rng, 6, 4), random_elem(rng, 6, 4)
        same = class_id(h1) == class_id(h2)
        assert same == (are_twisted_conjugate(h1, h2, PHI) is not None)


def test_class_id_level_transport(rng):
    for _ in range(300):
        h = random_elem(rng, 8, 6)
        z = rng.randint(-4, 4)
        moved = Elem(mat_pow(A, z).apply(h.v), h.n + 2 * z)
        assert class_id(moved) == class_id(h)


def test_base_representative_witness(rng):
    for _ in range(200):
        h = random_elem(rng, 8, 8)
        h0, g = reid.base_representative(h)
        assert h0.n in (0, 1)
        assert twisted_conj(g, h0, PHI) == h


@pytest.mark.parametrize("n", range(-6, 7))
def test_lattice_transport_identity(n):
    left = A @ reid.level_matrix(PHI, n)
    right = reid.level_matrix(PHI, n + 2)
    for j in range(2):
        assert lattice_member(right, left.col(j)) is not None
        assert lattice_member(left, right.col(j)) is not None


def test_class_representatives():
    reps = reid.class_representatives()
    assert [class_name(c) for c in reps] == ["B1", "B2", "B3", "B4"]
    assert all(class_id(h) == c for c, h in reps.items())


# -- parity table --------------------------------------------------------------

def test_parity_table_matches_class_names():
    for j in range(-12, 13):
        row = reid.PARITY_TABLE[j % 6]
        for m, k in itertools.product(range(-4, 5), repeat=2):
            name = class_name(class_id(Elem((m, k), j)))
            assert row[name] is not None
            assert reid.CONDITIONS[row[name]](m, k)


def test_parity_table_200_per_cell(rng):
    for j in range(6):
        for name, cond in reid.PARITY_TABLE[j].items():
            hits = 0
            tries = 0
            while hits < 200 and tries < 5000:
                tries += 1
                h = Elem((rng.randint(-50, 50), rng.randint(-50, 50)), j)
                if class_name(class_id(h)) != name:
                    continue
                hits += 1
                assert cond is not None and reid.CONDITIONS[cond](*h.v)
            assert (hits == 200) == (cond is not None)


# -- Reidemeister numbers --------------------------------------------------------

def test_reidemeister_examples():
    assert reidemeister_number(PHI) == 4
    assert reidemeister_number(PHI2) == INFINITE
    assert reidemeister_number(ID_TWIST) == INFINITE
    assert reid.infinite_reason(PHI2) == "level-preserving"
    degenerate = Twist(IntMat.of([[1, -1], [0, -1]]), -1)
    assert reidemeister_number(degenerate) == INFINITE
    assert reid.infinite_reason(degenerate) == "degenerate cokernel"
    assert reid.infinite_reason(PHI) is None


def test_reidemeister_matches_distinct_class_ids():
    ids = {class_id(Elem((m, k), n)) for n in range(-5, 6)
           for m in range(-8, 9) for k in range(-8, 9)}
    assert len(ids) == reidemeister_number(PHI) == 4


@pytest.mark.parametrize("a,b", [(2, 1), (0, 1), (1, 1), (3, -1)])
def test_reidemeister_other_reversing_twists(a, b):
    t = Twist(a * I2 @ M_PHI + b * A @ M_PHI, -1)
    R = reidemeister_number(t)
    if R == INFINITE:
        return
    ids = {class_id(Elem((m, k), n), t) for n in range(-2, 3)
           for m in range(-12, 13) for k in range(-12, 13)}
    assert len(ids) == R


def test_phi2_levels_never_merge():
    for n1, n2 in itertools.combinations(range(-3, 4), 2):
        assert brute_witness(Elem((0, 0), n1), Elem((0, 0), n2), PHI2, v=4, z=3) is None


def test_reidemeister_abelian_examples():
    assert reidemeister_abelian(A) == 1
    assert reidemeister_abelian(I2) == INFINITE
    assert reidemeister_abelian(mat_pow(A, 2)) == 5
    assert reidemeister_abelian(mat_pow(A, 3)) == 16


@pytest.mark.parametrize("F", [A, IntMat.of([[0, 1], [-1, 0]]), IntMat.of([[3, 0], [0, 3]]), -I2])
def test_reidemeister_abelian_brute_force(F):
    R = reidemeister_abelian(F)
    blocks = brute_force_abelian(F, v_bound=4, conj_bound=6)
    assert len(blocks) == R


def test_reidemeister_abelian_lucas():
    # |det(I - A^n)| = L_{2n} - 2
    luc = [2, 1]
    while len(luc) < 60:
        luc.append(luc[-1] + luc[-2])
    for n in range(1, 25):
        assert reidemeister_abelian(mat_pow(A, n)) == luc[2 * n] - 2


def test_reidemeister_abelian_3x3():
    F = IntMat.of([[2, 1, 0], [1, 1, 0], [0, 0, 3]])
    assert reidemeister_abelian(F) == 2
    assert len(brute_force_abelian(F, v_bound=2, conj_bound=3)) == 2


# -- mobius / congruences ----------------------------------------------------------

def trial_factor(n):
    out = {}
    p = 2
    while n > 1:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    return out


def test_mobius_examples():
    assert mobius(1) == 1
    assert mobius(6) == 1
    assert mobius(12) == 0
    assert mobius(30) == -1
    assert mobius(7) == -1
    with pytest.raises(DomainError):
        mobius(0)


@pytest.mark.parametrize("n", range(1, 400))
def test_mobius_oracle(n):
    f = trial_factor(n)
    expected = 0 if any(e > 1 for e in f.values()) else (-1) ** len(f)
    assert mobius(n) == expected
    assert sum(mobius(d) for d in reid.divisors(n)) == (1 if n == 1 else 0)


def test_congruence_examples():
    rows = congruence_check(A, 3)
    assert rows == [(1, 1, True), (2, 4, True), (3, 15, True)]


@pytest.mark.parametrize("F", [A, mat_pow(A, 2), -A, IntMat.of([[3, 1], [1, 1]])])
def test_congruences_hold(F):
    assert all(ok for _, _, ok in congruence_check(F, 24))


def test_congruence_infinite():
    with pytest.raises(InfiniteReidemeister) as e:
        congruence_check(-I2, 5)  # det(I - (-I)^2) = 0
    assert e.value.power == 2
    with pytest.raises(DomainError):
        congruence_check(A, 0)


def test_congruence_exact_for_large_n():
    rows = congruence_check(A, 60)
    assert rows[-1][1] > 2 ** 64
    assert all(ok for _, _, ok in rows)

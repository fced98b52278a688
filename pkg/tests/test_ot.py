import random
from fractions import Fraction

import pytest

from otarith import ideals, intervals, ot, units
from otarith.errors import NotAdmissible, NotSimpleType
from otarith.units import UnitBasis, UnitSubgroup
from conftest import cubic, fundamental


def quartic_basis(K):
    return UnitBasis(K, (K.from_power([1, 2, 1, 0]), K.from_power([1, 0, 1, 0])), full_index=4)


def test_compute_au(K1, quartic):
    U = UnitSubgroup(K1, [K1.gen])
    au = ot.compute_au(K1, U)
    assert len(au) == 1 and au[0].is_identity
    B = quartic_basis(quartic)
    assert len(ot.compute_au(quartic, B.subgroup())) == 2


def test_filtration_examples():
    K1, K2 = cubic(1), cubic(2)
    r = ot.aut_filtration(K1, UnitSubgroup(K1, [K1.gen]))
    assert (r.gr0_order, r.gr1_order, len(r.gr2), r.chi_f) == (1, 1, 1, 1)
    u = fundamental(2).units[0]
    r = ot.aut_filtration(K2, UnitSubgroup(K2, [u]))
    assert r.gr0.divisors == (2,)
    assert (r.gr0_order, r.gr1_order, len(r.gr2), r.chi_f) == (2, 1, 1, 2)
    r = ot.aut_filtration(K2, UnitSubgroup(K2, [u ** 2]))
    assert (r.gr0_order, r.gr1_order, len(r.gr2), r.chi_f) == (8, 2, 1, 4)


def test_filtration_refusals(K1, quartic):
    with pytest.raises(NotAdmissible):
        ot.aut_filtration(K1, UnitSubgroup(K1, [-K1.gen]))
    a = quartic.from_power([3, 0, 2, 0])  # 3 + 2 sqrt 2 lies in Q(sqrt 2)
    with pytest.raises((NotSimpleType, NotAdmissible)):
        ot.aut_filtration(quartic, UnitSubgroup(quartic, [a, a ** 2]))


def test_quartic_filtration(quartic):
    B = quartic_basis(quartic)
    r = ot.aut_filtration(quartic, B.subgroup(), B)
    assert r.gr1_order == 1 and len(r.gr2) == 2
    assert r.chi_f == Fraction(r.gr0_order * 2, 1)


def _group(m=2, power=2):
    K = cubic(m)
    B = fundamental(m)
    U = UnitSubgroup(K, [B.units[0] ** power])
    return ot.AutGroup(K, U, B)


def test_compose_examples():
    G = _group()
    rng = random.Random(1)
    x = G.random(rng)
    assert G.identity() * x == x and x * G.identity() == x
    T = G.translations()
    assert len(T) == 8
    b1, b2 = T[3], T[5]
    s = G.element(b1) * G.element(b2)
    assert s == G.element([a + b for a, b in zip(b1, b2)])
    # conjugating a translation by a unit class scales it
    v = G.element(exps=(1,))
    beta = G.element(T[1])
    conj = v * beta * v.inverse()
    scaled = G.unit_value((1,)) * G.field.element(T[1])
    assert conj == G.element(scaled.coords)


def test_group_laws_random():
    G = _group()
    rng = random.Random(7)
    for _ in range(200):
        x, y, z = G.random(rng), G.random(rng), G.random(rng)
        assert (x * y) * z == x * (y * z)
        assert x * x.inverse() == G.identity() == x.inverse() * x


def test_dietz_examples():
    K = cubic(2)
    u = fundamental(2).units[0]
    U = UnitSubgroup(K, [u ** 2])
    ident = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    inv = ideals.inverse_fractional(units.j_ideal(U))
    delta = lambda b: b
    for c0 in inv.basis_elements():
        res = ot.verify_dietz_triple(K, U, ident, lambda b, c0=c0: c0 * (b - 1), delta)
        assert res.ok, res.witness
    assert ot.verify_dietz_triple(K, U, ident, lambda b: K.zero, delta).ok
    bad = ot.verify_dietz_triple(K, U, ident, lambda b: K.one, delta)
    assert not bad.ok and "condition (1)" in bad.witness


def test_dietz_triples_from_elements():
    G = _group()
    rng = random.Random(11)
    for _ in range(20):
        a, b, d = G.dietz_triple(G.random(rng))
        assert ot.verify_dietz_triple(G.field, G.U, a, b, d, words=10).ok


def test_dietz_cocycle_dict():
    K = cubic(2)
    u = fundamental(2).units[0]
    U = UnitSubgroup(K, [u])
    inv = ideals.inverse_fractional(units.j_ideal(U))
    c0 = inv.basis_elements()[-1]
    ident = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    assert ot.verify_dietz_triple(K, U, ident, {0: c0 * (u - 1)}, lambda b: b).ok


def test_h1_examples():
    K1, K2 = cubic(1), cubic(2)
    u = fundamental(2).units[0]
    h = ot.h1_structure(K2, UnitSubgroup(K2, [u]))
    assert h.torsion.divisors == (2,) and h.free_rank == 1
    h = ot.h1_structure(K1, UnitSubgroup(K1, [K1.gen]))
    assert h.torsion.is_trivial() and h.free_rank == 1
    h = ot.h1_structure(K2, UnitSubgroup(K2, [u ** 2]))
    assert h.torsion.order == 8 and h.torsion.rank <= 3


def test_h1_combined_bound_counterexample():
    """Torsion factors plus rank can exceed s + 2t; the torsion alone cannot."""
    K = cubic(1)
    h = ot.h1_structure(K, UnitSubgroup(K, [K.gen ** 8]))
    assert h.torsion.divisors == (3, 3, 3)
    assert not h.bound_holds
    assert h.torsion.rank <= h.generator_bound


def test_geometric_invariants(K1, quartic):
    g = ot.geometric_invariants(K1, UnitSubgroup(K1, [K1.gen]))
    assert (g.dimension, g.b1, g.b2, g.lck) == (2, 1, 0, True)
    lo, hi = intervals.bounds(g.volume_proxy)
    assert lo <= Fraction(212825, 10 ** 5) + Fraction(1, 10 ** 5) and hi >= Fraction(212825, 10 ** 5) - Fraction(1, 10 ** 5)
    B = quartic_basis(quartic)
    g = ot.geometric_invariants(quartic, B.subgroup())
    assert (g.dimension, g.b1, g.b2) == (3, 2, 1)

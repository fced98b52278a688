from fractions import Fraction

import pytest
import sympy
from sympy.polys.numberfields.basis import round_two

from otarith import intervals, numfield
from otarith.errors import NonMonic, Reducible
from conftest import cubic


@pytest.mark.parametrize("f,sig,disc", [
    ([-1, 1, 0, 1], (1, 1), -31),
    ([-1, 2, 0, 1], (1, 1), -59),
    ([-2, 0, 0, 0, 1], (2, 1), None),
])
def test_build_field(f, sig, disc):
    K = numfield.build_field(f)
    assert K.degree == len(f) - 1
    assert K.signature == sig
    x = sympy.Symbol("x")
    oracle = sympy.discriminant(sum(c * x ** i for i, c in enumerate(f)), x)
    assert K.poly_discriminant == oracle
    if disc is not None:
        assert K.discriminant == disc


def test_refusals():
    with pytest.raises(Reducible):
        numfield.build_field([-1, 0, 1])
    with pytest.raises(NonMonic):
        numfield.build_field([1, 0, 2])


def test_arithmetic(K1, K2):
    t = K1.gen
    assert t * t ** 2 == 1 - t
    assert t * K1.one == t
    u = K2.gen
    assert u ** 4 == u - 2 * u ** 2
    assert (u ** 4) * u ** -4 == K2.one


def test_norms(K1, K2):
    assert K1.gen.norm() == 1
    assert (1 - K2.gen).norm() == 2
    assert K2(2).norm() == 8


def test_embeddings():
    K = cubic(1)
    places = K.embeddings(128).places
    real = [p for p in places if p.is_real]
    cx = [p for p in places if not p.is_real]
    assert len(real) == 1 and len(cx) == 1
    assert abs(intervals.lower(real[0].box().re) - Fraction(6823278038, 10 ** 10)) < Fraction(1, 10 ** 9)
    mod = abs(cx[0].box())
    assert abs(intervals.lower(mod) - Fraction(12106, 10 ** 4)) < Fraction(1, 10 ** 3)
    # the complex representative has positive imaginary part
    assert intervals.is_positive(cx[0].box().im)

    K = numfield.build_field([-2, 0, 1])
    vals = sorted(intervals.lower(p.box().re) for p in K.embeddings(64).places)
    assert abs(vals[0] + Fraction(141421, 10 ** 5)) < Fraction(1, 10 ** 4)
    assert abs(vals[1] - Fraction(141421, 10 ** 5)) < Fraction(1, 10 ** 4)

    K = numfield.build_field([-2, 0, 0, 0, 1])
    reals = sorted(intervals.lower(p.box().re) for p in K.embeddings(64).places if p.is_real)
    assert [round(float(r), 5) for r in reals] == [-1.18921, 1.18921]


def test_total_positivity(K1):
    t = K1.gen
    assert numfield.is_totally_positive(t)
    assert not numfield.is_totally_positive(-t)
    assert numfield.is_totally_positive(1 - t)


def test_automorphisms(K1, quartic):
    auts = numfield.field_automorphisms(K1)
    assert len(auts) == 1 and auts[0].is_identity
    images = sorted(tuple(g.image.power_coords) for g in numfield.field_automorphisms(quartic))
    assert images == [(0, -1, 0, 0), (0, 1, 0, 0)]
    assert len(numfield.field_automorphisms(numfield.build_field([-2, 0, 1]))) == 2


def test_automorphisms_of_cyclic_cubic():
    # x^3 - 3x + 1 is Galois with group Z/3
    K = numfield.build_field([1, -3, 0, 1])
    auts = numfield.field_automorphisms(K)
    assert len(auts) == 3
    for g in auts:
        assert g.compose(g.inverse()).is_identity
        assert numfield._eval_poly_at(list(K.min_poly), g.image).is_zero()


def test_min_poly(K1, quartic):
    assert numfield.min_poly_of(K1.gen) == [-1, 1, 0, 1]
    a = quartic.from_power([3, 0, 2, 0])
    assert numfield.min_poly_of(a) == [1, -6, 1]
    assert numfield.min_poly_of(quartic(5)) == [-5, 1]


def test_dedekind():
    assert numfield.dedekind_maximality_check(cubic(1), 31)
    assert numfield.dedekind_maximality_check(cubic(2), 59)
    # Z[sqrt(-3)] has index 2 in the maximal order Z[(1+sqrt(-3))/2], so it is
    # not 2-maximal; see the decisions ledger.
    K = numfield.build_field([3, 0, 1])
    assert not numfield.dedekind_maximality_check(K, 2)
    assert numfield.dedekind_maximality_check(K, 3)


@pytest.mark.parametrize("m", range(1, 11))
def test_corpus_orders_are_maximal(m):
    K = cubic(m)
    _, disc = round_two(sympy.Poly([1, 0, m, -1], sympy.Symbol("x")))
    assert K.discriminant == disc
    for p, e in sympy.factorint(abs(K.discriminant)).items():
        assert numfield.dedekind_maximality_check(K, p)

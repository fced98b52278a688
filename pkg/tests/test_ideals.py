import itertools
import random

import pytest

from otarith import ideals, linalg
from otarith.errors import CapExceeded, IndexDivisor, ZeroIdeal
from otarith.ideals import FractionalIdeal, IntegerIdeal
from conftest import cubic


def gen_ideal(K, *gens):
    return ideals.ideal_from_generators(K, [K(g) if not hasattr(g, "field") else g for g in gens])


def brute_member(I, a, box=6):
    """Membership oracle: a = sum c_i b_i with small integer c_i, by search."""
    rows = [list(r) for r in I.basis]
    target = list(a.coords)
    for c in itertools.product(range(-box, box + 1), repeat=len(rows)):
        if linalg.vecmat(list(c), rows) == target:
            return True
    return False


def test_from_generators(K1, K2):
    assert gen_ideal(K1, K1.gen - 1).is_unit_ideal()
    assert gen_ideal(K2, K2.gen - 1).norm() == 2
    assert gen_ideal(K2, 2).norm() == 8
    with pytest.raises(ZeroIdeal):
        gen_ideal(K2, 0)


def test_norms(K2):
    t = K2.gen
    assert IntegerIdeal.unit(K2).norm() == 1
    assert gen_ideal(K2, t - 1).norm() == 2
    assert gen_ideal(K2, t ** 2 - 1).norm() == 8


def test_quotient_structure(K2):
    assert ideals.quotient_structure(IntegerIdeal.unit(K2)).is_trivial()
    assert ideals.quotient_structure(gen_ideal(K2, K2.gen - 1)).divisors == (2,)
    assert ideals.quotient_structure(gen_ideal(K2, 2)).divisors == (2, 2, 2)


def test_inverse(K2):
    O = IntegerIdeal.unit(K2)
    assert ideals.inverse_fractional(O) == FractionalIdeal(O)
    assert ideals.inverse_fractional(gen_ideal(K2, 2)) == FractionalIdeal(O, 2)
    P = gen_ideal(K2, K2.gen - 1)
    inv = ideals.inverse_fractional(P)
    assert inv.contains(1 / (K2.gen - 1))
    # (1/(theta - 1)) O has index 2 over O
    assert inv.contains_order() and inv.index_over_order() == 2
    # I (O:I) = O, checked on generators
    prod = ideals.ideal_from_generators(K2, [2 * b * p for b in inv.basis_elements() for p in (K2.gen - 1, K2(2))])
    assert prod == gen_ideal(K2, 2)


def test_sum_and_product(K2):
    t = K2.gen
    P = gen_ideal(K2, t - 1)
    assert P * IntegerIdeal.unit(K2) == P
    S = ideals.ideal_sum(P, gen_ideal(K2, t + 1))
    assert S == P
    assert ideals.ideal_product(gen_ideal(K2, 2), gen_ideal(K2, 3)) == gen_ideal(K2, 6)
    assert ideals.ideal_power(P, 3) == gen_ideal(K2, t ** 2 - 1)
    assert ideals.ideal_power(P, 2) == gen_ideal(K2, t + 1)


def test_containment_against_search_oracle(K2):
    rng = random.Random(5)
    t = K2.gen
    I = gen_ideal(K2, t ** 2 - 1)
    for _ in range(40):
        a = K2.element([rng.randint(-4, 4) for _ in range(3)])
        assert I.contains(a) == brute_member(I, a, box=8)


def test_residue_unit_counts(K2):
    t = K2.gen
    assert ideals.residue_unit_count(gen_ideal(K2, t - 1)) == 1
    assert ideals.residue_unit_count(gen_ideal(K2, 2)) == 3
    assert ideals.residue_unit_count(IntegerIdeal.unit(K2)) == 1


def test_residue_unit_group(K2):
    t = K2.gen
    P3 = ideals.ideal_power(gen_ideal(K2, t - 1), 3)
    G = ideals.residue_unit_group(P3)
    assert G.group.order == 4
    assert ideals.residue_unit_group(IntegerIdeal.unit(K2)).group.is_trivial()
    G2 = ideals.residue_unit_group(gen_ideal(K2, 2))
    assert G2.group.divisors == (3,)
    # dlog is a homomorphism
    a, b = t, t + 2
    da, db, dab = G.dlog(a), G.dlog(b), G.dlog(a * b)
    assert all((x + y - z) % d == 0 for x, y, z, d in zip(da, db, dab, G.group.divisors))


def test_cap():
    K = cubic(2)
    with pytest.raises(CapExceeded):
        ideals.residue_unit_count_enum(gen_ideal(K, 100), cap=1000)


def test_prime_splitting():
    K2, K1 = cubic(2), cubic(1)
    assert sorted((f, e) for _, f, e in ideals.prime_splitting(K2, 2)) == [(1, 1), (2, 1)]
    sp = ideals.prime_splitting(K1, 2)
    assert [(f, e) for _, f, e in sp] == [(3, 1)]
    assert any(e > 1 for _, _, e in ideals.prime_splitting(K1, 31))
    # product of P^e recovers pO
    P = IntegerIdeal.unit(K2)
    for Q, f, e in ideals.prime_splitting(K2, 2):
        P = P * ideals.ideal_power(Q, e)
    assert P == gen_ideal(K2, 2)


def test_index_divisor_refused():
    K9 = cubic(9)
    # 3 divides [O : Z[theta]] for x^3 + 9x - 1
    with pytest.raises(IndexDivisor):
        ideals.prime_splitting(K9, 3)


@pytest.mark.parametrize("m", [2, 5, 7])
def test_enumeration_and_phi_agree(m):
    K = cubic(m)
    t = K.gen
    for g in [t - 1, t + 1, t ** 2 - 1, t + 2, 3 * t - 1]:
        I = gen_ideal(K, g)
        if I.norm() <= 5000:
            assert ideals.residue_unit_count_enum(I) == ideals.residue_unit_count_phi(I)

import pytest

from otarith import ideals, ray, units
from otarith.errors import MissingUnitBasis, NotExceptional
from otarith.ray import Modulus
from otarith.units import UnitBasis, UnitSubgroup
from conftest import cubic, fundamental


def setup2():
    K = cubic(2)
    B = fundamental(2)
    return K, B, B.units[0]


def test_ray_unit_group_examples():
    K, B, u = setup2()
    O = ideals.IntegerIdeal.unit(K)
    R = ray.ray_unit_group(Modulus.all_real(K, O), B)
    assert R.index == 1
    P = ideals.principal(K.gen - 1)
    assert ray.ray_unit_group(Modulus.all_real(K, P), B).index == 1
    R = ray.ray_unit_group(Modulus.all_real(K, ideals.ideal_power(P, 3)), B)
    assert R.index == 2
    assert units.subgroup_index(R.subgroup, UnitSubgroup(K, [u ** 2])) == 1
    with pytest.raises(MissingUnitBasis):
        ray.ray_unit_group(Modulus.all_real(K, P), None)


def test_ray_kernel_by_brute_force():
    """u^k lies in U_{m,1} exactly when u^k - 1 is in m_0."""
    K, B, u = setup2()
    for m0 in [ideals.ideal_power(ideals.principal(K.gen - 1), 3), ideals.principal(K(2)), ideals.principal(K(3)), ideals.principal(K.gen + 3)]:
        R = ray.ray_unit_group(Modulus.all_real(K, m0), B)
        k = next(k for k in range(1, 500) if m0.contains(u ** k - 1))
        assert R.index == k


def test_build_exceptional_modulus():
    K, B, u = setup2()
    assert ray.build_exceptional_modulus(UnitSubgroup(K, [u])).finite == ideals.principal(u - 1)
    K1 = cubic(1)
    assert ray.build_exceptional_modulus(UnitSubgroup(K1, [K1.gen])).finite.is_unit_ideal()
    m = ray.build_exceptional_modulus(UnitSubgroup(K, [u ** 2]))
    assert m.finite == ideals.ideal_power(ideals.principal(K.gen - 1), 3)


def test_is_exceptional():
    K, B, u = setup2()
    m = ray.build_exceptional_modulus(UnitSubgroup(K, [u ** 2]))
    ex = ray.is_exceptional(m, B)
    assert ex.exceptional and ex.contained
    m0 = Modulus(K, m.finite, (0,))
    assert not ray.is_exceptional(m0, B).exceptional
    # containment J(U_{m,1}) <= m_0 holds for arbitrary moduli
    for g in (K(2), K(3), K.gen + 3, K(5)):
        ex = ray.is_exceptional(Modulus.all_real(K, ideals.principal(g)), B)
        assert ex.contained


def test_ray_ratio_examples():
    K, B, u = setup2()
    P = ideals.principal(K.gen - 1)
    assert ray.ray_ratio(Modulus.all_real(K, P), B).ratio == 1
    assert ray.ray_ratio(Modulus.all_real(K, ideals.IntegerIdeal.unit(K)), B).ratio == 1
    rr = ray.ray_ratio(Modulus.all_real(K, ideals.ideal_power(P, 3)), B)
    assert (rr.residue_unit_order, rr.unit_quotient_order, rr.ratio) == (4, 2, 2)
    assert not rr.sign_index_assumed


def test_inequality_examples():
    K, B, u = setup2()
    P = ideals.principal(K.gen - 1)
    r = ray.verify_inequality(Modulus.all_real(K, P), B)
    assert (r.lhs, r.rhs) == (1, 2) and r.holds
    r = ray.verify_inequality(Modulus.all_real(K, ideals.ideal_power(P, 3)), B)
    assert (r.lhs, r.rhs) == (2, 4) and r.holds and r.rhs_from_filtration == 4
    K1 = cubic(1)
    r = ray.verify_inequality(Modulus.all_real(K1, ideals.IntegerIdeal.unit(K1)), fundamental(1))
    assert (r.lhs, r.rhs) == (1, 1) and r.equality


def test_inequality_refuses_non_exceptional():
    K, B, u = setup2()
    with pytest.raises(NotExceptional):
        ray.verify_inequality(Modulus.all_real(K, ideals.principal(K(3))), B)


def test_quartic_inequality(quartic):
    B = UnitBasis(quartic, (quartic.from_power([1, 2, 1, 0]), quartic.from_power([1, 0, 1, 0])), full_index=4)
    m = ray.build_exceptional_modulus(B.subgroup())
    r = ray.verify_inequality(m, B)
    assert r.holds and r.lhs == 2 and r.rhs == 4

import pytest

from otarith import ideals, intervals, numfield, units
from otarith.errors import InfiniteIndex, NotInSpan
from otarith.units import UnitBasis, UnitSubgroup
from conftest import cubic, fundamental


def test_is_unit(K1, K2):
    assert units.is_unit(K1.gen)
    assert not units.is_unit(K2.gen - 1)
    assert units.is_unit(K1.one)


def test_j_ideal(K1, K2):
    t = K2.gen
    assert units.j_ideal(UnitSubgroup(K1, [K1.gen])).is_unit_ideal()
    J = units.j_ideal(UnitSubgroup(K2, [t]))
    assert J.norm() == 2 and J == ideals.principal(t - 1)
    J2 = units.j_ideal(UnitSubgroup(K2, [t ** 2]))
    assert J2.norm() == 8 and J2 == ideals.principal(t ** 2 - 1)


def test_totally_positive_subgroup(K1, K2):
    t = K2.gen
    assert units.totally_positive_subgroup([t]).units == (t,)
    v = K1.gen
    assert units.totally_positive_subgroup([K1(-1), v]).units == (v,)
    w = -v
    out = units.totally_positive_subgroup([w], include_minus_one=False).units
    assert out == (w ** 2,)


def test_exponent_vector(quartic):
    v = fundamental(1).units[0]
    B = UnitBasis(v.field, (v,))
    assert units.exponent_vector(v, B) == (1,)
    assert units.exponent_vector(v ** 5, B) == (5,)
    assert units.exponent_vector(v ** -3, B) == (-3,)
    a = quartic.from_power([1, 2, 1, 0])
    b = quartic.from_power([1, 0, 1, 0])
    QB = UnitBasis(quartic, (a, b))
    assert units.exponent_vector(a ** 2 * b ** -1, QB) == (2, -1)
    with pytest.raises(NotInSpan):
        units.exponent_vector(v.field(-1), B)


def test_subgroup_index(quartic):
    u = fundamental(2).units[0]
    V = UnitSubgroup(u.field, [u])
    for n in (1, 2, 5):
        assert units.subgroup_index(V.power(n), V) == n
    a = quartic.from_power([1, 2, 1, 0])
    b = quartic.from_power([1, 0, 1, 0])
    W = UnitSubgroup(quartic, [a, b])
    assert units.subgroup_index(UnitSubgroup(quartic, [a ** 2, b ** 3]), W) == 6
    with pytest.raises(InfiniteIndex):
        units.subgroup_index(UnitSubgroup(quartic, [a]), W)


def test_admissibility(K1):
    t = K1.gen
    assert units.is_admissible(UnitSubgroup(K1, [t])).ok
    assert not units.is_admissible(UnitSubgroup(K1, [])).ok
    assert not units.is_admissible(UnitSubgroup(K1, [-t])).ok


def test_simple_type(K1, quartic):
    assert units.is_simple_type(UnitSubgroup(K1, [K1.gen]))
    assert not units.is_simple_type(UnitSubgroup(quartic, [quartic.from_power([3, 0, 2, 0])]))
    assert not units.is_simple_type(UnitSubgroup(K1, [K1.one]))
    # two units each generating Q(sqrt 2)-type subfields can still span K
    a = quartic.from_power([1, 2, 1, 0])
    b = quartic.from_power([1, 0, 1, 0])
    assert units.is_simple_type(UnitSubgroup(quartic, [a, b]))


def test_search_family_member_m1():
    B = fundamental(1)
    K = cubic(1)
    v = B.units[0]
    assert B.provenance == "searched+certified"
    assert v == 1 / K.gen
    r = intervals.lower(numfield.abs_values(v)[0])
    assert abs(float(r) - 1.4655712) < 1e-6


@pytest.mark.parametrize("m", [2, 5])
def test_search_certified(m):
    B = fundamental(m)
    v = B.units[0]
    assert units.is_unit(v) and numfield.is_totally_positive(v)
    assert intervals.lower(numfield.abs_values(v)[0]) > 1
    # theta^{-1} = theta^2 + m is a unit above 1 for this family; the
    # fundamental unit must generate it
    t = v.field.gen
    e = units.exponent_vector(1 / t, B)
    assert abs(e[0]) >= 1


def test_search_cross_check_by_brute_force():
    """No unit with small coordinates lies strictly between 1 and the found unit."""
    import itertools

    for m in (1, 2, 3):
        K = cubic(m)
        v = fundamental(m).units[0]
        top = intervals.lower(numfield.abs_values(v)[0])
        for c in itertools.product(range(-6, 7), repeat=3):
            x = K.element(c)
            if x.is_zero() or abs(x.norm()) != 1:
                continue
            val = numfield.EmbeddingSet.real_values(K.embeddings(64), x)[0]
            lo, hi = intervals.bounds(val)
            if lo > 1 and x != v:
                assert lo >= top


def test_multiplicative_relation(quartic):
    a = quartic.from_power([3, 0, 2, 0])
    rel = units.multiplicative_relation([a, a ** 2])
    assert rel is not None and a ** rel[0] * (a ** 2) ** rel[1] == quartic.one
    cert = units.is_admissible(UnitSubgroup(quartic, [a, a ** 2]))
    assert not cert.ok and "dependent" in cert.clause
    b = quartic.from_power([1, 2, 1, 0])
    assert units.multiplicative_relation([a, b]) is None

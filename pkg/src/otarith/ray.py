"""Moduli, ray unit groups U_{m,1}, exceptional moduli and the ray-class ratio h_m/h.

Class numbers are never computed; only the ratio h_m/h, read off from the exact
sequence 1 -> O^{x,+}/U_{m,1} -> (O/m_0)^x -> C_m -> C -> 0.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import ideals, linalg, units
from .errors import MissingUnitBasis, NonIntegralRatio, NotAdmissible, NotExceptional


@dataclass(frozen=True)
class Modulus:
    field: object
    finite: object  # IntegerIdeal m_0
    real: tuple  # 0/1 per real place

    def __post_init__(self):
        if len(self.real) != self.field.s or any(m not in (0, 1) for m in self.real):
            raise ValueError("real multiplicities must be 0 or 1, one per real place")

    @classmethod
    def all_real(cls, field, finite):
        return cls(field, finite, (1,) * field.s)

    @property
    def all_real_marked(self):
        return all(self.real)


@dataclass
class RayUnitGroup:
    subgroup: object  # UnitSubgroup
    exponents: list  # rows over the basis
    index: int  # [O^{x,+} : U_{m,1}]
    residue_group: object


def ray_unit_group(modulus, basis, cap=None):
    """U_{m,1} inside O^{x,+}: kernel of O^{x,+} -> (O/m_0)^x."""
    if basis is None:
        raise MissingUnitBasis("a basis of O^{x,+} is required")
    G = ideals.residue_unit_group(modulus.finite, cap)
    r = basis.rank
    divisors = list(G.group.divisors)
    if divisors:
        A = [list(G.dlog(u)) for u in basis.units]
        L = linalg.kernel_mod(A, divisors)
    else:
        L = linalg.identity(r)
    gens = []
    for e in L:
        w = basis.field.one
        for u, c in zip(basis.units, e):
            if c:
                w = w * u ** c
        gens.append(w)
    index = abs(linalg.det(L))
    return RayUnitGroup(units.UnitSubgroup(basis.field, gens), [list(e) for e in L], index, G)


def build_exceptional_modulus(U):
    cert = units.is_admissible(U)
    if not cert.ok:
        raise NotAdmissible(cert.clause)
    return Modulus.all_real(U.field, units.j_ideal(U))


@dataclass
class ExceptionalResult:
    exceptional: bool
    j_basis: list
    m0_basis: list
    contained: bool  # J(U_{m,1}) inside m_0
    reason: str = ""


def is_exceptional(modulus, basis, cap=None):
    if not modulus.all_real_marked:
        return ExceptionalResult(False, None, [list(r) for r in modulus.finite.basis], True,
                                 "a real place has multiplicity 0")
    R = ray_unit_group(modulus, basis, cap)
    J = units.j_ideal(R.subgroup)
    m0 = modulus.finite
    contained = m0.contains_ideal(J)
    return ExceptionalResult(J == m0, [list(r) for r in J.basis], [list(r) for r in m0.basis], contained,
                             "" if J == m0 else "J(U_{m,1}) differs from m_0")


@dataclass
class RayRatio:
    ratio: int
    residue_unit_order: int
    unit_quotient_order: int
    sign_index: int  # [O^x : O^{x,+}] used
    sign_index_assumed: bool


def ray_ratio(modulus, basis, cap=None):
    """h_m/h = |(O/m_0)^x| * 2^s / ([O^x : O^{x,+}] [O^{x,+} : U_{m,1}]).

    When the sign map on units is onto (index 2^s) this is the quotient
    |(O/m_0)^x| / [O^{x,+} : U_{m,1}].
    """
    if not modulus.all_real_marked:
        raise ValueError("ratio formula needs every real place marked")
    K = modulus.field
    R = ray_unit_group(modulus, basis, cap)
    phi = ideals.residue_unit_count(modulus.finite, cap)
    full = basis.full_index
    assumed = full is None
    if assumed:
        full = 2 ** K.s
    q = Fraction(phi * 2 ** K.s, full * R.index)
    if q.denominator != 1 or q <= 0:
        raise NonIntegralRatio(f"h_m/h = {q} is not a positive integer")
    return RayRatio(int(q), phi, R.index, full, assumed)


@dataclass
class RayReport:
    modulus: Modulus
    ray_units: RayUnitGroup
    unit_quotient_order: int
    full_unit_quotient: int
    residue_unit_order: int
    ratio: int
    exceptional: bool
    lhs: int
    rhs: Fraction
    rhs_from_filtration: Fraction
    quotient_order: int  # |O/J(U_{m,1})|
    holds: bool
    equality: bool
    admissible: bool


def verify_inequality(modulus, basis, cap=None, autos=None):
    """h_m/h <= chi^F / |A_U| for X(K, U_{m,1}) and an exceptional modulus."""
    from . import ot

    ex = is_exceptional(modulus, basis, cap)
    if not ex.exceptional:
        raise NotExceptional(ex.reason)
    R = ray_unit_group(modulus, basis, cap)
    U = R.subgroup
    cert = units.is_admissible(U)
    if not cert.ok:
        raise NotAdmissible(f"U_(m,1) is not admissible: {cert.clause}")
    rr = ray_ratio(modulus, basis, cap)
    J = units.j_ideal(U)
    N = J.norm()
    rhs = Fraction(N, R.index)
    rhs_f = None
    if units.is_simple_type(U):
        rep = ot.aut_filtration(modulus.field, U, basis, autos)
        if rep.chi_f is not None:
            rhs_f = rep.chi_f / len(rep.gr2)
            if rhs_f != rhs:
                raise ArithmeticError(f"chi^F/|A_U| = {rhs_f} but |O/J|/index = {rhs}")
    return RayReport(modulus, R, R.index, rr.sign_index * R.index,
                     rr.residue_unit_order, rr.ratio, True, rr.ratio, rhs, rhs_f, N,
                     rr.ratio <= rhs, rr.ratio == rhs, True)

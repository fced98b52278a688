"""Integral and fractional ideals of an order, stored as HNF lattices.

An ideal is the row lattice of an n x n Hermite normal form matrix whose rows
are coordinate vectors over the field's integral basis.  Residue rings O/I are
enumerated on the HNF fundamental domain ``0 <= x_j < H[j][j]``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from . import linalg, poly
from .errors import CapExceeded, IndexDivisor, MixedFields, NonIntegral, NonInvertible, ZeroIdeal
from .numfield import FieldElement

DEFAULT_ENUM_CAP = 10**6


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Elementary-divisor record d_1 | d_2 | ... | d_k with every d_j >= 2."""

    divisors: tuple = ()

    @classmethod
    def from_divisors(cls, divisors):
        ds = tuple(int(d) for d in divisors if d != 1)
        if any(d == 0 for d in ds):
            raise ValueError("group is infinite")
        for a, b in zip(ds, ds[1:]):
            if b % a:
                raise ValueError(f"divisors {ds} violate the divisibility chain")
        return cls(ds)

    @property
    def order(self):
        return prod(self.divisors)

    @property
    def rank(self):
        return len(self.divisors)

    def is_trivial(self):
        return not self.divisors

    def __str__(self):
        if not self.divisors:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.divisors)


class IntegerIdeal:
    """Nonzero ideal of the order of ``field``; ``basis`` is its HNF."""

    __slots__ = ("field", "basis", "_inverse")

    def __init__(self, field, basis):
        self.field = field
        self.basis = tuple(tuple(row) for row in basis)
        self._inverse = None

    @classmethod
    def from_lattice(cls, field, rows):
        H = linalg.hnf_basis([list(r) for r in rows])
        if len(H) != field.degree:
            raise ZeroIdeal("generators span a lattice of lower rank")
        return cls(field, H)

    @classmethod
    def unit(cls, field):
        return cls(field, linalg.identity(field.degree))

    def norm(self):
        return prod(self.basis[i][i] for i in range(len(self.basis)))

    def is_unit_ideal(self):
        return self.norm() == 1

    def contains(self, a):
        coords = a.coords if isinstance(a, FieldElement) else tuple(a)
        if not all(isinstance(c, int) or Fraction(c).denominator == 1 for c in coords):
            return False
        v = linalg.hnf_reduce([int(c) for c in coords], self.basis)
        return not any(v)

    def __contains__(self, a):
        return self.contains(a)

    def contains_ideal(self, other):
        return all(self.contains(row) for row in other.basis)

    def __le__(self, other):
        return other.contains_ideal(self)

    def __eq__(self, other):
        return isinstance(other, IntegerIdeal) and self.field == other.field and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __repr__(self):
        return f"IntegerIdeal(norm={self.norm()}, basis={[list(r) for r in self.basis]})"

    def elements(self):
        return [self.field.element(row) for row in self.basis]

    def reduce(self, a):
        """Canonical residue of an integral element (as a coordinate tuple)."""
        coords = a.coords if isinstance(a, FieldElement) else a
        return tuple(linalg.hnf_reduce(list(coords), self.basis))

    def radices(self):
        return [self.basis[i][i] for i in range(len(self.basis))]


def _check_same(I, J):
    if I.field != J.field:
        raise MixedFields("ideals belong to different fields")


def ideal_from_generators(field, gens):
    """Ideal generated by integral elements (HNF of all g * b_i)."""
    rows = []
    extra = 0
    for g in gens:
        g = field(g) if not isinstance(g, FieldElement) else g
        if not g.is_integral:
            raise NonIntegral(f"generator {g} is not integral")
        if g.is_zero():
            continue
        rows.extend(g.mult_matrix())
        # N(g) lies in (g); adding it keeps HNF entries small
        extra = gcd(extra, abs(int(g.norm())))
    if not rows:
        raise ZeroIdeal("all generators are zero")
    rows.extend(linalg.diagonal([extra] * field.degree))
    return IntegerIdeal.from_lattice(field, rows)


def principal(a):
    return ideal_from_generators(a.field, [a])


def ideal_norm(I):
    return I.norm()


def quotient_structure(I):
    """Elementary divisors of O/I."""
    D = linalg.snf([list(r) for r in I.basis]).divisors
    G = FiniteAbelianGroup.from_divisors(D)
    assert G.order == I.norm()
    return G


def ideal_sum(I, J):
    _check_same(I, J)
    return IntegerIdeal.from_lattice(I.field, list(I.basis) + list(J.basis))


def ideal_product(I, J):
    _check_same(I, J)
    K = I.field
    rows = []
    Jel = J.elements()
    for r in I.basis:
        a = K.element(r)
        for b in Jel:
            rows.append(list((a * b).coords))
    rows.extend(linalg.diagonal([I.norm() * J.norm()] * K.degree))
    return IntegerIdeal.from_lattice(K, rows)


def ideal_power(I, e):
    out = IntegerIdeal.unit(I.field)
    for _ in range(e):
        out = ideal_product(out, I)
    return out


def coprime(I, J):
    return ideal_sum(I, J).is_unit_ideal()


# -- fractional ideals ---------------------------------------------------------

class FractionalIdeal:
    """(1/denominator) * numerator, with the denominator minimal."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=1):
        g = denominator
        for row in numerator.basis:
            for x in row:
                g = gcd(g, x)
        if g > 1:
            numerator = IntegerIdeal(numerator.field,
                                     linalg.hnf_basis([[x // g for x in row] for row in numerator.basis]))
            denominator //= g
        self.numerator = numerator
        self.denominator = denominator

    @property
    def field(self):
        return self.numerator.field

    def contains(self, a):
        scaled = [Fraction(c) * self.denominator for c in a.coords]
        if any(c.denominator != 1 for c in scaled):
            return False
        return self.numerator.contains([int(c) for c in scaled])

    def __contains__(self, a):
        return self.contains(a)

    def basis_elements(self):
        K = self.field
        return [K.element([Fraction(x, self.denominator) for x in row]) for row in self.numerator.basis]

    def contains_order(self):
        return self.numerator.contains_ideal(
            IntegerIdeal(self.field, linalg.diagonal([self.denominator] * self.field.degree)))

    def index_over_order(self):
        """[this : O] when this ideal contains O."""
        n = self.field.degree
        return Fraction(self.denominator ** n, self.numerator.norm())

    def __eq__(self, other):
        return (isinstance(other, FractionalIdeal) and self.numerator == other.numerator
                and self.denominator == other.denominator)

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __repr__(self):
        return f"FractionalIdeal(1/{self.denominator} * {[list(r) for r in self.numerator.basis]})"


def inverse_fractional(I):
    """(O:I) = {beta : beta * I in O}, checked by I * (O:I) == O."""
    if I._inverse is not None:
        return I._inverse
    K = I.field
    n = K.degree
    N = I.norm()
    if N == 1:
        inv = FractionalIdeal(IntegerIdeal.unit(K), 1)
        I._inverse = inv
        return inv
    # beta = x / N with x in O; need coords(x * h) = 0 mod N for every basis row h
    cols = [[] for _ in range(n)]
    for h in I.elements():
        M = h.mult_matrix()
        for i in range(n):
            cols[i].extend(M[i])
    L = linalg.kernel_mod(cols, [N] * (n * n))
    inv = FractionalIdeal(IntegerIdeal(K, L), N)
    prod_ = ideal_product(I, inv.numerator)
    expected = IntegerIdeal(K, linalg.diagonal([inv.denominator] * n))
    if prod_ != expected:
        raise NonInvertible("I * (O:I) != O; the order is not maximal at a prime dividing the norm")
    I._inverse = inv
    return inv


def is_invertible(I):
    try:
        inverse_fractional(I)
    except NonInvertible:
        return False
    return True


# -- residue rings ---------------------------------------------------------------

def residue_index(coords, radices):
    idx = 0
    for c, r in zip(coords, radices):
        idx = idx * r + c
    return idx


def residue_from_index(idx, radices):
    out = []
    for r in reversed(radices):
        idx, c = divmod(idx, r)
        out.append(c)
    return tuple(reversed(out))


def iter_residues(I):
    """Canonical residues of O/I in mixed-radix index order."""
    radices = I.radices()
    total = prod(radices)
    for idx in range(total):
        yield residue_from_index(idx, radices)


def is_unit_mod(x, I):
    """True iff (x) + I = O (x a coordinate tuple or integral element)."""
    K = I.field
    a = x if isinstance(x, FieldElement) else K.element(x)
    if a.is_zero():
        return I.is_unit_ideal()
    rows = a.mult_matrix() + [list(r) for r in I.basis]
    H, _ = linalg.hnf(rows)
    return all(H[i][i] == 1 for i in range(K.degree))


def _check_cap(I, cap):
    N = I.norm()
    cap = DEFAULT_ENUM_CAP if cap is None else cap
    if N > cap:
        raise CapExceeded(f"|O/I| = {N} exceeds the enumeration cap {cap}")


def residue_unit_count_enum(I, cap=None):
    _check_cap(I, cap)
    if I.is_unit_ideal():
        return 1
    return sum(1 for x in iter_residues(I) if is_unit_mod(x, I))


def prime_splitting(field, p):
    """Primes over p as (ideal, residue degree, ramification index), via Dedekind-Kummer."""
    if field.power_index % p == 0:
        raise IndexDivisor(f"{p} divides the index of Z[theta] in the order")
    out = []
    for g, e in poly.factor_mod_p(list(field.min_poly), p):
        P = ideal_from_generators(field, [field(p), field.from_power(g)])
        f = poly.degree(g)
        assert P.norm() == p ** f
        out.append((P, f, e))
    assert sum(e * f for _, f, e in out) == field.degree
    return out


def prime_factors(n):
    import sympy

    return sorted(sympy.factorint(n))


def prime_ideal_factorization(I):
    """Prime ideals P with I contained in P, with exponents (via repeated division)."""
    K = I.field
    out = []
    for p in prime_factors(I.norm()):
        for P, f, e in prime_splitting(K, p):
            if not P.contains_ideal(I):
                continue
            k = 0
            Pk = IntegerIdeal.unit(K)
            while True:
                nxt = ideal_product(Pk, P)
                if not nxt.contains_ideal(I):
                    break
                Pk = nxt
                k += 1
            out.append((P, k))
    return out


def residue_unit_count_phi(I):
    """N(I) * prod over P | I of (1 - 1/N(P))."""
    K = I.field
    N = I.norm()
    if N == 1:
        return 1
    count = Fraction(N)
    for p in prime_factors(N):
        for P, f, e in prime_splitting(K, p):
            if P.contains_ideal(I):
                count *= 1 - Fraction(1, P.norm())
    assert count.denominator == 1
    return int(count)


def residue_unit_count(I, cap=None):
    """|(O/I)^x|, cross-checking enumeration against the Euler-phi path when both run."""
    cap = DEFAULT_ENUM_CAP if cap is None else cap
    enum = phi = None
    if I.norm() <= cap:
        enum = residue_unit_count_enum(I, cap)
    try:
        phi = residue_unit_count_phi(I)
    except IndexDivisor:
        if enum is None:
            raise CapExceeded(f"|O/I| = {I.norm()} exceeds the cap and the splitting path "
                              "does not apply") from None
    if enum is not None and phi is not None and enum != phi:
        raise ArithmeticError(f"residue unit counts disagree: enumeration {enum}, phi {phi}")
    return enum if enum is not None else phi


class ResidueUnitGroup:
    """(O/I)^x with elementary divisors and a dense discrete-log table."""

    def __init__(self, ideal, group, table, generators):
        self.ideal = ideal
        self.group = group
        self._table = table
        self.generators = generators

    @property
    def order(self):
        return self.group.order

    def dlog(self, a):
        """Exponent vector of an integral element coprime to the ideal."""
        I = self.ideal
        if I.is_unit_ideal():
            return ()
        idx = residue_index(I.reduce(a), I.radices())
        v = self._table[idx]
        if v is None:
            raise ValueError("element is not a unit modulo the ideal")
        return v


def residue_unit_group(I, cap=None):
    """Structure of (O/I)^x by greedy generation; see ``ResidueUnitGroup``."""
    _check_cap(I, cap)
    K = I.field
    if I.is_unit_ideal():
        return ResidueUnitGroup(I, FiniteAbelianGroup(), [()], [])
    radices = I.radices()
    total = prod(radices)

    def mul(x, y):
        return I.reduce((K.element(x) * K.element(y)).coords)

    one = I.reduce(K.one.coords)
    units = [x for x in iter_residues(I) if is_unit_mod(x, I)]
    exps = [None] * total
    exps[residue_index(one, radices)] = ()
    members = [one]
    gens = []
    relations = []
    for x in units:
        if exps[residue_index(x, radices)] is not None:
            continue
        k = 1
        y = x
        while exps[residue_index(y, radices)] is None:
            y = mul(y, x)
            k += 1
        r = len(gens)
        prev = exps[residue_index(y, radices)]
        relations = [row + [0] for row in relations]
        relations.append([-c for c in prev] + [0] * (r - len(prev)) + [k])
        gens.append(x)
        new = []
        power = one
        for i in range(1, k):
            power = mul(power, x)
            for h in members:
                z = mul(h, power)
                e = exps[residue_index(h, radices)]
                exps[residue_index(z, radices)] = tuple(e) + (0,) * (r - len(e)) + (i,)
                new.append(z)
        for h in members:
            e = exps[residue_index(h, radices)]
            exps[residue_index(h, radices)] = tuple(e) + (0,) * (r + 1 - len(e))
        members.extend(new)
    assert len(members) == len(units)
    r = len(gens)
    S = linalg.snf(relations)
    keep = [i for i, d in enumerate(S.divisors) if d != 1]
    divisors = [S.divisors[i] for i in keep]
    table = [None] * total
    for idx, e in enumerate(exps):
        if e is None:
            continue
        e = tuple(e) + (0,) * (r - len(e))
        img = linalg.vecmat(e, S.right)
        table[idx] = tuple(img[i] % S.divisors[i] for i in keep)
    G = FiniteAbelianGroup.from_divisors(divisors)
    assert G.order == len(units)
    return ResidueUnitGroup(I, G, table, [K.element(g) for g in gens])


# -- maximality helpers ------------------------------------------------------------

def p_radical(field, p):
    """{x in O : x^(p^j) in pO} for p^j >= n, as an integer ideal."""
    n = field.degree
    q = p
    while q < n:
        q *= p
    rows = []
    for b in field.basis_elements():
        rows.append([c % p for c in (b ** q).coords])
    L = linalg.kernel_mod(rows, [p] * n)
    return IntegerIdeal(field, L)

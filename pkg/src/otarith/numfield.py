"""Number fields K = Q[x]/(f) with exact element arithmetic and certified embeddings.

Coefficient lists are ascending (constant term first) everywhere.  Elements
are stored by their coordinates over the field's integral basis; the default
basis is the power basis 1, theta, ..., theta^(n-1).
"""

from fractions import Fraction
from functools import cached_property
from itertools import permutations, product

import mpmath

from . import intervals, linalg, poly, roots
from .errors import MixedFields, NonMonic, Reducible, ZeroElement


def _clean(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def _clean_vec(v):
    return tuple(_clean(x) for x in v)


class NumberField:
    """A number field together with a chosen order (given by ``integral_basis``)."""

    def __init__(self, min_poly, integral_basis=None):
        f = poly.trim([int(c) for c in min_poly])
        self.min_poly = tuple(f)
        self.degree = n = len(f) - 1
        if integral_basis is None:
            B = linalg.identity(n)
        else:
            B = [[Fraction(x) for x in row] for row in integral_basis]
            if len(B) != n or any(len(row) != n for row in B):
                raise ValueError("integral basis must be an n x n matrix")
        self.basis = tuple(_clean_vec(row) for row in B)
        self.is_power_basis = integral_basis is None or all(
            B[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))
        if linalg.det(B) == 0:
            raise ValueError("integral basis is singular")
        self.basis_inv = tuple(_clean_vec(row) for row in linalg.inverse(B))
        self._table = self._mult_table()
        self._embeddings = {}

    # -- construction helpers --------------------------------------------------

    def _mult_table(self):
        n = self.degree
        f = list(self.min_poly)
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                prod = poly.rem(poly.mul(list(self.basis[i]), list(self.basis[j])), f)
                row.append(self._power_to_coords(prod))
            table.append(row)
        return table

    def _power_to_coords(self, p):
        p = list(p) + [0] * (self.degree - len(p))
        return _clean_vec(linalg.vecmat([Fraction(c) for c in p], self.basis_inv))

    def __repr__(self):
        return f"NumberField({list(self.min_poly)})"

    def __eq__(self, other):
        return (isinstance(other, NumberField) and self.min_poly == other.min_poly
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.min_poly, self.basis))

    # -- invariants -----------------------------------------------------------

    @cached_property
    def signature(self):
        s = len(roots.isolate_real_roots(list(self.min_poly), 8))
        return s, (self.degree - s) // 2

    @property
    def s(self):
        return self.signature[0]

    @property
    def t(self):
        return self.signature[1]

    @cached_property
    def poly_discriminant(self):
        return poly.discriminant(list(self.min_poly))

    @cached_property
    def discriminant(self):
        """Discriminant of the order spanned by the integral basis."""
        d = Fraction(self.poly_discriminant) * linalg.det(self.basis) ** 2
        return _clean(d)

    @cached_property
    def is_order(self):
        """True when the basis spans a ring containing 1 and theta."""
        if not all(isinstance(x, int) for row in self._table for c in row for x in c):
            return False
        return all(self.gen_power(k).is_integral for k in range(self.degree))

    @cached_property
    def power_index(self):
        """Index [order : Z[theta]] (an integer when the order contains Z[theta])."""
        return _clean(1 / abs(Fraction(linalg.det(self.basis))))

    # -- elements -------------------------------------------------------------

    def element(self, coords):
        coords = tuple(coords)
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coords)}")
        return FieldElement(self, _clean_vec(Fraction(c) if not isinstance(c, int) else c
                                             for c in coords))

    def from_power(self, coeffs):
        """Element sum c_j theta^j (coefficients reduced modulo the minimal polynomial)."""
        p = poly.rem([Fraction(c) for c in coeffs], list(self.min_poly)) if len(coeffs) > self.degree \
            else list(coeffs)
        return FieldElement(self, self._power_to_coords(p))

    def __call__(self, x):
        if isinstance(x, FieldElement):
            if x.field != self:
                raise MixedFields("element belongs to a different field")
            return x
        return self.from_power([x])

    @cached_property
    def one(self):
        return self.from_power([1])

    @cached_property
    def zero(self):
        return FieldElement(self, (0,) * self.degree)

    @cached_property
    def gen(self):
        return self.from_power([0, 1])

    def gen_power(self, k):
        return self.from_power([0] * k + [1])

    def basis_elements(self):
        n = self.degree
        return [FieldElement(self, tuple(int(i == j) for j in range(n))) for i in range(n)]

    # -- embeddings -----------------------------------------------------------

    def embeddings(self, bits=128):
        """Certified embedding boxes at (at least) the requested precision."""
        bits = max(int(bits), 32)
        cached = self._embeddings.get(bits)
        if cached is None:
            prev = max((e for b, e in self._embeddings.items() if b < bits),
                       key=lambda e: e.bits, default=None)
            cached = EmbeddingSet.build(self, bits, prev)
            self._embeddings[bits] = cached
        return cached


class FieldElement:
    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise MixedFields("operands belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, _clean_vec(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, _clean_vec(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, _clean_vec(a * other for a in self.coords))
        other = self._check(other)
        if other is NotImplemented:
            return other
        n = self.field.degree
        table = self.field._table
        out = [0] * n
        for i, a in enumerate(self.coords):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(other.coords):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
        return FieldElement(self.field, _clean_vec(out))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroElement("inverse of zero")
        M = self.mult_matrix()
        one = self.field.one.coords
        # x * M = coords of x*a; solve x*M = 1
        x = linalg.solve_rational(M, one)
        return FieldElement(self.field, _clean_vec(x))

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"FieldElement({list(self.power_coords)})"

    # -- predicates and invariants ------------------------------------------

    def is_zero(self):
        return not any(self.coords)

    @property
    def is_integral(self):
        return all(isinstance(c, int) for c in self.coords)

    @property
    def power_coords(self):
        return _clean_vec(linalg.vecmat(self.coords, self.field.basis))

    def mult_matrix(self):
        """Row i holds the coordinates of b_i * self (so x * M == coords(x * self))."""
        return [list((b * self).coords) for b in self.field.basis_elements()]

    def norm(self):
        return _clean(Fraction(linalg.det(self.mult_matrix())))

    def trace(self):
        M = self.mult_matrix()
        return _clean(sum(Fraction(M[i][i]) for i in range(len(M))))


# -- certified embeddings ------------------------------------------------------

class EmbeddingSet:
    """Certified boxes for the s real roots and t upper-half-plane roots of f.

    Places are ordered real roots ascending, then complex roots (positive
    imaginary part) in the order fixed at the first isolation.
    """

    def __init__(self, field, bits, real, complex_):
        self.field = field
        self.bits = bits
        self.real = tuple(real)
        self.complex = tuple(complex_)

    @classmethod
    def build(cls, field, bits, previous=None):
        real, cplx = roots.isolate_roots(list(field.min_poly), bits)
        if previous is not None and len(cplx) > 1:
            cplx = _match_order(previous.complex, cplx)
        return cls(field, bits, real, cplx)

    def refine(self, bits=None):
        return self.field.embeddings(bits or 2 * self.bits)

    @property
    def places(self):
        return self.real + self.complex

    def root_boxes(self):
        return [r.box() for r in self.places]

    def evaluate(self, a):
        """CBox enclosures of sigma_i(a) for every place."""
        coeffs = list(a.power_coords)
        with intervals.precision(self.bits + 64):
            return [intervals.horner(coeffs, box) for box in self.root_boxes()]

    def real_values(self, a):
        coeffs = list(a.power_coords)
        with intervals.precision(self.bits + 64):
            return [intervals.real_horner(coeffs, r.box().re) for r in self.real]

    def all_values(self, a):
        """Enclosures at all n complex embeddings (conjugates appended)."""
        vals = self.evaluate(a)
        s = len(self.real)
        return vals + [v.conj() for v in vals[s:]]

    def approx_roots(self):
        """Numeric roots for all n embeddings (mpmath), same order as ``all_values``."""
        rs = [r.approx() for r in self.places]
        s = len(self.real)
        return rs + [mpmath.conj(z) for z in rs[s:]]


def _match_order(old, new):
    out = []
    pool = list(new)
    for o in old:
        oc = o.center
        best = min(pool, key=lambda r: (r.center[0] - oc[0]) ** 2 + (r.center[1] - oc[1]) ** 2)
        pool.remove(best)
        out.append(best)
    return out


# -- operations -----------------------------------------------------------------

def build_field(min_poly, integral_basis=None):
    """Validated number field: monic, irreducible, degree >= 2."""
    f = poly.trim([int(c) for c in min_poly])
    if len(f) < 3:
        raise ValueError("minimal polynomial must have degree >= 2")
    if f[-1] != 1:
        raise NonMonic(f"leading coefficient {f[-1]} != 1")
    if not poly.is_irreducible(f):
        raise Reducible(f"{f} factors over the rationals")
    K = NumberField(f, integral_basis)
    if not K.is_order:
        raise ValueError("integral basis does not span an order containing theta")
    return K


def real_signs(a, bits=64, max_bits=1 << 14):
    """Certified signs of a at the real places (refining until decided)."""
    if a.is_zero():
        raise ZeroElement("sign of zero")
    K = a.field
    while True:
        vals = K.embeddings(bits).real_values(a)
        signs = []
        for v in vals:
            if intervals.is_positive(v):
                signs.append(1)
            elif intervals.is_negative(v):
                signs.append(-1)
            else:
                break
        else:
            return signs
        if bits >= max_bits:
            raise ArithmeticError("sign refinement did not terminate")
        bits *= 2


def is_totally_positive(a, bits=64):
    return all(sg > 0 for sg in real_signs(a, bits))


def norm(a):
    return a.norm()


def abs_values(a, bits=128):
    """Interval enclosures of |sigma_i(a)| for every place."""
    with intervals.precision(bits + 64):
        return [abs(v) for v in a.field.embeddings(bits).evaluate(a)]


def log_abs_values(a, bits=128):
    """Interval enclosures of log|sigma_i(a)| for every place (a != 0)."""
    if a.is_zero():
        raise ZeroElement("log of zero")
    K = a.field
    while True:
        emb = K.embeddings(bits)
        vals = emb.evaluate(a)
        with intervals.precision(bits + 64):
            if all(not intervals.contains_zero(v.abs2()) for v in vals):
                return [v.log_abs() for v in vals]
        bits *= 2


class Automorphism:
    """Field automorphism theta -> image, acting linearly on basis coordinates."""

    def __init__(self, field, image):
        self.field = field
        self.image = image
        powers = [field.one]
        for _ in range(field.degree - 1):
            powers.append(powers[-1] * image)
        # row i: coordinates of g(b_i)
        rows = []
        for b in field.basis:
            acc = field.zero
            for c, pw in zip(b, powers):
                if c:
                    acc = acc + pw * c
            rows.append(list(acc.coords))
        self.matrix = rows

    def __call__(self, a):
        return FieldElement(self.field, _clean_vec(linalg.vecmat(a.coords, self.matrix)))

    def compose(self, other):
        """self o other."""
        return Automorphism(self.field, self(other.image))

    def inverse(self):
        # the automorphism group is finite, so some power of self is the identity
        g = self
        while True:
            nxt = self.compose(g)
            if nxt.is_identity:
                return g
            g = nxt

    @property
    def is_identity(self):
        return self.image == self.field.gen

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.image == other.image

    def __hash__(self):
        return hash(self.image)

    def __repr__(self):
        return f"Automorphism(theta -> {list(self.image.power_coords)})"


def _denominator_bound(K):
    """d with d * O_K contained in the order (from d^2 | disc)."""
    import sympy

    d = 1
    for p, e in sympy.factorint(abs(int(K.discriminant))).items():
        d *= p ** (e // 2)
    return d


def field_automorphisms(K, bits=128):
    """All automorphisms of K, identity first.

    Candidates come from matching numerical roots: an automorphism permutes the
    embeddings, sending real places to real places and complex pairs to complex
    pairs.  Each candidate image of theta is rounded to rational coordinates and
    accepted only if it is an exact root of the minimal polynomial.
    """
    n = K.degree
    s, t = K.signature
    d = _denominator_bound(K)
    f = list(K.min_poly)
    found = [K.gen]
    while True:
        emb = K.embeddings(bits)
        work = bits
        with mpmath.mp.workprec(work):
            rts = emb.approx_roots()
            V = mpmath.matrix(n, n)
            for k, r in enumerate(rts):
                for i, b in enumerate(K.basis):
                    V[k, i] = sum((mpmath.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else c)
                                  * r**j for j, c in enumerate(b))
            Vinv = V ** -1
            tol = mpmath.mpf(2) ** (-work // 4)
            for perm in _place_permutations(s, t):
                w = [rts[perm[k]] for k in range(n)]
                coords = []
                ok = True
                for i in range(n):
                    c = sum(Vinv[i, k] * w[k] for k in range(n)) * d
                    if abs(mpmath.im(c)) > tol:
                        ok = False
                        break
                    ci = mpmath.nint(mpmath.re(c))
                    if abs(mpmath.re(c) - ci) > tol:
                        ok = False
                        break
                    coords.append(Fraction(int(ci), d))
                if not ok:
                    continue
                gamma = K.element(coords)
                if gamma in found:
                    continue
                if _eval_poly_at(f, gamma).is_zero():
                    found.append(gamma)
        break
    autos = [Automorphism(K, g) for g in found]
    return autos


def _place_permutations(s, t):
    """Index maps k -> pi(k) on the n embeddings that commute with conjugation."""
    n = s + 2 * t
    for rp in permutations(range(s)):
        for cp in permutations(range(t)):
            for flips in product((False, True), repeat=t):
                perm = list(rp)
                tail = [None] * (2 * t)
                for j in range(t):
                    a = s + cp[j]
                    b = s + t + cp[j]
                    if flips[j]:
                        a, b = b, a
                    tail[j] = a
                    tail[t + j] = b
                perm.extend(tail)
                assert len(perm) == n
                yield perm


def _eval_poly_at(p, a):
    acc = a.field.zero
    for c in reversed(p):
        acc = acc * a + c
    return acc


def min_poly_of(a):
    """Monic minimal polynomial over Q (ascending; ints when a is integral)."""
    K = a.field
    vecs = [list(K.one.power_coords)]
    x = K.one
    for k in range(1, K.degree + 1):
        x = x * a
        target = list(x.power_coords)
        sol = _rational_combination(vecs, target)
        if sol is not None:
            coeffs = [-c for c in sol] + [1]
            return [_clean(Fraction(c)) for c in coeffs]
        vecs.append(target)
    raise AssertionError("minimal polynomial degree exceeds field degree")


def _rational_combination(rows, target):
    """x with x * rows == target over Q, or None."""
    m = len(rows)
    n = len(target)
    # augmented transpose system: columns are rows
    M = [[Fraction(rows[i][j]) for i in range(m)] + [Fraction(target[j])] for j in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        M[r] = [v / pv for v in M[r]]
        for i in range(n):
            if i != r and M[i][c]:
                fac = M[i][c]
                M[i] = [a - fac * b for a, b in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    if any(M[i][m] for i in range(r, n)):
        return None
    x = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        x[c] = M[i][m]
    return x


def dedekind_maximality_check(K, p):
    """True iff the order of K is p-maximal.

    Power basis: Dedekind's criterion.  Other bases: the p-radical of the order
    is computed and tested for invertibility (p-maximal iff invertible).
    """
    if not K.is_power_basis:
        from .ideals import p_radical, is_invertible

        return is_invertible(p_radical(K, p))
    f = list(K.min_poly)
    g = [1]
    h = [1]
    for fac, e in poly.factor_mod_p(f, p):
        g = poly.mul(g, fac)
        for _ in range(e - 1):
            h = poly.mul(h, fac)
    diff = poly.sub(poly.mul(g, h), f)
    F = poly.reduce_mod_p([c // p for c in diff], p)
    if not F:
        return poly.degree(poly.gcd_mod_p(g, h, p)) <= 0
    common = poly.gcd_mod_p(poly.gcd_mod_p(F, g, p), h, p)
    return poly.degree(common) <= 0

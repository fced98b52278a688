"""Automorphism data of X(K, U): A_U, the three-step filtration, group law, H_1.

An element of the automorphism group is stored as a triple
``(translation, unit class, galois index)`` and acts on K by
``x -> v * g(x) + beta``.  Translations live in (O:J(U)) modulo O, unit classes
are exponent vectors over the O^{x,+} basis modulo the exponent lattice of U.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from mpmath import iv

from . import ideals, intervals, linalg, numfield, units
from .errors import ContextMismatch, NotAdmissible, NotInSpan, NotSimpleType
from .ideals import FiniteAbelianGroup


def compute_au(field, U, autos=None):
    """Field automorphisms g with g(U) = U."""
    autos = numfield.field_automorphisms(field) if autos is None else autos
    out = []
    for g in autos:
        try:
            E = [list(units.exponent_vector(g(u), U)) for u in U.generators]
        except NotInSpan:
            continue
        # g(U) is inside U; equal index forces equality
        assert abs(linalg.det(E)) == 1 if E else True
        out.append(g)
    return out


@dataclass
class AutFiltrationReport:
    gr0: FiniteAbelianGroup
    gr1_order: int  # None when infinite or unknown
    gr1: FiniteAbelianGroup
    gr2: list
    chi_f: Fraction
    j_ideal: object
    gr1_status: str = "finite"  # finite | infinite | unknown
    gr0_canonical: bool = False

    @property
    def gr0_order(self):
        return self.gr0.order


def _check_hypotheses(U):
    cert = units.is_admissible(U)
    if not cert.ok:
        raise NotAdmissible(cert.clause)
    if not units.is_simple_type(U):
        dim, _ = units.span_dimension(list(U.generators))
        raise NotSimpleType(f"the generators span a subfield of degree {dim}")
    return cert


def aut_filtration(field, U, basis=None, autos=None):
    """gr0 = O/J(U), gr1 = O^{x,+}/U, gr2 = A_U, and chi^F = |gr0| |gr2| / |gr1|."""
    _check_hypotheses(U)
    J = units.j_ideal(U)
    gr0 = ideals.quotient_structure(J)
    gr2 = compute_au(field, U, autos)
    gr1 = gr1_order = None
    status = "finite"
    if basis is None and field.signature == (1, 1):
        basis = units.rank1_fundamental_unit_search(field)
    if basis is None:
        status = "unknown"
    elif basis.rank > U.rank:
        status = "infinite"
    else:
        gr1 = units.quotient_structure(U, basis)
        gr1_order = gr1.order
    chi = Fraction(gr0.order * len(gr2), gr1_order) if gr1_order else None
    return AutFiltrationReport(gr0, gr1_order, gr1, gr2, chi, J, status)


# -- the group law on triples ------------------------------------------------------

class AutGroup:
    """Context for AutElement arithmetic: K, U, the O^{x,+} basis and A_U."""

    def __init__(self, field, U, basis, autos=None):
        self.field = field
        self.U = U
        self.basis = basis
        self.autos = compute_au(field, U, autos)
        self.J = units.j_ideal(U)
        self.inverse_ideal = ideals.inverse_fractional(self.J)
        self.u_lattice = linalg.hnf_basis(units.exponent_matrix(U, basis))
        # g acts on exponent vectors: row i = exponents of g(basis_i)
        self.galois_mats = [[list(units.exponent_vector(g(b), basis)) for b in basis.units]
                            for g in self.autos]
        self._inv_index = [self._find_inverse(i) for i in range(len(self.autos))]

    def _find_inverse(self, i):
        gi = self.autos[i].inverse()
        return self.autos.index(gi)

    def _gindex(self, g):
        if isinstance(g, int):
            return g
        return self.autos.index(g)

    # canonical forms
    def reduce_translation(self, beta):
        coords = [Fraction(c) for c in (beta.coords if hasattr(beta, "coords") else beta)]
        if not self.inverse_ideal.contains(self.field.element(coords)):
            raise ValueError("translation is not in (O:J(U))")
        return tuple(c - floor(c) for c in coords)

    def reduce_units(self, exps):
        return tuple(linalg.hnf_reduce(list(exps), self.u_lattice))

    def element(self, beta=None, exps=None, g=0):
        n = self.field.degree
        beta = (0,) * n if beta is None else beta
        exps = (0,) * self.basis.rank if exps is None else exps
        return AutElement(self, self.reduce_translation(beta), self.reduce_units(exps), self._gindex(g))

    def identity(self):
        return self.element()

    def unit_value(self, exps):
        out = self.field.one
        for b, e in zip(self.basis.units, exps):
            if e:
                out = out * b ** e
        return out

    def act_on_exps(self, gi, exps):
        return linalg.vecmat(list(exps), self.galois_mats[gi]) if exps else []

    def compose(self, x, y):
        """(x o y)(z) = x(y(z))."""
        if x.ctx is not self or y.ctx is not self:
            raise ContextMismatch("elements come from different contexts")
        K = self.field
        g1 = self.autos[x.galois]
        v1 = self.unit_value(x.units)
        b2 = K.element(y.translation)
        beta = v1 * g1(b2) + K.element(x.translation)
        exps = [a + b for a, b in zip(x.units, self.act_on_exps(x.galois, y.units))]
        g = g1.compose(self.autos[y.galois])
        return AutElement(self, self.reduce_translation(beta), self.reduce_units(exps), self.autos.index(g))

    def inverse(self, x):
        K = self.field
        gi = self._inv_index[x.galois]
        ginv = self.autos[gi]
        v = self.unit_value(x.units)
        beta = -ginv(K.element(x.translation) / v)
        exps = [-c for c in self.act_on_exps(gi, x.units)]
        return AutElement(self, self.reduce_translation(beta), self.reduce_units(exps), gi)

    def random(self, rng, spread=3):
        K = self.field
        inv = self.inverse_ideal
        coeffs = [rng.randint(-spread * inv.denominator, spread * inv.denominator)
                  for _ in range(K.degree)]
        num = linalg.vecmat(coeffs, [list(r) for r in inv.numerator.basis])
        beta = [Fraction(c, inv.denominator) for c in num]
        exps = [rng.randint(-spread, spread) for _ in range(self.basis.rank)]
        return self.element(beta, exps, rng.randrange(len(self.autos)))

    def translations(self, limit=10**4):
        """All of (O:J(U))/O as reduced coordinate tuples (closure under the generators)."""
        inv = self.inverse_ideal
        gens = [self.reduce_translation([Fraction(c, inv.denominator) for c in row])
                for row in inv.numerator.basis]
        zero = tuple(Fraction(0) for _ in range(self.field.degree))
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for t in frontier:
                for g in gens:
                    s = tuple((a + b) - floor(a + b) for a, b in zip(t, g))
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
                        if len(seen) > limit:
                            raise ValueError("translation group exceeds the enumeration limit")
            frontier = nxt
        return sorted(seen)

    def dietz_triple(self, x):
        """(alpha, beta, delta) on pi = O x| U induced by x (callables)."""
        K = self.field
        g = self.autos[x.galois]
        v = self.unit_value(x.units)
        b0 = K.element(x.translation)

        def alpha(a):
            return v * g(a)

        def beta(b):
            return (1 - g(b)) * b0

        def delta(b):
            return g(b)

        return alpha, beta, delta


@dataclass(frozen=True)
class AutElement:
    ctx: object
    translation: tuple
    units: tuple
    galois: int

    def __mul__(self, other):
        return self.ctx.compose(self, other)

    def inverse(self):
        return self.ctx.inverse(self)

    def key(self):
        return (self.translation, self.units, self.galois)

    def __eq__(self, other):
        return isinstance(other, AutElement) and self.ctx is other.ctx and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


# -- Dietz triples -------------------------------------------------------------------

def _as_callable(field, m):
    if callable(m):
        return m
    M = [list(r) for r in m]
    return lambda a: field.element(linalg.vecmat(list(a.coords), M))


@dataclass
class DietzResult:
    ok: bool
    witness: str = ""


def verify_dietz_triple(field, U, alpha, beta, delta, rng=None, words=50, max_exp=3):
    """Check the two conditions of a Dietz triple on O x| U.

    ``alpha`` is a callable or an integer matrix (rows = images of basis
    elements); ``beta`` and ``delta`` are callables on units, or, for ``beta``,
    a dict {generator index: value} extended along words by condition (1).
    """
    rng = rng or random.Random(0)
    alpha = _as_callable(field, alpha)
    if isinstance(beta, dict):
        beta = _cocycle_extension(U, beta, delta)
    r = U.rank
    samples = [(0,) * r]
    for i in range(r):
        e = [0] * r
        e[i] = 1
        samples.append(tuple(e))
        e[i] = -1
        samples.append(tuple(e))
    for _ in range(words):
        samples.append(tuple(rng.randint(-max_exp, max_exp) for _ in range(r)))
    elems = [U.word(e) for e in samples]
    for e, b in zip(samples, elems):
        val = beta(b)
        if not val.is_integral:
            return DietzResult(False, f"beta({list(e)}) is not integral")
        db = delta(b)
        try:
            units.exponent_vector(db, U)
        except NotInSpan:
            return DietzResult(False, f"delta({list(e)}) is not in U")
    pairs = [(i, j) for i in range(len(elems)) for j in range(len(elems))
             if i < 2 * r + 1 and j < 2 * r + 1]
    pairs += [(rng.randrange(len(elems)), rng.randrange(len(elems))) for _ in range(words)]
    for i, j in pairs:
        b1, b2 = elems[i], elems[j]
        lhs = beta(b1 * b2)
        rhs = beta(b1) + beta(b2) * delta(b1)
        if lhs != rhs:
            return DietzResult(False, f"condition (1) fails at b1={list(samples[i])}, b2={list(samples[j])}")
    basis = field.basis_elements()
    for a in basis:
        for i in range(len(elems)):
            b = elems[i]
            if alpha(a * b) != alpha(a) * delta(b):
                return DietzResult(False, f"condition (2) fails at b={list(samples[i])}")
    # alpha must be an automorphism of (O, +)
    M = [list(alpha(a).coords) for a in basis]
    if any(not isinstance(x, int) for row in M for x in row) or abs(linalg.det(M)) != 1:
        return DietzResult(False, "alpha is not an automorphism of (O, +)")
    return DietzResult(True)


def _cocycle_extension(U, values, delta):
    K = U.field
    gens = U.generators

    def beta(b):
        e = units.exponent_vector(b, U)
        total = K.zero
        prefix = K.one
        for i, c in enumerate(e):
            g = gens[i]
            step = values[i]
            if c < 0:
                g = g.inverse()
                step = -(delta(g) * values[i])
            for _ in range(abs(c)):
                # beta(p * g) = beta(p) + delta(p) beta(g)
                total = total + delta(prefix) * step
                prefix = prefix * g
        return total

    return beta


# -- H_1 and geometric invariants ------------------------------------------------------

@dataclass
class H1Report:
    torsion: FiniteAbelianGroup
    free_rank: int
    generator_bound: int

    @property
    def generator_count(self):
        return self.torsion.rank + self.free_rank

    @property
    def bound_holds(self):
        return self.generator_count <= self.generator_bound


def h1_structure(field, U):
    cert = units.is_admissible(U)
    if not cert.ok:
        raise NotAdmissible(cert.clause)
    torsion = ideals.quotient_structure(units.j_ideal(U))
    return H1Report(torsion, U.rank, field.s + 2 * field.t)


@dataclass
class GeometricReport:
    dimension: int
    b1: int
    b2: int
    volume_proxy: object  # interval
    lck: bool
    lck_note: str


def geometric_invariants(field, U, bits=128):
    s, t = field.signature
    det = units.real_log_det(U, bits) if U.rank == s else None
    d = abs(field.discriminant)
    with intervals.precision(bits + 64):
        root = iv.sqrt(intervals.from_fraction(d))
        volume = root * abs(det) if det is not None else None
    if t <= 1:
        lck, note = True, "vacuous: fewer than two complex places"
    else:
        lck, note = _lck_check(field, U, bits)
    return GeometricReport(s + t, s, s * (s - 1) // 2, volume, lck, note)


def _lck_check(field, U, bits):
    s, t = field.signature
    for u in U.generators:
        vals = numfield.abs_values(u, bits)[s:]
        for i in range(t):
            for j in range(i + 1, t):
                a, b = intervals.bounds(vals[i])
                c, d = intervals.bounds(vals[j])
                if b < c or d < a:
                    return False, f"certified unequal moduli at {bits} bits"
    return True, f"moduli agree within certified intervals at {bits} bits"

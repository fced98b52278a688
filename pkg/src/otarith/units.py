"""Unit subgroups: verification, positivity, J(U), exponent lattices, rank-1 search.

Exponent vectors are always confirmed by exact multiplication; certified
logarithms only propose candidates.  Totally positive roots of unity are
trivial when s >= 1, so exponent vectors over a totally positive basis are
unique once confirmed.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product

import mpmath

from . import ideals, intervals, linalg, numfield
from .errors import (InfiniteIndex, NonIntegral, NotInSpan, NotSubgroup, NotUnit,
                     SearchExhausted, ZeroIdeal)
from .numfield import FieldElement


def is_unit(a):
    if not a.is_integral:
        raise NonIntegral(f"{a} is not integral")
    if a.is_zero():
        return False
    return abs(a.norm()) == 1


def _require_units(gens):
    for g in gens:
        if not is_unit(g):
            raise NotUnit(f"{g} has norm {g.norm()}")


class UnitSubgroup:
    """Subgroup of O^x generated by verified units."""

    def __init__(self, field, generators, claimed_rank=None):
        self.field = field
        self.generators = tuple(field(g) if not isinstance(g, FieldElement) else g for g in generators)
        _require_units(self.generators)
        self.claimed_rank = len(self.generators) if claimed_rank is None else claimed_rank

    @property
    def rank(self):
        return len(self.generators)

    def power(self, n):
        """The subgroup generated by the n-th powers of the generators."""
        return UnitSubgroup(self.field, [g ** n for g in self.generators])

    def word(self, exps):
        out = self.field.one
        for g, e in zip(self.generators, exps):
            if e:
                out = out * g ** e
        return out

    def __repr__(self):
        return f"UnitSubgroup({[list(g.power_coords) for g in self.generators]})"


@dataclass
class UnitBasis:
    """Declared generators of O^{x,+} (free part)."""

    field: object
    units: tuple
    provenance: str = "input"
    certificate: dict = dc_field(default_factory=dict)
    full_index: int = None  # [O^x : O^{x,+}] when known

    def __post_init__(self):
        self.units = tuple(self.units)
        _require_units(self.units)

    @property
    def rank(self):
        return len(self.units)

    def subgroup(self):
        return UnitSubgroup(self.field, self.units)


# -- J(U) ---------------------------------------------------------------------

def j_ideal(U):
    """Ideal generated by g - 1 over the generators of U."""
    gens = [g - 1 for g in U.generators]
    if all(g.is_zero() for g in gens):
        raise ZeroIdeal("J of the trivial group is the zero ideal")
    return ideals.ideal_from_generators(U.field, gens)


# -- signs and positivity --------------------------------------------------------

def sign_vector(a, bits=64):
    """Signs at the real places as bits (1 = negative)."""
    return [0 if sg > 0 else 1 for sg in numfield.real_signs(a, bits)]


def totally_positive_subgroup(units, include_minus_one=True):
    """Generators of the totally positive part of <-1, units> (or <units>).

    The kernel of the sign map to (Z/2)^s is computed on exponent vectors; a
    kernel element whose sign pattern is all-negative is multiplied by -1 when
    ``include_minus_one`` is set.
    """
    units = list(units)
    if not units:
        raise ValueError("need at least one unit")
    K = units[0].field
    _require_units(units)
    if any(u == K(-1) for u in units):
        include_minus_one = True
    units = [u for u in units if u != K(1) and u != K(-1)]
    s = K.s
    if not units:
        return UnitBasis(K, (), "input", full_index=2 ** s if include_minus_one else 1)
    signs = [sign_vector(u) for u in units]
    rows = [list(sg) for sg in signs]
    if include_minus_one:
        rows.append([1] * s)
    L = linalg.kernel_mod(rows, [2] * s) if s else linalg.identity(len(rows))
    k = len(units)
    proj = linalg.hnf_basis([row[:k] for row in L])
    out = []
    for e in proj:
        w = K.one
        for u, c in zip(units, e):
            if c:
                w = w * u ** c
        if not numfield.is_totally_positive(w):
            w = -w
        assert numfield.is_totally_positive(w)
        out.append(w)
    index = abs(linalg.det(proj)) if len(proj) == k else None
    full = None
    if index is not None:
        full = index * (2 if include_minus_one else 1)
    return UnitBasis(K, tuple(out), "input", full_index=full)


# -- logarithms and exponent vectors ---------------------------------------------

def _log_rows(units, places, bits):
    return [[numfield.log_abs_values(u, bits)[i] for i in places] for u in units]


def _mid(x):
    lo, hi = intervals.bounds(x)
    m = (lo + hi) / 2
    return mpmath.mpf(m.numerator) / m.denominator


def exponent_vector(u, basis, bits=128):
    """Integer exponents e with u = prod basis_i^e_i, confirmed exactly."""
    gens = basis.units if isinstance(basis, UnitBasis) else basis.generators
    K = u.field
    if not is_unit(u):
        raise NotUnit(f"{u} is not a unit")
    r = len(gens)
    if r == 0:
        if u == K.one:
            return ()
        raise NotInSpan("only 1 lies in the trivial group")
    places = list(range(K.s + K.t))
    with mpmath.mp.workprec(bits):
        A = mpmath.matrix([[_mid(x) for x in row] for row in _log_rows(gens, places, bits)])
        b = mpmath.matrix([_mid(x) for x in numfield.log_abs_values(u, bits)])
        # least squares for x * A = b, i.e. A^T x^T = b^T
        x = mpmath.qr_solve(A.T, b)[0]
        est = [x[i] for i in range(r)]
        exps = [int(mpmath.nint(c)) for c in est]
        if any(abs(c - e) >= mpmath.mpf(1) / 4 for c, e in zip(est, exps)):
            raise NotInSpan(f"log coordinates {[mpmath.nstr(c, 8) for c in est]} are not near integers")
    w = K.one
    for g, e in zip(gens, exps):
        if e:
            w = w * g ** e
    if w != u:
        raise NotInSpan("exact confirmation failed")
    return tuple(exps)


def exponent_matrix(U, basis):
    try:
        return [list(exponent_vector(g, basis)) for g in U.generators]
    except NotInSpan as exc:
        raise NotSubgroup(f"a generator is outside the reference group: {exc}") from None


def subgroup_index(U, V):
    """[V : U] for U inside V, via the exponent lattice."""
    E = exponent_matrix(U, V)
    rv = V.rank
    if linalg.rank(E) < rv:
        raise InfiniteIndex(f"subgroup has rank {linalg.rank(E)} < {rv}")
    H = linalg.hnf_basis(E)
    return abs(linalg.det(H))


def quotient_structure(U, V):
    """Elementary divisors of V/U (finite index)."""
    E = exponent_matrix(U, V)
    if linalg.rank(E) < V.rank:
        raise InfiniteIndex("subgroup has smaller rank")
    D = linalg.snf(E).divisors
    return ideals.FiniteAbelianGroup.from_divisors(D)


# -- admissibility and simple type ----------------------------------------------

@dataclass
class Certificate:
    ok: bool
    clause: str = ""
    log_det: tuple = None  # decimal (lo, hi)
    note: str = ""


def is_admissible(U, bits=128):
    """Totally positive generators, rank s, and nonvanishing real-log determinant."""
    K = U.field
    s = K.s
    note = "admissibility per cited definition" if K.t > 1 else ""
    for g in U.generators:
        if not numfield.is_totally_positive(g):
            return Certificate(False, "not totally positive", note=note)
    if U.rank != s or U.claimed_rank != s:
        return Certificate(False, f"rank {U.rank} != s = {s}", note=note)
    det = real_log_det(U, bits)
    if intervals.contains_zero(det):
        rel = multiplicative_relation(U.generators, bits)
        if rel is not None:
            return Certificate(False, f"generators are dependent: exponents {list(rel)} give 1", note=note)
    while intervals.contains_zero(det):
        if bits > 4096:
            return Certificate(False, "log determinant not separated from 0", note=note)
        bits *= 2
        det = real_log_det(U, bits)
    return Certificate(True, "", intervals.decimal_pair(det), note)


def multiplicative_relation(gens, bits=128):
    """Nonzero integer c with prod g_i^c_i = 1, found by PSLQ and confirmed exactly.

    Returns None when no relation is found; that is not a proof of independence.
    """
    gens = list(gens)
    if len(gens) < 2:
        return None
    K = gens[0].field
    rows = _log_rows(gens, range(K.s + K.t), bits)
    with mpmath.mp.workprec(bits):
        # fixed irrational weights fold the places into one real vector
        w = [mpmath.sqrt(mpmath.mpf(p)) for p in (2, 3, 5, 7, 11, 13, 17, 19)[:K.s + K.t]]
        x = [mpmath.fsum(wj * _mid(v) for wj, v in zip(w, row)) for row in rows]
        c = mpmath.pslq(x, maxcoeff=10 ** 6, maxsteps=10 ** 4)
    if c is None:
        return None
    prod_ = K.one
    for g, e in zip(gens, c):
        if e:
            prod_ = prod_ * g ** e
    return tuple(c) if prod_ == K.one else None


def real_log_det(U, bits=128):
    """Interval for det(log sigma_j(u_i)) over the real places."""
    s = U.field.s
    rows = _log_rows(U.generators, range(s), bits)
    with intervals.precision(bits + 64):
        return _interval_det(rows)


def _interval_det(M):
    n = len(M)
    if n == 0:
        return intervals.from_fraction(1)
    if n == 1:
        return M[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _interval_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def span_dimension(gens):
    """Q-dimension of the algebra generated by ``gens``, with a basis of it."""
    if not gens:
        return 1, []
    K = gens[0].field
    basis_vecs = []

    def independent(v):
        return linalg.rank(basis_vecs + [list(v)]) > len(basis_vecs)

    frontier = [K.one]
    basis_vecs.append([Fraction(c) for c in K.one.power_coords])
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a * g
                v = [Fraction(c) for c in b.power_coords]
                if independent(v):
                    basis_vecs.append(v)
                    nxt.append(b)
        frontier = nxt
    return len(basis_vecs), basis_vecs


def is_simple_type(U):
    K = U.field
    for g in U.generators:
        if len(numfield.min_poly_of(g)) - 1 == K.degree:
            return True
    dim, _ = span_dimension(list(U.generators))
    return dim == K.degree


# -- rank-1 fundamental unit search ---------------------------------------------------

def _embedding_matrix(K, bits):
    emb = K.embeddings(bits)
    rows = []
    with mpmath.mp.workprec(bits):
        for b in K.basis_elements():
            vals = emb.evaluate(b)
            re = _mid(vals[0].re)
            z = vals[1]
            rows.append([re, _mid(z.re), _mid(z.im)])
        return mpmath.matrix(rows)


def _real_value(a, bits=128):
    return numfield.EmbeddingSet.real_values(a.field.embeddings(bits), a)[0]


def rank1_fundamental_unit_search(K, max_log2=400, bits=128):
    """Totally positive fundamental unit of a field with signature (1, 1).

    Lattice points a with 1 < sigma_1(a) <= X and |sigma_2(a)| < 1 are enumerated
    for X = 4, 16, ...; every unit above 1 has this shape, so the smallest unit
    found is the fundamental unit.  Fundamentality is certified independently
    with the bound |d| < 4 eps^3 + 24 and an exact k-th root test.
    """
    if K.signature != (1, 1):
        raise ValueError("rank-1 search needs signature (1, 1)")
    V = _embedding_matrix(K, bits)
    with mpmath.mp.workprec(bits):
        Vinv = V ** -1
    X = mpmath.mpf(4)
    while True:
        found = _search_box(K, V, Vinv, X, bits)
        if found:
            break
        X = X * X
        if X > mpmath.mpf(2) ** max_log2:
            raise SearchExhausted(f"no unit with real embedding below 2^{max_log2}")
    best = min(found, key=lambda a: intervals.lower(_real_value(a, bits)))
    cert = certify_fundamental(best, bits)
    return UnitBasis(K, (best,), "searched+certified", cert, full_index=2)


def _search_box(K, V, Vinv, X, bits):
    with mpmath.mp.workprec(bits):
        lo = [mpmath.mpf(1), mpmath.mpf(-1), mpmath.mpf(-1)]
        hi = [X, mpmath.mpf(1), mpmath.mpf(1)]
        corners = [[lo[k] if bit else hi[k] for k, bit in enumerate(bits_)]
                   for bits_ in product((0, 1), repeat=3)]
        ranges = []
        for i in range(3):
            vals = [sum(w[k] * Vinv[k, i] for k in range(3)) for w in corners]
            ranges.append((int(mpmath.floor(min(vals))) - 1, int(mpmath.ceil(max(vals))) + 1))
        eps = mpmath.mpf(2) ** (-bits // 2)
        out = []
        for c1 in range(ranges[1][0], ranges[1][1] + 1):
            for c2 in range(ranges[2][0], ranges[2][1] + 1):
                # constraints lo_k <= c0*V[0,k] + c1*V[1,k] + c2*V[2,k] <= hi_k
                a, b = mpmath.mpf(ranges[0][0]), mpmath.mpf(ranges[0][1])
                for k in range(3):
                    base = c1 * V[1, k] + c2 * V[2, k]
                    coef = V[0, k]
                    if abs(coef) < eps:
                        if base < lo[k] - eps or base > hi[k] + eps:
                            a, b = 1, 0
                        continue
                    p = (lo[k] - eps - base) / coef
                    q = (hi[k] + eps - base) / coef
                    if p > q:
                        p, q = q, p
                    a, b = max(a, p), min(b, q)
                for c0 in range(int(mpmath.ceil(a)), int(mpmath.floor(b)) + 1):
                    x = K.element((c0, c1, c2))
                    if x.is_zero() or abs(x.norm()) != 1:
                        continue
                    if intervals.lower(_real_value(x, bits)) > 1:
                        out.append(x)
    return out


def certify_fundamental(v, bits=128):
    """Certificate that the unit v > 1 (signature (1,1)) is not a k-th power, k >= 2."""
    K = v.field
    d = abs(int(K.discriminant)) if isinstance(K.discriminant, int) else abs(K.discriminant)
    with mpmath.mp.workprec(bits):
        x = _mid(_real_value(v, bits))
        logv = mpmath.log(x)
        if d > 24:
            eps_min = mpmath.cbrt((mpmath.mpf(d) - 24) / 4)
            kmax = int(mpmath.floor(logv / mpmath.log(eps_min)))
            method = "artin-bound"
        else:
            kmax = None
            method = "enumeration"
    if kmax is None:
        return {"method": method, "k_max": None, "roots_checked": []}
    checked = []
    for k in range(2, kmax + 1):
        if _kth_root(v, k, bits) is not None:
            raise AssertionError(f"unit is a {k}-th power; search selected a non-minimal unit")
        checked.append(k)
    return {"method": method, "k_max": max(kmax, 1), "roots_checked": checked}


def _kth_root(v, k, bits=128):
    """An element w of the order with w^k == v, or None (all branches tried)."""
    K = v.field
    V = _embedding_matrix(K, bits)
    emb = K.embeddings(bits)
    with mpmath.mp.workprec(bits):
        Vinv = V ** -1
        vals = emb.evaluate(v)
        r = _mid(vals[0].re)
        z = mpmath.mpc(_mid(vals[1].re), _mid(vals[1].im))
        if r <= 0:
            return None
        r_root = mpmath.root(r, k)
        for j in range(k):
            zr = mpmath.root(z, k) * mpmath.expjpi(2 * mpmath.mpf(j) / k)
            w = [r_root, mpmath.re(zr), mpmath.im(zr)]
            coords = [sum(w[m] * Vinv[m, i] for m in range(3)) for i in range(3)]
            ints = [int(mpmath.nint(c)) for c in coords]
            if any(abs(c - e) > mpmath.mpf(1) / 4 for c, e in zip(coords, ints)):
                continue
            cand = K.element(ints)
            if cand ** k == v:
                return cand
    return None

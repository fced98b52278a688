"""Torsion growth |H_1(X_n)_tor| = |N(1 - u^n)| and its Mahler-measure limit."""

from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv

from . import intervals, numfield, ot, poly, roots, units
from .errors import TorsionUnit
from .intervals import CBox


def torsion_order(field, u, n):
    """|N(1 - u^n)| by the multiplication-matrix determinant."""
    if n < 1:
        raise ValueError("n must be positive")
    w = 1 - u ** n
    if w.is_zero():
        raise TorsionUnit(f"u^{n} = 1")
    return abs(int(w.norm()))


def torsion_order_resultant(field, u, n):
    """|Res(f_u, x^n - 1)|^(deg K / deg f_u), the resultant form of the same number."""
    f = numfield.min_poly_of(u)
    d = len(f) - 1
    r = abs(poly.resultant(f, [-1] + [0] * (n - 1) + [1]))
    if r == 0:
        raise TorsionUnit(f"u^{n} = 1")
    return r ** (field.degree // d)


def cyclotomic_product(f, n, bits=128):
    """Interval for prod over n-th roots of unity zeta of |f(zeta)|."""
    with intervals.precision(bits + 64):
        total = iv.mpf(1)
        for k in range(n):
            # certified enclosure of zeta = exp(2 pi i k / n)
            ang = 2 * iv.pi * k / n
            z = CBox(iv.cos(ang), iv.sin(ang))
            total = total * abs(intervals.horner(list(f), z))
    return total


def mahler_measure(f, bits=128):
    """Certified interval for M(f) = |lc| * prod max(1, |root|), width <= 2^(-bits/2)."""
    f = poly.trim([int(c) for c in f])
    if not f:
        raise ValueError("Mahler measure of the zero polynomial")
    lead = abs(f[-1])
    factors = poly.squarefree_decomposition(f)
    work = bits
    target = Fraction(1, 2 ** (bits // 2))
    while True:
        with intervals.precision(work + 64):
            total = intervals.from_fraction(lead)
            for g, e in factors:
                if len(g) <= 1:
                    continue
                for box in roots.all_root_boxes(g, work):
                    m = intervals.max_one(abs(box))
                    for _ in range(e):
                        total = total * m
            if intervals.width(total) <= target:
                return total
        work *= 2


@dataclass
class GrowthTerm:
    n: int
    torsion: int
    log_term: object  # interval log(torsion)/n


@dataclass
class GrowthReport:
    field: object
    unit: object
    terms: list
    min_poly: list
    mahler: object
    log_limit: object  # [K:Q(u)] * log M(f_u)
    limit_gap: object
    half_gap: object
    trend_ok: bool
    kronecker_ok: bool


def _log_term(T, n, bits):
    with intervals.precision(bits + 64):
        return iv.log(intervals.from_fraction(T)) / n


def kronecker_guard(u, bits=128):
    """True when some embedding of u is certified off the unit circle."""
    for v in numfield.abs_values(u, bits):
        lo, hi = intervals.bounds(v)
        if lo > 1 or hi < 1:
            return True
    return False


def growth_report(field, u, horizon=60, bits=128):
    if horizon < 4:
        raise ValueError("horizon must be at least 4")
    if not units.is_unit(u):
        raise ValueError("u must be a unit")
    if not kronecker_guard(u, bits):
        raise TorsionUnit("no embedding of u is certified off the unit circle")
    terms = []
    for n in range(1, horizon + 1):
        T = torsion_order(field, u, n)
        terms.append(GrowthTerm(n, T, _log_term(T, n, bits)))
    f = numfield.min_poly_of(u)
    M = mahler_measure(f, bits)
    k = field.degree // (len(f) - 1)
    with intervals.precision(bits + 64):
        limit = iv.log(M) * k
        gap = abs(terms[-1].log_term - limit)
        half = abs(terms[horizon // 2 - 1].log_term - limit)
    trend = intervals.upper(gap) < intervals.lower(half)
    return GrowthReport(field, u, terms, f, M, limit, gap, half, trend, True)


@dataclass
class ChainLevel:
    level: int
    n: int
    torsion: int
    h1: object
    divides_next: bool = None


def covering_chain(field, u, p, depth):
    """Levels n = p^0 .. p^depth with torsion orders and H_1 structures of <u^n>."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    levels = []
    for j in range(depth + 1):
        n = p ** j
        U = units.UnitSubgroup(field, [u ** n])
        T = torsion_order(field, u, n)
        h1 = ot.h1_structure(field, U)
        assert h1.torsion.order == T
        levels.append(ChainLevel(j, n, T, h1))
    for a, b in zip(levels, levels[1:]):
        a.divides_next = b.torsion % a.torsion == 0
    return levels

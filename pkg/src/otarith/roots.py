"""Certified root isolation for squarefree integer polynomials.

Real roots are isolated with a Sturm sequence and refined by bisection on exact
rationals.  Non-real roots are approximated numerically (mpmath) and then
certified a posteriori: for a polynomial of degree n, the disk around z of
radius n*|f(z)/f'(z)| contains a root.  Pairwise disjoint disks that avoid the
real axis, together with the Sturm count, account for every root exactly once.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import mpmath

from . import poly
from . import intervals
from .intervals import CBox


@dataclass(frozen=True)
class RootBox:
    """Certified enclosure of one root.

    Real roots: ``re_lo <= root <= re_hi`` and ``radius`` is None.
    Non-real roots: the disk ``|root - (re + i*im)| <= radius``; ``re_lo`` etc.
    are the bounding square.
    """

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction
    radius: Fraction = None

    @property
    def is_real(self):
        return self.radius is None

    @property
    def center(self):
        return (self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2

    @property
    def width(self):
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def box(self):
        re = intervals.from_bounds(self.re_lo, self.re_hi)
        if self.is_real:
            return CBox(re)
        return CBox(re, intervals.from_bounds(self.im_lo, self.im_hi))

    def approx(self):
        c = self.center
        if self.is_real:
            return mpmath.mpf(c[0].numerator) / c[0].denominator
        return mpmath.mpc(mpmath.mpf(c[0].numerator) / c[0].denominator,
                          mpmath.mpf(c[1].numerator) / c[1].denominator)


def isolate_real_roots(f, bits):
    """Disjoint rational intervals, one per real root, each of width <= 2^-bits."""
    f = poly.trim(f)
    seq = poly.sturm_sequence(f)
    B = poly.root_bound(f)
    eps = Fraction(1, 2**bits)
    out = []
    stack = [(Fraction(-B), Fraction(B))]
    while stack:
        a, b = stack.pop()
        k = poly.sturm_count(seq, a, b)
        if k == 0:
            continue
        if k == 1:
            out.append(_refine_real(f, a, b, eps))
            continue
        m = (a + b) / 2
        stack.append((a, m))
        stack.append((m, b))
    out.sort()
    return out


def _refine_real(f, a, b, eps):
    # (a, b] holds exactly one simple root
    fb = poly.evaluate(f, b)
    if fb == 0:
        return (b, b)
    sb = fb > 0
    while b - a > eps:
        m = (a + b) / 2
        fm = poly.evaluate(f, m)
        if fm == 0:
            return (m, m)
        if (fm > 0) == sb:
            b = m
        else:
            a = m
    return (a, b)


def refine_real(f, lo, hi, bits):
    if lo == hi:
        return (lo, hi)
    return _refine_real(f, lo, hi, Fraction(1, 2**bits))


def _dyadic(x, bits):
    return Fraction(int(mpmath.nint(x * mpmath.mpf(2) ** bits)), 2**bits)


def _sqrt_upper(q, bits):
    """Rational upper bound for sqrt(q), within 2^-bits of the true value."""
    if q == 0:
        return Fraction(0)
    r = isqrt(q.numerator * 4**bits // q.denominator) + 1
    return Fraction(r, 2**bits)


def _disk(f, df, n, zr, zi, bits):
    z = (zr, zi)
    fv = _ceval(f, z)
    dv = _ceval(df, z)
    d2 = dv[0] ** 2 + dv[1] ** 2
    if d2 == 0:
        return None
    r2 = Fraction(n * n) * (fv[0] ** 2 + fv[1] ** 2) / d2
    return _sqrt_upper(r2, bits)


def _ceval(p, z):
    re, im = Fraction(0), Fraction(0)
    zr, zi = z
    for c in reversed(p):
        re, im = re * zr - im * zi + c, re * zi + im * zr
    return re, im


def isolate_complex_roots(f, bits, real_count):
    """Certified disks for the roots with positive imaginary part."""
    f = poly.trim(f)
    n = len(f) - 1
    t2 = n - real_count
    if t2 == 0:
        return []
    df = poly.derivative(f)
    work = bits + 40
    for attempt in range(8):
        with mpmath.mp.workprec(work + 20):
            try:
                approx = mpmath.polyroots(list(reversed([int(c) for c in f])),
                                          maxsteps=200 + 50 * attempt, extraprec=work)
            except mpmath.libmp.NoConvergence:
                work *= 2
                continue
            approx = sorted(approx, key=lambda z: abs(mpmath.im(z)))
            upper = [z for z in approx[real_count:] if mpmath.im(z) > 0]
            if len(upper) != t2 // 2:
                work *= 2
                continue
            disks = []
            for z in upper:
                zr = _dyadic(mpmath.re(z), work)
                zi = _dyadic(mpmath.im(z), work)
                r = _disk(f, df, n, zr, zi, work)
                disks.append((zr, zi, r))
        if _disks_ok(disks, bits):
            disks.sort()
            return [RootBox(zr - r, zr + r, zi - r, zi + r, r) for zr, zi, r in disks]
        work *= 2
    raise ArithmeticError("complex root certification failed to converge")


def _disks_ok(disks, bits):
    eps = Fraction(1, 2**bits)
    for i, (zr, zi, r) in enumerate(disks):
        if r is None or r > eps or r >= zi:
            return False
        for zr2, zi2, r2 in disks[i + 1:]:
            if (zr - zr2) ** 2 + (zi - zi2) ** 2 <= (r + r2) ** 2:
                return False
    return True


def isolate_roots(f, bits=64):
    """(real intervals, upper-half-plane disks) for a squarefree integer polynomial."""
    if not poly.is_squarefree(f):
        raise ValueError("root isolation requires a squarefree polynomial")
    real = isolate_real_roots(f, bits)
    real_boxes = [RootBox(a, b, Fraction(0), Fraction(0)) for a, b in real]
    return real_boxes, isolate_complex_roots(f, bits, len(real))


def all_root_boxes(f, bits=64):
    """Every root of a squarefree polynomial as a CBox (conjugates included)."""
    real, cplx = isolate_roots(f, bits)
    out = [r.box() for r in real]
    for r in cplx:
        b = r.box()
        out.extend([b, b.conj()])
    return out

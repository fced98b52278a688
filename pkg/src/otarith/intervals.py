"""Certified interval helpers on top of mpmath's outward-rounded ``iv`` context.

Real intervals are ``mpmath.iv.mpf`` values; complex values are rectangles
(``CBox``) built from two real intervals.  Exact endpoints are recovered as
Fractions so that reports never depend on binary-to-decimal rounding.
"""

from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv
from mpmath.libmp import to_rational


@contextmanager
def precision(bits):
    old = iv.prec
    iv.prec = max(int(bits), 53)
    try:
        yield
    finally:
        iv.prec = old


def from_fraction(x):
    """Tight interval containing the rational ``x``."""
    x = Fraction(x)
    if x.denominator == 1:
        return iv.mpf(x.numerator)
    return iv.mpf(x.numerator) / x.denominator


def from_bounds(lo, hi):
    a = from_fraction(lo)
    b = from_fraction(hi)
    return iv.mpf([a.a, b.b])


def bounds(x):
    """Exact (lo, hi) Fractions of an interval."""
    lo, hi = x._mpi_
    p, q = to_rational(lo)
    r, s = to_rational(hi)
    return Fraction(int(p), int(q)), Fraction(int(r), int(s))


def lower(x):
    return bounds(x)[0]


def upper(x):
    return bounds(x)[1]


def width(x):
    lo, hi = bounds(x)
    return hi - lo


def is_positive(x):
    return lower(x) > 0


def is_negative(x):
    return upper(x) < 0


def contains_zero(x):
    lo, hi = bounds(x)
    return lo <= 0 <= hi


def hull(x, y):
    lo = min(lower(x), lower(y))
    hi = max(upper(x), upper(y))
    return from_bounds(lo, hi)


def decimal_pair(x, digits=30):
    """Outward-rounded decimal strings ``(lo, hi)`` for an interval."""
    lo, hi = bounds(x)
    return _dec_floor(lo, digits), _dec_ceil(hi, digits)


def _dec_floor(q, digits):
    scale = 10 ** digits
    n = (q.numerator * scale) // q.denominator
    return _format(n, digits)


def _dec_ceil(q, digits):
    scale = 10 ** digits
    n = -((-q.numerator * scale) // q.denominator)
    return _format(n, digits)


def _format(n, digits):
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, 10 ** digits)
    frac_s = str(frac).rjust(digits, "0").rstrip("0")
    return f"{sign}{whole}" + (f".{frac_s}" if frac_s else "")


def max_one(x):
    """Interval image of ``max(1, x)``."""
    lo, hi = bounds(x)
    return from_bounds(max(lo, 1), max(hi, 1))


class CBox:
    """Complex rectangle ``re + i*im`` with interval components."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=None):
        self.re = re if not isinstance(re, (int, Fraction)) else from_fraction(re)
        if im is None:
            im = iv.mpf(0)
        self.im = im if not isinstance(im, (int, Fraction)) else from_fraction(im)

    def __add__(self, other):
        other = _box(other)
        return CBox(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _box(other)
        return CBox(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _box(other) - self

    def __neg__(self):
        return CBox(-self.re, -self.im)

    def __mul__(self, other):
        other = _box(other)
        return CBox(self.re * other.re - self.im * other.im,
                    self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def abs2(self):
        return self.re**2 + self.im**2

    def __abs__(self):
        return iv.sqrt(self.abs2())

    def log_abs(self):
        return iv.log(self.abs2()) / 2

    def conj(self):
        return CBox(self.re, -self.im)

    def overlaps(self, other):
        return _overlap(self.re, other.re) and _overlap(self.im, other.im)

    def __repr__(self):
        return f"CBox({self.re}, {self.im})"


def _overlap(x, y):
    a, b = bounds(x)
    c, d = bounds(y)
    return a <= d and c <= b


def _box(x):
    if isinstance(x, CBox):
        return x
    if isinstance(x, (int, Fraction)):
        return CBox(from_fraction(x))
    return CBox(x)


def horner(coeffs, z):
    """Evaluate a polynomial with rational ascending coefficients at a box."""
    acc = CBox(0)
    for c in reversed(coeffs):
        acc = acc * z + CBox(from_fraction(c))
    return acc


def real_horner(coeffs, x):
    acc = iv.mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + from_fraction(c)
    return acc

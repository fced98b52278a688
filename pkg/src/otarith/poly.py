"""Dense univariate polynomials with ascending coefficient lists.

``[c0, c1, ..., cn]`` is ``c0 + c1*x + ... + cn*x^n``.  Coefficients are ints or
Fractions; the zero polynomial is ``[]``.
"""

from fractions import Fraction
from functools import reduce
from math import gcd

from . import linalg


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(trim(p)) - 1


def lc(p):
    p = trim(p)
    return p[-1] if p else 0


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    return add(p, [-c for c in q])


def scale(p, c):
    return trim([c * a for a in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def divmod_poly(p, q):
    """Quotient and remainder over Q (exact integers kept when lc(q) is +-1)."""
    p = trim(p)
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    lead = q[-1]
    exact = lead in (1, -1) and all(isinstance(c, int) for c in p + q)
    r = list(p)
    dq = len(q) - 1
    quo = [0] * max(len(p) - dq, 0)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = r[k + dq]
        if c:
            c = c * lead if exact else Fraction(c) / lead
            quo[k] = c
            for i, b in enumerate(q):
                r[k + i] -= c * b
    return trim(quo), trim(r[:dq] if dq > 0 else [])


def rem(p, q):
    return divmod_poly(p, q)[1]


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p):
    return trim([i * c for i, c in enumerate(p)][1:])


def monic(p):
    p = trim(p)
    return [Fraction(c) / p[-1] for c in p]


def gcd_poly(p, q):
    """Monic gcd over Q."""
    p, q = trim(p), trim(q)
    while q:
        p, q = q, rem(p, q)
    return monic(p) if p else []


def primitive(p):
    """Integer primitive part with positive leading coefficient."""
    p = trim(p)
    if not p:
        return []
    den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(c).denominator for c in p), 1)
    ints = [int(Fraction(c) * den) for c in p]
    g = reduce(gcd, ints, 0)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def compose(p, q):
    """p(q(x))."""
    out = []
    for c in reversed(p):
        out = add(mul(out, q), [c])
    return out


def reverse(p):
    return trim(list(reversed(trim(p))))


def sylvester(p, q):
    p, q = trim(p), trim(q)
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    pd = list(reversed(p))
    qd = list(reversed(q))
    for i in range(n):
        rows.append([0] * i + pd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qd + [0] * (size - n - 1 - i))
    return rows


def resultant(p, q):
    """Res(p, q) as the determinant of the Sylvester matrix."""
    p, q = trim(p), trim(q)
    if not p or not q:
        return 0
    if len(p) == 1 and len(q) == 1:
        return 1
    if len(p) == 1:
        return p[0] ** (len(q) - 1)
    if len(q) == 1:
        return q[0] ** (len(p) - 1)
    return linalg.det(sylvester(p, q))


def discriminant(p):
    p = trim(p)
    n = len(p) - 1
    r = resultant(p, derivative(p))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    d = Fraction(sign * r, p[-1])
    return int(d) if d.denominator == 1 else d


def sturm_sequence(p):
    seq = [trim(p), derivative(p)]
    while seq[-1]:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(values):
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(seq, a, b):
    """Number of distinct real roots in the half-open interval (a, b]."""
    return _sign_changes([evaluate(s, a) for s in seq]) - _sign_changes([evaluate(s, b) for s in seq])


def root_bound(p):
    """Cauchy bound: every complex root has modulus < the returned integer."""
    p = trim(p)
    if len(p) <= 1:
        return 1
    lead = abs(p[-1])
    worst = max(Fraction(abs(c)) / lead for c in p[:-1])
    return 2 + int(worst)


def squarefree_decomposition(p):
    """Yun's algorithm: list of (factor, multiplicity) with primitive integer factors."""
    p = primitive(p)
    if len(p) <= 1:
        return []
    out = []
    a = p
    b = gcd_poly(a, derivative(a))
    c, _ = divmod_poly(a, b) if b else (a, [])
    d = sub(divmod_poly(derivative(a), b)[0], derivative(c))
    i = 1
    while degree(c) > 0:
        g = gcd_poly(c, d)
        if degree(g) > 0:
            out.append((primitive(g), i))
        c = divmod_poly(c, g)[0]
        d = sub(divmod_poly(d, g)[0], derivative(c))
        i += 1
    return out


def is_squarefree(p):
    return degree(gcd_poly(p, derivative(p))) == 0


# -- factorization (backed by sympy) ------------------------------------------

def _sympy_poly(p, modulus=None):
    import sympy

    x = sympy.Symbol("x")
    expr = sum(int(c) * x**i for i, c in enumerate(p))
    if modulus is None:
        return sympy.Poly(expr, x, domain="ZZ")
    return sympy.Poly(expr, x, modulus=modulus)


def factor_integer_poly(p):
    """Irreducible factors over Z as (primitive factor, multiplicity); content dropped."""
    _, factors = _sympy_poly(p).factor_list()
    out = []
    for f, e in factors:
        coeffs = [int(c) for c in reversed(f.all_coeffs())]
        out.append((primitive(coeffs), e))
    out.sort()
    return out


def is_irreducible(p):
    fs = factor_integer_poly(p)
    return len(fs) == 1 and fs[0][1] == 1


def factor_mod_p(p, prime):
    """Monic irreducible factors of p modulo a prime, as (factor, multiplicity)."""
    _, factors = _sympy_poly(p, modulus=prime).factor_list()
    out = []
    for f, e in factors:
        coeffs = [int(c) % prime for c in reversed(f.all_coeffs())]
        out.append((coeffs, e))
    out.sort(key=lambda fe: (len(fe[0]), fe[0]))
    return out


def reduce_mod_p(p, prime):
    return trim([c % prime for c in p])


def mul_mod_p(p, q, prime):
    return reduce_mod_p(mul(p, q), prime)


def divmod_mod_p(p, q, prime):
    p = reduce_mod_p(p, prime)
    q = reduce_mod_p(q, prime)
    inv = pow(q[-1], -1, prime)
    r = list(p)
    dq = len(q) - 1
    quo = [0] * max(len(p) - dq, 0)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = r[k + dq] * inv % prime
        quo[k] = c
        if c:
            for i, b in enumerate(q):
                r[k + i] = (r[k + i] - c * b) % prime
    return trim(quo), trim(r[:dq] if dq > 0 else [])


def gcd_mod_p(p, q, prime):
    p = reduce_mod_p(p, prime)
    q = reduce_mod_p(q, prime)
    while q:
        p, q = q, divmod_mod_p(p, q, prime)[1]
    if not p:
        return []
    inv = pow(p[-1], -1, prime)
    return [c * inv % prime for c in p]

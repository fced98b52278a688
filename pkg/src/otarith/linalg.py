"""Exact integer and rational matrix algebra.

Matrices are plain lists of rows.  Lattice elements are *rows*: a basis matrix
``B`` spans ``{x * B : x integer}`` and transforms act on the left.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NotSublattice, SingularLattice


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def copy(A):
    return [list(row) for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    if not A:
        return []
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def vecmat(v, A):
    """Row vector times matrix."""
    if not A:
        return []
    out = [0] * len(A[0])
    for c, row in zip(v, A):
        if c:
            for j, a in enumerate(row):
                out[j] += c * a
    return out


def diagonal(entries, rows=None, cols=None):
    rows = len(entries) if rows is None else rows
    cols = len(entries) if cols is None else cols
    D = [[0] * cols for _ in range(rows)]
    for i, d in enumerate(entries):
        D[i][i] = d
    return D


def _row_axpy(M, dst, src, q):
    # M[dst] -= q * M[src]
    if q:
        rs = M[src]
        rd = M[dst]
        for k in range(len(rd)):
            if rs[k]:
                rd[k] -= q * rs[k]


def hnf(A):
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U * A == H``.  ``H`` is in
    echelon form with positive pivots, entries above each pivot reduced into
    ``[0, pivot)``, and zero rows collected at the bottom.
    """
    m = len(A)
    if m == 0:
        return [], []
    n = len(A[0])
    H = copy(A)
    U = identity(m)
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            piv = None
            for i in range(r, m):
                if H[i][j] and (piv is None or abs(H[i][j]) < abs(H[piv][j])):
                    piv = i
            if piv is None:
                break
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                U[r], U[piv] = U[piv], U[r]
            p = H[r][j]
            done = True
            for i in range(r + 1, m):
                if H[i][j]:
                    q = H[i][j] // p
                    _row_axpy(H, i, r, q)
                    _row_axpy(U, i, r, q)
                    if H[i][j]:
                        done = False
            if done:
                break
        if piv is None and not H[r][j]:
            continue
        if H[r][j] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][j]
        for i in range(r):
            q = H[i][j] // p
            _row_axpy(H, i, r, q)
            _row_axpy(U, i, r, q)
        r += 1
    return H, U


def hnf_basis(A):
    """HNF with zero rows dropped (a basis of the row lattice)."""
    if not A:
        return []
    H, _ = hnf(A)
    return [row for row in H if any(row)]


def pivots(H):
    """Column index of the leading entry of each nonzero row of an echelon matrix."""
    out = []
    for row in H:
        for j, x in enumerate(row):
            if x:
                out.append(j)
                break
    return out


def hnf_reduce(v, H):
    """Canonical representative of ``v`` modulo the row lattice of HNF matrix ``H``."""
    v = list(v)
    for row, j in zip(H, pivots(H)):
        q = v[j] // row[j]
        if q:
            for k in range(j, len(v)):
                v[k] -= q * row[k]
    return v


@dataclass(frozen=True)
class SmithForm:
    divisors: tuple
    left: list
    right: list


def snf(A):
    """Smith normal form ``left * A * right == diagonal(divisors)``.

    Pivots are chosen by smallest absolute value to limit coefficient growth.
    ``divisors`` has ``min(rows, cols)`` entries; trailing zeros mark rank deficiency.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = copy(A)
    L = identity(m)
    R = identity(n)
    k = min(m, n)
    divisors = []
    for t in range(k):
        while True:
            best = None
            for i in range(t, m):
                row = D[i]
                for j in range(t, n):
                    if row[j] and (best is None or abs(row[j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            i, j = best
            if i != t:
                D[t], D[i] = D[i], D[t]
                L[t], L[i] = L[i], L[t]
            if j != t:
                for row in D:
                    row[t], row[j] = row[j], row[t]
                for row in R:
                    row[t], row[j] = row[j], row[t]
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // p
                    _row_axpy(D, i, t, q)
                    _row_axpy(L, i, t, q)
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // p
                    for row in D:
                        row[j] -= q * row[t]
                    for row in R:
                        row[j] -= q * row[t]
                    if D[t][j]:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # fold the offending row into the pivot row and retry
            _row_axpy(D, t, bad, -1)
            _row_axpy(L, t, bad, -1)
        if best is None:
            divisors.extend([0] * (k - t))
            break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            L[t] = [-x for x in L[t]]
        divisors.append(D[t][t])
    return SmithForm(tuple(divisors), L, R)


def det(A):
    """Exact determinant (Bareiss for integers, Gaussian elimination over Q otherwise)."""
    n = len(A)
    if n == 0:
        return 1
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    if any(isinstance(x, Fraction) and x.denominator != 1 for row in A for x in row):
        return _det_rational(A)
    M = [[int(x) for x in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        for i in range(k + 1, n):
            Mi = M[i]
            mik = Mi[k]
            Mk = M[k]
            for j in range(k + 1, n):
                Mi[j] = (pk * Mi[j] - mik * Mk[j]) // prev
        prev = pk
    return sign * M[n - 1][n - 1]


def _det_rational(A):
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M)
    d = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k]), None)
        if p is None:
            return Fraction(0)
        if p != k:
            M[k], M[p] = M[p], M[k]
            d = -d
        pk = M[k][k]
        d *= pk
        for i in range(k + 1, n):
            f = M[i][k] / pk
            if f:
                for j in range(k, n):
                    M[i][j] -= f * M[k][j]
    return d


def inverse(A):
    """Inverse of a square matrix over Q (entries returned as Fractions)."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k]), None)
        if p is None:
            raise SingularLattice("matrix is singular")
        M[k], M[p] = M[p], M[k]
        pk = M[k][k]
        M[k] = [x / pk for x in M[k]]
        for i in range(n):
            if i != k and M[i][k]:
                f = M[i][k]
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    return [row[n:] for row in M]


def rank(A):
    if not A:
        return 0
    if any(isinstance(x, Fraction) for row in A for x in row):
        M = [[Fraction(x) for x in row] for row in A]
        r = 0
        for j in range(len(M[0])):
            p = next((i for i in range(r, len(M)) if M[i][j]), None)
            if p is None:
                continue
            M[r], M[p] = M[p], M[r]
            for i in range(r + 1, len(M)):
                f = M[i][j] / M[r][j]
                if f:
                    M[i] = [a - f * b for a, b in zip(M[i], M[r])]
            r += 1
        return r
    return len(hnf_basis(A))


def solve_integral(A, b):
    """Integer ``x`` with ``x * A == b``, or ``None`` when no integral solution exists."""
    m = len(A)
    if m == 0:
        return None if any(b) else []
    H, U = hnf(A)
    res = list(b)
    y = [0] * m
    for r, j in enumerate(pivots(H)):
        if res[j] % H[r][j]:
            return None
        c = res[j] // H[r][j]
        y[r] = c
        if c:
            for k in range(j, len(res)):
                res[k] -= c * H[r][k]
    if any(res):
        return None
    x = vecmat(y, U)
    assert vecmat(x, A) == list(b)
    return x


def solve_rational(A, b):
    """Rational ``x`` with ``x * A == b`` for square nonsingular ``A``."""
    return vecmat([Fraction(v) for v in b], inverse(A))


def lattice_index(sub, sup):
    """Group index ``[span(sup) : span(sub)]`` of full-rank square lattices."""
    dsub = det(sub)
    dsup = det(sup)
    if dsub == 0 or dsup == 0:
        raise SingularLattice("lattice basis is rank deficient")
    for row in sub:
        if solve_integral(sup, row) is None:
            raise NotSublattice(f"row {row} is not in the super-lattice")
    q, r = divmod(abs(dsub), abs(dsup))
    assert r == 0
    return q


def left_kernel(A):
    """Integer basis (rows) of ``{x : x * A == 0}``."""
    if not A:
        return []
    H, U = hnf(A)
    return [U[i] for i, row in enumerate(H) if not any(row)]


def kernel_mod(A, moduli):
    """HNF basis of ``{x in Z^m : (x * A)_j == 0 mod moduli[j]}`` (full rank when all moduli > 0)."""
    m = len(A)
    if not moduli:
        return identity(m)
    B = copy(A) + diagonal(list(moduli))
    K = left_kernel(B)
    return hnf_basis([row[:m] for row in K]) if K else []


def lattice_contains(H, v):
    """Membership test for the row lattice of ``H``."""
    return solve_integral(H, v) is not None


def lattice_equal(A, B):
    return hnf_basis(A) == hnf_basis(B)


def content(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g

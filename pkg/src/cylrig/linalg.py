"""Exact rank and kernel over the rationals."""
from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

try:  # gmpy2 only speeds up big-integer products
    from gmpy2 import mpz as _Z
except ImportError:  # pragma: no cover
    _Z = int

# primes below 2^31 so that products fit in int64
_PRIMES = (2147483647, 2147483629, 2147483587)


def _as_fraction_rows(M):
    return [[x if isinstance(x, Fraction) else Fraction(x) for x in row] for row in M]


def integer_rows(M):
    """Scale every row by the lcm of its denominators (rank is unchanged)."""
    out = []
    for row in _as_fraction_rows(M):
        L = 1
        for x in row:
            L = lcm(L, x.denominator)
        out.append([x.numerator * (L // x.denominator) for x in row])
    return out


def rank_mod_p(A, p=_PRIMES[0]) -> int:
    """Rank of an integer matrix over GF(p); always <= the rational rank."""
    if not A or not A[0]:
        return 0
    M = np.array([[x % p for x in row] for row in A], dtype=np.int64)
    m, n = M.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = (M[r] * inv) % p
        below = M[r + 1:, c].copy()
        rows = np.nonzero(below)[0]
        if rows.size:
            idx = rows + r + 1
            M[idx] = (M[idx] - (below[rows, None] * M[r]) % p) % p
        r += 1
    return r


def bareiss_rank(A) -> int:
    """Fraction-free Gaussian elimination on an integer matrix."""
    M = [[_Z(x) for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    r, prev = 0, _Z(1)
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pr = M[r]
        pv = pr[c]
        for i in range(r + 1, m):
            row = M[i]
            a = row[c]
            if a:
                for j in range(c + 1, n):
                    row[j] = (pv * row[j] - a * pr[j]) // prev
            else:
                for j in range(c + 1, n):
                    row[j] = (pv * row[j]) // prev
            row[c] = 0
        prev = pv
        r += 1
    return r


def exact_rank(M) -> int:
    """Rank over Q. A modular rank that already equals min(m, n) is exact (it is a lower
    bound for the rational rank); otherwise fall back to fraction-free elimination."""
    M = getattr(M, "rows", M)
    if not M or not len(M[0]):
        return 0
    A = integer_rows(M)
    full = min(len(A), len(A[0]))
    if rank_mod_p(A) == full:
        return full
    return bareiss_rank(A)


def rref(M):
    """Reduced row echelon form with Fractions; returns (rows, pivot columns)."""
    R = _as_fraction_rows(getattr(M, "rows", M))
    m = len(R)
    n = len(R[0]) if m else 0
    pivots, r = [], 0
    for c in range(n):
        piv = next((i for i in range(r, m) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        pv = R[r][c]
        R[r] = [x / pv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R[:r], pivots


def kernel_basis(M, ncols=None):
    """Exact basis of {u : M u = 0} as lists of Fractions."""
    rows = getattr(M, "rows", M)
    n = len(rows[0]) if rows else (ncols or 0)
    R, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        u = [Fraction(0)] * n
        u[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            u[pc] = -row[f]
        basis.append(u)
    return basis


def matvec(M, u):
    rows = getattr(M, "rows", M)
    return [sum((a * b for a, b in zip(row, u) if a and b), Fraction(0)) for row in rows]

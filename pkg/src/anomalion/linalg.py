"""Exact linear algebra over Z_m: GF(p) elimination and Smith normal form.

Solves A x = b (mod m) for integer matrices.  Prime moduli go through
vectorized Gaussian elimination; composite moduli go through an integer
Smith normal form A = U^-1 D V^-1 so that the diagonal system d_i y_i = (U b)_i
can be solved residue by residue.
"""

from __future__ import annotations

from math import gcd

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def solve_mod_prime(A: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of A x = b mod p (p prime), or None."""
    A = np.asarray(A, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    rows, cols = A.shape
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1) % p
    pivot_cols = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(aug[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + nz[0]
        if pr != r:
            aug[[r, pr]] = aug[[pr, r]]
        inv = pow(int(aug[r, c]), p - 2, p) if p > 2 else int(aug[r, c])
        aug[r] = (aug[r] * inv) % p
        mask = np.nonzero(aug[:, c])[0]
        mask = mask[mask != r]
        if mask.size:
            aug[mask] = (aug[mask] - np.outer(aug[mask, c], aug[r])) % p
        pivot_cols.append(c)
        r += 1
    # rows below the rank must be consistent
    if np.any(aug[r:, cols] % p):
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivot_cols):
        x[c] = aug[i, cols]
    return x % p


def _exgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def smith_normal_form(A: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """(U, D, V) with U A V = D diagonal, U and V unimodular.

    Plain-int implementation; fine for the small coboundary matrices this
    package ever feeds it.
    """
    D = [list(map(int, row)) for row in A]
    rows = len(D)
    cols = len(D[0]) if rows else 0
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_combine(i, j, a, b, c, d):
        # (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j), same on U
        for M in (D, U):
            ri, rj = M[i], M[j]
            for k in range(len(ri)):
                ri[k], rj[k] = a * ri[k] + b * rj[k], c * ri[k] + d * rj[k]

    def col_combine(i, j, a, b, c, d):
        for M in (D, V):
            for row in M:
                row[i], row[j] = a * row[i] + b * row[j], c * row[i] + d * row[j]

    def clear_position(t):
        # plain elimination when the pivot divides (no pivot churn);
        # gcd mixing otherwise (strictly shrinks |pivot|), so this terminates
        while True:
            moved = False
            for i in range(t + 1, rows):
                e = D[i][t]
                if e == 0:
                    continue
                piv = D[t][t]
                if piv != 0 and e % piv == 0:
                    row_combine(t, i, 1, 0, -(e // piv), 1)
                else:
                    g, x, y = _exgcd(piv, e)
                    row_combine(t, i, x, y, -(e // g), piv // g)
                moved = True
            for j in range(t + 1, cols):
                e = D[t][j]
                if e == 0:
                    continue
                piv = D[t][t]
                if piv != 0 and e % piv == 0:
                    col_combine(t, j, 1, 0, -(e // piv), 1)
                else:
                    g, x, y = _exgcd(piv, e)
                    col_combine(t, j, x, y, -(e // g), piv // g)
                moved = True
            if not moved:
                return

    n = min(rows, cols)
    for t in range(n):
        # bring a nonzero entry to (t, t)
        pos = None
        for i in range(t, rows):
            for j in range(t, cols):
                if D[i][j] != 0:
                    pos = (i, j)
                    break
            if pos:
                break
        if pos is None:
            break
        i, j = pos
        if i != t:
            D[t], D[i] = D[i], D[t]
            U[t], U[i] = U[i], U[t]
        if j != t:
            for M in (D, V):
                for row in M:
                    row[t], row[j] = row[j], row[t]
        clear_position(t)
    # enforce divisibility d_t | d_{t+1}: fold the offender into row t and re-clear
    changed = True
    while changed:
        changed = False
        for t in range(n - 1):
            dt = D[t][t]
            if dt == 0:
                continue
            for i in range(t + 1, n):
                if D[i][i] % dt != 0:
                    row_combine(t, i, 1, 1, 0, 1)
                    clear_position(t)
                    changed = True
                    break
            if changed:
                break
    for t in range(n):
        if D[t][t] < 0:
            for row in D:
                row[t] = -row[t]
            for row in V:
                row[t] = -row[t]
    return U, D, V


def solve_mod_snf(A: list[list[int]], b: list[int], m: int) -> list[int] | None:
    """One solution of A x = b (mod m) via Smith normal form, or None."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U, D, V = smith_normal_form(A)
    c = [sum(U[i][k] * b[k] for k in range(rows)) % m for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        d = D[i][i] if i < min(rows, cols) else 0
        ci = c[i] % m
        if d == 0:
            if ci != 0:
                return None
            continue
        g = gcd(d, m)
        if ci % g != 0:
            return None
        mm = m // g
        inv = pow((d // g) % mm, -1, mm) if mm > 1 else 0
        y[i] = ((ci // g) * inv) % m if mm > 1 else 0
    x = [sum(V[i][k] * y[k] for k in range(cols)) % m for i in range(cols)]
    return x


def solve_mod(A, b, m: int):
    """One solution of A x = b (mod m), or None.  A: 2d array-like."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if A.size == 0:
        return np.zeros(A.shape[1], dtype=np.int64) if not np.any(b % m) else None
    if is_prime(m):
        return solve_mod_prime(A, b, m)
    x = solve_mod_snf(A.tolist(), b.tolist(), m)
    return None if x is None else np.asarray(x, dtype=np.int64)

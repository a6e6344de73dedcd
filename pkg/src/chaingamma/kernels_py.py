"""Pure-Python matrix kernels over gmpy2 complex numbers.

Same contract as the compiled extension ``_kernels``: matrices are lists of
lists of ``gmpy2.mpc`` and the working precision is passed explicitly in
bits.  Used as the fallback when the extension is not built.
"""

from __future__ import annotations

import gmpy2

BACKEND = "python"


def mat_mul(a, b, bits):
    with gmpy2.context(precision=bits):
        bt = list(zip(*b))
        zero = gmpy2.mpc(0)
        out = []
        for row in a:
            out.append([sum(map(gmpy2.mul, row, col), zero) for col in bt])
        return out


def lu_factor(a, bits):
    """In-place style LU with partial pivoting; returns (LU, piv).

    LU packs the unit-lower and upper factors; piv[i] is the row swapped
    into position i.  Raises ZeroDivisionError on an exactly zero pivot.
    """
    with gmpy2.context(precision=bits):
        n = len(a)
        lu = [list(row) for row in a]
        piv = list(range(n))
        for col in range(n):
            best, best_val = col, gmpy2.norm(lu[col][col])
            for r in range(col + 1, n):
                v = gmpy2.norm(lu[r][col])
                if v > best_val:
                    best, best_val = r, v
            if best_val == 0:
                raise ZeroDivisionError(f"zero pivot at column {col}")
            if best != col:
                lu[col], lu[best] = lu[best], lu[col]
                piv[col], piv[best] = piv[best], piv[col]
            inv_p = 1 / lu[col][col]
            for r in range(col + 1, n):
                factor = lu[r][col] * inv_p
                lu[r][col] = factor
                if factor != 0:
                    row_r, row_c = lu[r], lu[col]
                    for k in range(col + 1, n):
                        row_r[k] = row_r[k] - factor * row_c[k]
        return lu, piv


def lu_solve_mat(lu, piv, b, bits):
    """Solve A X = B given the packed LU factorization of A."""
    with gmpy2.context(precision=bits):
        n = len(lu)
        m = len(b[0])
        x = [list(b[piv[i]]) for i in range(n)]
        for i in range(n):
            row_i = x[i]
            for k in range(i):
                f = lu[i][k]
                if f != 0:
                    row_k = x[k]
                    for j in range(m):
                        row_i[j] = row_i[j] - f * row_k[j]
        for i in range(n - 1, -1, -1):
            row_i = x[i]
            for k in range(i + 1, n):
                f = lu[i][k]
                if f != 0:
                    row_k = x[k]
                    for j in range(m):
                        row_i[j] = row_i[j] - f * row_k[j]
            inv_p = 1 / lu[i][i]
            for j in range(m):
                row_i[j] = row_i[j] * inv_p
        return x

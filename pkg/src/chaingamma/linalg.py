"""Small complex-matrix helpers built on the kernel backend.

Everything here is O(n^2) bookkeeping around the O(n^3) kernels: scaling,
transposes, residual norms and the power-iteration estimate of the smallest
singular value used to certify invertibility.
"""

from __future__ import annotations

import gmpy2

from . import kernels
from .precision import PrecContext


def transpose(a):
    return [list(row) for row in zip(*a)]


def scale_rows(a, factors, ctx: PrecContext):
    with ctx.active():
        return [[f * x for x in row] for f, row in zip(factors, a)]


def scale_all(a, factor, ctx: PrecContext):
    with ctx.active():
        return [[factor * x for x in row] for row in a]


def sub_max_abs(a, b, ctx: PrecContext):
    """max |a_ij - b_ij|; b entries may be ints/Fractions or mpc."""
    with ctx.active():
        worst = gmpy2.mpfr(0)
        for ra, rb in zip(a, b):
            for x, y in zip(ra, rb):
                yy = y
                if not isinstance(yy, (gmpy2.mpc, gmpy2.mpfr, int)):
                    yy = gmpy2.mpfr(yy.numerator) / gmpy2.mpfr(yy.denominator)
                d = abs(x - yy)
                if d > worst:
                    worst = d
        return worst


def matvec(a, v, ctx: PrecContext):
    with ctx.active():
        zero = gmpy2.mpc(0)
        return [sum(map(gmpy2.mul, row, v), zero) for row in a]


def lu_solve_vec(lu, piv, v, ctx: PrecContext):
    col = [[x] for x in v]
    out = kernels.lu_solve_mat(lu, piv, col, ctx.bits)
    return [row[0] for row in out]


def lu_solve_conj_transpose_vec(lu, piv, v, ctx: PrecContext):
    """Solve A^H z = v given the packed LU of A (P A = L U)."""
    with ctx.active():
        n = len(lu)
        # U^H u = v (lower triangular with conjugated diagonal)
        u = [gmpy2.mpc(0)] * n
        for i in range(n):
            acc = v[i]
            for k in range(i):
                acc = acc - gmpy2.mpc(lu[k][i]).conjugate() * u[k]
            u[i] = acc / gmpy2.mpc(lu[i][i]).conjugate()
        # L^H w = u (unit upper triangular)
        w = [gmpy2.mpc(0)] * n
        for i in range(n - 1, -1, -1):
            acc = u[i]
            for k in range(i + 1, n):
                acc = acc - gmpy2.mpc(lu[k][i]).conjugate() * w[k]
            w[i] = acc
        # undo the row permutation: (P z)_i = w_i
        z = [gmpy2.mpc(0)] * n
        for i in range(n):
            z[piv[i]] = w[i]
        return z


def _vec_norm(v, ctx: PrecContext):
    with ctx.active():
        acc = gmpy2.mpfr(0)
        for x in v:
            acc += gmpy2.norm(x)
        return gmpy2.sqrt(acc)


def smallest_singular_value(a, ctx: PrecContext, iterations: int = 12):
    """Power-iteration estimate of sigma_min via the LU factorization.

    Iterates x -> (A^H)^{-1} A^{-1} x, whose dominant eigenvalue is
    1/sigma_min^2.  Raises ZeroDivisionError if LU hits an exactly zero
    pivot (the matrix is then singular at working precision).
    """
    n = len(a)
    lu, piv = kernels.lu_factor(a, ctx.bits)
    with ctx.active():
        x = [gmpy2.mpc(1 + (i % 3), (-1) ** i) for i in range(n)]
    lam = None
    for _ in range(iterations):
        y = lu_solve_vec(lu, piv, x, ctx)
        z = lu_solve_conj_transpose_vec(lu, piv, y, ctx)
        nz = _vec_norm(z, ctx)
        if nz == 0:
            return gmpy2.mpfr(0)
        with ctx.active():
            lam = nz
            x = [v / nz for v in z]
    with ctx.active():
        return 1 / gmpy2.sqrt(lam)

# cython: language_level=3
"""Compiled matrix kernels over gmpy2 complex numbers.

Same contract as ``kernels_py``; the inner loops call MPFR directly on the
mpfr fields of each mpc object, so no Python arithmetic dispatch happens in
the hot paths.  Results are fresh gmpy2.mpc objects at the requested
precision.
"""

from libc.stdlib cimport free, malloc
from gmpy2 cimport *

cdef extern from "mpfr.h":
    void mpfr_init2(mpfr_t x, mpfr_prec_t prec)
    void mpfr_clear(mpfr_t x)
    void mpfr_set_zero(mpfr_t x, int sign)
    void mpfr_swap(mpfr_t x, mpfr_t y)
    int mpfr_set(mpfr_t rop, mpfr_t op, mpfr_rnd_t rnd)
    int mpfr_mul(mpfr_t rop, mpfr_t op1, mpfr_t op2, mpfr_rnd_t rnd)
    int mpfr_sqr(mpfr_t rop, mpfr_t op, mpfr_rnd_t rnd)
    int mpfr_add(mpfr_t rop, mpfr_t op1, mpfr_t op2, mpfr_rnd_t rnd)
    int mpfr_sub(mpfr_t rop, mpfr_t op1, mpfr_t op2, mpfr_rnd_t rnd)
    int mpfr_div(mpfr_t rop, mpfr_t op1, mpfr_t op2, mpfr_rnd_t rnd)
    int mpfr_neg(mpfr_t rop, mpfr_t op, mpfr_rnd_t rnd)
    int mpfr_cmp(mpfr_t op1, mpfr_t op2)
    int mpfr_zero_p(mpfr_t op)

import_gmpy2()

BACKEND = "cython"


cdef inline void _acc_mul(mpfr_t tre, mpfr_t tim, mpfr_t t,
                          mpc_ptr x, mpc_ptr y) noexcept:
    # (tre, tim) += x * y using scratch t
    mpfr_mul(t, x.re, y.re, MPFR_RNDN)
    mpfr_add(tre, tre, t, MPFR_RNDN)
    mpfr_mul(t, x.im, y.im, MPFR_RNDN)
    mpfr_sub(tre, tre, t, MPFR_RNDN)
    mpfr_mul(t, x.re, y.im, MPFR_RNDN)
    mpfr_add(tim, tim, t, MPFR_RNDN)
    mpfr_mul(t, x.im, y.re, MPFR_RNDN)
    mpfr_add(tim, tim, t, MPFR_RNDN)


cdef inline void _sub_mul(mpc_ptr dst, mpfr_t t, mpc_ptr x, mpc_ptr y) noexcept:
    # dst -= x * y using scratch t
    mpfr_mul(t, x.re, y.re, MPFR_RNDN)
    mpfr_sub(dst.re, dst.re, t, MPFR_RNDN)
    mpfr_mul(t, x.im, y.im, MPFR_RNDN)
    mpfr_add(dst.re, dst.re, t, MPFR_RNDN)
    mpfr_mul(t, x.re, y.im, MPFR_RNDN)
    mpfr_sub(dst.im, dst.im, t, MPFR_RNDN)
    mpfr_mul(t, x.im, y.re, MPFR_RNDN)
    mpfr_sub(dst.im, dst.im, t, MPFR_RNDN)


cdef inline void _cdiv(mpc_ptr dst, mpc_ptr x, mpc_ptr y,
                       mpfr_t t1, mpfr_t t2, mpfr_t den) noexcept:
    # dst = x / y (naive formula; magnitudes here are far from over/underflow).
    # Alias-safe for dst == x and dst == y: x and y are fully consumed before
    # dst is written, except for the in-place mpfr_mul which MPFR permits.
    mpfr_sqr(den, y.re, MPFR_RNDN)
    mpfr_sqr(t1, y.im, MPFR_RNDN)
    mpfr_add(den, den, t1, MPFR_RNDN)
    mpfr_mul(t1, x.re, y.re, MPFR_RNDN)
    mpfr_mul(t2, x.im, y.im, MPFR_RNDN)
    mpfr_add(t1, t1, t2, MPFR_RNDN)
    mpfr_div(t1, t1, den, MPFR_RNDN)
    mpfr_mul(t2, x.im, y.re, MPFR_RNDN)
    mpfr_mul(dst.re, x.re, y.im, MPFR_RNDN)
    mpfr_sub(t2, t2, dst.re, MPFR_RNDN)
    mpfr_div(t2, t2, den, MPFR_RNDN)
    mpfr_set(dst.re, t1, MPFR_RNDN)
    mpfr_set(dst.im, t2, MPFR_RNDN)


cdef mpc_ptr* _collect(list rows, Py_ssize_t n, Py_ssize_t m) except NULL:
    cdef mpc_ptr* out = <mpc_ptr*> malloc(n * m * sizeof(mpc_ptr))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef mpc x
    cdef list row
    for i in range(n):
        row = <list> rows[i]
        for j in range(m):
            x = <mpc?> row[j]
            out[i * m + j] = <mpc_ptr> x.c
    return out


def mat_mul(list a, list b, long bits):
    cdef Py_ssize_t n = len(a), p = len(b), m = len(b[0])
    cdef Py_ssize_t i, j, k
    cdef mpc_ptr* pa = _collect(a, n, p)
    cdef mpc_ptr* pb
    try:
        pb = _collect(b, p, m)
    except Exception:
        free(pa)
        raise
    cdef mpfr_t t
    mpfr_init2(t, bits)
    cdef list out = [], crow
    cdef mpc acc
    try:
        for i in range(n):
            crow = []
            for j in range(m):
                acc = GMPy_MPC_New(bits, bits, NULL)
                mpfr_set_zero(acc.c.re, 1)
                mpfr_set_zero(acc.c.im, 1)
                for k in range(p):
                    _acc_mul(acc.c.re, acc.c.im, t, pa[i * p + k], pb[k * m + j])
                crow.append(acc)
            out.append(crow)
    finally:
        mpfr_clear(t)
        free(pa)
        free(pb)
    return out


cdef list _fresh_copy(list rows, Py_ssize_t n, Py_ssize_t m, long bits, mpc_ptr* ptrs):
    # copy of a matrix as new objects at the requested precision,
    # filling ptrs with the mpc pointers of the copies
    cdef list out = [], row, srow
    cdef mpc cell, src
    cdef Py_ssize_t i, j
    for i in range(n):
        srow = <list> rows[i]
        row = []
        for j in range(m):
            src = <mpc?> srow[j]
            cell = GMPy_MPC_New(bits, bits, NULL)
            mpfr_set(cell.c.re, src.c.re, MPFR_RNDN)
            mpfr_set(cell.c.im, src.c.im, MPFR_RNDN)
            ptrs[i * m + j] = <mpc_ptr> cell.c
            row.append(cell)
        out.append(row)
    return out


def lu_factor(list a, long bits):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t j, col, r, best
    cdef mpc_ptr* p = <mpc_ptr*> malloc(n * n * sizeof(mpc_ptr))
    if p == NULL:
        raise MemoryError()
    cdef list lu
    try:
        lu = _fresh_copy(a, n, n, bits, p)
    except Exception:
        free(p)
        raise
    piv = list(range(n))
    cdef mpfr_t t1, t2, den, best_norm, cur_norm
    mpfr_init2(t1, bits)
    mpfr_init2(t2, bits)
    mpfr_init2(den, bits)
    mpfr_init2(best_norm, bits)
    mpfr_init2(cur_norm, bits)
    cdef mpc_ptr pcell, ppiv, pfac, tmp
    try:
        for col in range(n):
            best = col
            pcell = p[col * n + col]
            mpfr_sqr(best_norm, pcell.re, MPFR_RNDN)
            mpfr_sqr(t1, pcell.im, MPFR_RNDN)
            mpfr_add(best_norm, best_norm, t1, MPFR_RNDN)
            for r in range(col + 1, n):
                pcell = p[r * n + col]
                mpfr_sqr(cur_norm, pcell.re, MPFR_RNDN)
                mpfr_sqr(t1, pcell.im, MPFR_RNDN)
                mpfr_add(cur_norm, cur_norm, t1, MPFR_RNDN)
                if mpfr_cmp(cur_norm, best_norm) > 0:
                    best = r
                    mpfr_set(best_norm, cur_norm, MPFR_RNDN)
            if mpfr_zero_p(best_norm):
                raise ZeroDivisionError(f"zero pivot at column {col}")
            if best != col:
                lu[col], lu[best] = lu[best], lu[col]
                piv[col], piv[best] = piv[best], piv[col]
                for j in range(n):
                    tmp = p[col * n + j]
                    p[col * n + j] = p[best * n + j]
                    p[best * n + j] = tmp
            ppiv = p[col * n + col]
            for r in range(col + 1, n):
                pfac = p[r * n + col]
                _cdiv(pfac, pfac, ppiv, t1, t2, den)
                if mpfr_zero_p(pfac.re) and mpfr_zero_p(pfac.im):
                    continue
                for j in range(col + 1, n):
                    _sub_mul(p[r * n + j], t1, pfac, p[col * n + j])
    finally:
        mpfr_clear(t1)
        mpfr_clear(t2)
        mpfr_clear(den)
        mpfr_clear(best_norm)
        mpfr_clear(cur_norm)
        free(p)
    return lu, piv


def lu_solve_mat(list lu, piv, list b, long bits):
    cdef Py_ssize_t n = len(lu)
    cdef Py_ssize_t m = len(b[0])
    cdef Py_ssize_t i, j, k
    cdef mpc_ptr* pl = <mpc_ptr*> malloc(n * n * sizeof(mpc_ptr))
    cdef mpc_ptr* px = <mpc_ptr*> malloc(n * m * sizeof(mpc_ptr))
    if pl == NULL or px == NULL:
        free(pl)
        free(px)
        raise MemoryError()
    cdef list permuted = [b[piv[i]] for i in range(n)]
    cdef list x
    cdef list row
    cdef mpc cell
    try:
        x = _fresh_copy(permuted, n, m, bits, px)
        for i in range(n):
            row = <list> lu[i]
            for j in range(n):
                cell = <mpc?> row[j]
                pl[i * n + j] = <mpc_ptr> cell.c
    except Exception:
        free(pl)
        free(px)
        raise
    cdef mpfr_t t1, t2, den
    mpfr_init2(t1, bits)
    mpfr_init2(t2, bits)
    mpfr_init2(den, bits)
    cdef mpc_ptr pfac, pdiag
    try:
        for i in range(n):
            for k in range(i):
                pfac = pl[i * n + k]
                if mpfr_zero_p(pfac.re) and mpfr_zero_p(pfac.im):
                    continue
                for j in range(m):
                    _sub_mul(px[i * m + j], t1, pfac, px[k * m + j])
        for i in range(n - 1, -1, -1):
            for k in range(i + 1, n):
                pfac = pl[i * n + k]
                if mpfr_zero_p(pfac.re) and mpfr_zero_p(pfac.im):
                    continue
                for j in range(m):
                    _sub_mul(px[i * m + j], t1, pfac, px[k * m + j])
            pdiag = pl[i * n + i]
            for j in range(m):
                _cdiv(px[i * m + j], px[i * m + j], pdiag, t1, t2, den)
    finally:
        mpfr_clear(t1)
        mpfr_clear(t2)
        mpfr_clear(den)
        free(pl)
        free(px)
    return x

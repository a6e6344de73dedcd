"""Exact integer/rational matrices attached to a chain.

All constructions here are exact: dense matrices over ``fractions.Fraction``
and integer polynomial/series arithmetic over Python ints.  Matrix rank is
the Milnor number; row/column labels are either the canonical sector order
(pairing and grading matrices) or plain positions 1..mu (K-lattice matrices).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .chain import ChainDescriptor, SectorIndex, exponents_for_kappa, index_levels, index_set, prime_index_level
from .errors import SizeLimitExceeded

DEFAULT_SIZE_LIMIT = 5000


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial; coeffs[i] is the coefficient of t^i."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for coef in reversed(self.coeffs):
            acc = acc * x + coef
        return acc


@dataclass(frozen=True)
class RationalMatrix:
    """Dense exact matrix; ``labels`` is None for position-labelled matrices."""

    entries: tuple[tuple[Fraction, ...], ...]
    labels: Optional[tuple[SectorIndex, ...]] = None

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.entries[ij[0]][ij[1]]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.entries)), self.labels)

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for row in self.entries for e in row)


def _check_size(c: ChainDescriptor, size_limit: Optional[int]) -> None:
    limit = DEFAULT_SIZE_LIMIT if size_limit is None else size_limit
    if c.mu > limit:
        raise SizeLimitExceeded(f"rank {c.mu} exceeds limit {limit}")


def _freeze(rows: Sequence[Sequence[Fraction]], labels=None) -> RationalMatrix:
    return RationalMatrix(tuple(tuple(r) for r in rows), labels)


# ---------------------------------------------------------------------------
# integer polynomial / power series helpers
# ---------------------------------------------------------------------------

def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def geometric_poly(step: int, terms: int) -> list[int]:
    """1 + t^step + ... + t^(step*(terms-1))."""
    out = [0] * (step * (terms - 1) + 1)
    for j in range(terms):
        out[j * step] = 1
    return out


def series_inverse(a: Sequence[int], n: int) -> list[int]:
    """Inverse of a power series with a[0] == 1, modulo t^n."""
    if a[0] != 1:
        raise ValueError("series inversion requires unit constant term")
    inv = [0] * n
    inv[0] = 1
    for m in range(1, n):
        acc = 0
        for k in range(1, min(m, len(a) - 1) + 1):
            acc += a[k] * inv[m - k]
        inv[m] = -acc
    return inv


@lru_cache(maxsize=512)
def _level_polynomials_cached(a: tuple[int, ...]) -> dict[int, tuple[int, ...]]:
    d = [1]
    for ai in a:
        d.append(d[-1] * ai)
    polys: dict[int, tuple[int, ...]] = {0: (1,)}
    if len(a) >= 1:
        polys[1] = (1, -1)
    for m in range(2, len(a) + 1):
        polys[m] = tuple(poly_mul(polys[m - 2], geometric_poly(d[m - 2], a[m - 2])))
    return polys


def level_polynomials(c: ChainDescriptor) -> dict[int, tuple[int, ...]]:
    """Coefficient lists of the numerator polynomials at every level.

    Level 0 is the constant 1, level 1 is 1 - t, and level m is the level
    (m-2) polynomial times the geometric sum with a_{m-1} terms of step
    d_{m-2}.  Every entry is an honest integer polynomial of degree equal to
    the Milnor number one level down.
    """
    return _level_polynomials_cached(c.a)


def p_polynomial(c: ChainDescriptor) -> IntPolynomial:
    """Numerator polynomial at the top level (integer coefficients)."""
    return IntPolynomial(tuple(level_polynomials(c)[c.n]))


def coefficient_fold(coeffs: Sequence[int], modulus: int, residue: int) -> int:
    """Sum the coefficients with exponent congruent to ``residue`` mod ``modulus``."""
    r = residue % modulus
    return sum(coeffs[e] for e in range(r, len(coeffs), modulus))


def x_value(c: ChainDescriptor, l: int) -> Fraction:
    """Discrete-Fourier value X_l, computed exactly by coefficient folding.

    Equals the sum of coefficients of the numerator polynomial at exponents
    congruent to -l modulo d_n, which is also the (i, j) entry of the Euler
    matrix whenever i <= j and l = i - j mod d_n.
    """
    p = level_polynomials(c)[c.n]
    return Fraction(coefficient_fold(p, c.d[c.n], -l))


def x_level_partial(c: ChainDescriptor, level: int, l: int) -> Fraction:
    """The level block of the X recursion: folding restricted to I'_level."""
    polys = level_polynomials(c)
    p = polys[level]
    full = coefficient_fold(p, c.d[level], -l)
    sub = coefficient_fold(p, c.d[level - 1], -l)
    return Fraction(full) - Fraction(sub, c.a[level - 1])


def inv_phi_series(c: ChainDescriptor, length: int) -> list[int]:
    """Power-series coefficients of the reciprocal Poincare-type product.

    Computed as the numerator polynomial times the geometric series in
    t^{d_n}, truncated at ``length`` coefficients.
    """
    p = level_polynomials(c)[c.n]
    dn = c.d[c.n]
    out = [0] * length
    for m in range(length):
        e = m
        acc = 0
        while e >= 0:
            if e < len(p):
                acc += p[e]
            e -= dn
        out[m] = acc
    return out


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def pairing_matrix(c: ChainDescriptor, size_limit: Optional[int] = None) -> RationalMatrix:
    """Residue-pairing matrix in the canonical sector order.

    Block structure: the level-m block is the anti-diagonal 1/d_m pairing of
    kappa with d_m - kappa, scaled by the product of -1/a_j over all higher
    levels j; the level-0 block is the scaled 1x1 identity.
    """
    _check_size(c, size_limit)
    labels = index_set(c)
    pos = {s: i for i, s in enumerate(labels)}
    rows = [[Fraction(0)] * len(labels) for _ in labels]
    scale = Fraction(1)
    for m in index_levels(c):
        if m == 0:
            i = pos[SectorIndex(0, 1)]
            rows[i][i] = scale
        else:
            for kappa in prime_index_level(c, m):
                i = pos[SectorIndex(m, kappa)]
                j = pos[SectorIndex(m, c.d[m] - kappa)]
                rows[i][j] = scale / c.d[m]
            scale *= Fraction(-1, c.a[m - 1])
    return _freeze(rows, tuple(labels))


def grading_entries(c: ChainDescriptor) -> list[Fraction]:
    """Diagonal of the grading matrix: exponent sums shifted by -level/2."""
    out = []
    for s in index_set(c):
        w = exponents_for_kappa(c, s)
        out.append(sum(w, Fraction(0)) - Fraction(s.level, 2))
    return out


def grading_matrix(c: ChainDescriptor, size_limit: Optional[int] = None) -> RationalMatrix:
    _check_size(c, size_limit)
    diag = grading_entries(c)
    mu = len(diag)
    rows = [[Fraction(0)] * mu for _ in range(mu)]
    for i, q in enumerate(diag):
        rows[i][i] = q
    return _freeze(rows, tuple(index_set(c)))


def euler_series(c: ChainDescriptor) -> list[int]:
    """First mu coefficients of the series defining the Euler matrix."""
    return inv_phi_series(c, c.mu)


def euler_matrix(c: ChainDescriptor, size_limit: Optional[int] = None) -> RationalMatrix:
    """Unipotent upper-triangular Euler matrix; entry (i, j) is ser[j - i]."""
    _check_size(c, size_limit)
    ser = euler_series(c)
    mu = c.mu
    rows = [
        [Fraction(ser[j - i]) if j >= i else Fraction(0) for j in range(mu)]
        for i in range(mu)
    ]
    return _freeze(rows)


def _int_matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    """Exact integer product; numpy int64 fast path with overflow guard."""
    n, p, m = len(a), len(b), len(b[0])
    max_a = max((abs(x) for row in a for x in row), default=0)
    max_b = max((abs(x) for row in b for x in row), default=0)
    if max_a and max_b and max_a * max_b * p < 2**62:
        prod = np.array(a, dtype=np.int64) @ np.array(b, dtype=np.int64)
        return prod.tolist()
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def serre_matrix(c: ChainDescriptor, size_limit: Optional[int] = None) -> RationalMatrix:
    """Integer matrix of the Serre action: inverse Euler matrix times its transpose."""
    _check_size(c, size_limit)
    ser = euler_series(c)
    inv = series_inverse(ser, c.mu)
    mu = c.mu
    chi_inv = [[inv[k - i] if k >= i else 0 for k in range(mu)] for i in range(mu)]
    chi_t = [[ser[k - j] if k >= j else 0 for j in range(mu)] for k in range(mu)]
    prod = _int_matmul(chi_inv, chi_t)
    return _freeze([[Fraction(x) for x in row] for row in prod])


def intersection_matrix(c: ChainDescriptor, size_limit: Optional[int] = None) -> RationalMatrix:
    """Symmetrized form: sign * (chi + (-1)^(n-1) chi^T) with the parity sign."""
    _check_size(c, size_limit)
    chi = euler_matrix(c, size_limit=size_limit)
    n = c.n
    sign = -1 if ((n - 1) * (n - 2) // 2) % 2 else 1
    eps = (-1) ** (n - 1)
    mu = c.mu
    rows = [
        [sign * (chi.entries[i][j] + eps * chi.entries[j][i]) for j in range(mu)]
        for i in range(mu)
    ]
    return _freeze(rows)


def intersection_sign(n: int) -> int:
    return -1 if ((n - 1) * (n - 2) // 2) % 2 else 1


def int_matrix_power(mat: list[list[int]], exponent: int) -> list[list[int]]:
    """Binary powering with exact integer arithmetic."""
    size = len(mat)
    result = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    base = [row[:] for row in mat]
    e = exponent
    while e:
        if e & 1:
            result = _int_matmul(result, base)
        e >>= 1
        if e:
            base = _int_matmul(base, base)
    return result

"""Arbitrary-precision transcendental objects of a chain.

Gamma products per sector, the recursively defined character matrix whose
columns play the role of Gamma-weighted Chern characters, orthant integrals
in closed Gamma form, and the central charges with their Gepner rotation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import gmpy2

from .chain import (
    ChainDescriptor,
    SectorIndex,
    exponents_for_kappa,
    index_levels,
    index_set,
    monomial_exponents,
    prime_index_level,
    psi,
    rational_weights,
)
from .errors import PrecisionUnachievable, SingularChGamma, SizeLimitExceeded, WrongLevel
from .exact import DEFAULT_SIZE_LIMIT
from .linalg import smallest_singular_value
from .precision import (
    PrecContext,
    e_of,
    gamma_rational,
    two_pi_i_power,
)


@dataclass(frozen=True)
class PrecComplexMatrix:
    """Dense complex matrix with its precision recorded in decimal digits."""

    entries: tuple[tuple[gmpy2.mpc, ...], ...]
    labels: Optional[tuple[SectorIndex, ...]]
    digits: int

    @property
    def size(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[gmpy2.mpc]]:
        return [list(r) for r in self.entries]


def _c_kappa_level(c: ChainDescriptor, level: int, kappa: int, ctx: PrecContext):
    w = exponents_for_kappa(c, SectorIndex(level, kappa))
    with ctx.active():
        value = gmpy2.mpc(1)
        for wl in w:
            value *= gamma_rational(1 - wl, ctx)
        m = (level + 1) // 2
        for i in range(1, m + 1):
            pick = 2 * i - 1 if level % 2 == 1 else 2 * i
            value *= 1 - e_of(w[pick - 1], ctx)
        return value


def c_kappa(c: ChainDescriptor, s: SectorIndex, ctx: PrecContext):
    """Gamma product times the root-of-unity product, for a top-level sector.

    Odd chains take the roots of unity at the odd exponent slots, even chains
    at the even slots.
    """
    s = SectorIndex(*s)
    if s.level != c.n:
        raise WrongLevel(f"expected level {c.n}, got {s.level}")
    return _c_kappa_level(c, c.n, s.kappa, ctx)


def _sector_constants(c: ChainDescriptor, ctx: PrecContext):
    """Per-sector column-independent data: (phase sign, first exponent, constant).

    The constant packs the recursion scale (2 pi i)^((n-m)/2) with the sector
    Gamma product; columns then differ only by phases.
    """
    out = []
    with ctx.active():
        for m in index_levels(c):
            scale = two_pi_i_power((c.n - m) // 2, ctx)
            if m == 0:
                out.append((0, Fraction(0), scale))
                continue
            sign = (-1) ** (m - 1)
            for kappa in prime_index_level(c, m):
                w1 = Fraction(kappa, c.d[m])  # first sector exponent at level m
                out.append((sign, w1, scale * _c_kappa_level(c, m, kappa, ctx)))
    return out


def _column_from_constants(consts, j: int, ctx: PrecContext):
    with ctx.active():
        col = []
        for sign, w1, const in consts:
            if sign == 0:
                col.append(const)
            else:
                col.append(const * e_of(sign * w1 * (j - 1), ctx))
        return col


def ch_gamma_column(c: ChainDescriptor, j: int, ctx: PrecContext):
    """Column j of the character matrix, in canonical sector order.

    Level-m entries are the sector constant times the phase
    e[(-1)^(m-1) w_{kappa,1} (j-1)], scaled by (2 pi i)^((n-m)/2) from the
    recursion; the level-0 entry is just that scale factor.
    """
    return _column_from_constants(_sector_constants(c, ctx), j, ctx)


def ch_gamma_matrix(
    c: ChainDescriptor,
    ctx: PrecContext,
    check_invertible: bool = True,
    size_limit: Optional[int] = None,
) -> PrecComplexMatrix:
    """Square character matrix with columns j = 1..mu.

    Invertibility is asserted numerically: the smallest singular value,
    estimated by power iteration on the inverse, must exceed the residual
    tolerance of the context.
    """
    limit = DEFAULT_SIZE_LIMIT if size_limit is None else size_limit
    if c.mu > limit:
        raise SizeLimitExceeded(f"rank {c.mu} exceeds limit {limit}")
    consts = _sector_constants(c, ctx)
    cols = [_column_from_constants(consts, j, ctx) for j in range(1, c.mu + 1)]
    rows = [tuple(cols[j][i] for j in range(c.mu)) for i in range(c.mu)]
    for row in rows:
        for z in row:
            if not (gmpy2.is_finite(z.real) and gmpy2.is_finite(z.imag)):
                raise SingularChGamma("non-finite entry in character matrix")
    mat = PrecComplexMatrix(tuple(rows), tuple(index_set(c)), ctx.digits)
    if check_invertible:
        try:
            sigma = smallest_singular_value(mat.rows(), ctx)
        except ZeroDivisionError as exc:
            raise SingularChGamma(str(exc)) from exc
        if sigma <= ctx.tau_mpfr():
            raise SingularChGamma(
                f"smallest singular value estimate {float(sigma):.3e} below tolerance"
            )
    return mat


def orthant_integral_closed_form(c: ChainDescriptor, k, ctx: PrecContext):
    """Closed form of the positive-orthant integral against the monomial x^k.

    Value: (1/d_n) * prod_l Gamma(w_{k,l}).  The dual rendering
    (1/d_n) * prod_l Gamma(1 - w_{d_n - psi(k), l}) is evaluated as well and
    the two must agree to working accuracy.
    """
    w = monomial_exponents(c, k)
    kappa = psi(c, k)
    dual_w = exponents_for_kappa(c, SectorIndex(c.n, c.d[c.n] - kappa))
    with ctx.active():
        dn = gmpy2.mpfr(c.d[c.n])
        primal = gmpy2.mpfr(1)
        for wl in w:
            primal *= gamma_rational(wl, ctx)
        primal /= dn
        dual = gmpy2.mpfr(1)
        for wl in dual_w:
            dual *= gamma_rational(1 - wl, ctx)
        dual /= dn
        spread = abs(primal - dual)
        if spread > abs(primal) * (gmpy2.mpfr(10) ** (12 - ctx.digits)):
            raise PrecisionUnachievable("closed-form dual renderings disagree")
    return primal


def gepner_step(c: ChainDescriptor) -> Fraction:
    """Phase step of the central charge in j: -1/d_n for odd n, +1/d_n for even."""
    return Fraction(-1 if c.n % 2 else 1, c.d[c.n])


def central_charge(c: ChainDescriptor, j: int, ctx: PrecContext):
    """Central charge of the j-th exceptional object.

    (2 pi i)^{-n} e[-(j-1)/d_n] prod_i (1 - e[-w_{2i-1}]) times the orthant
    integral for odd n; for even n the phase sign flips and the even-slot
    weights enter.
    """
    n = c.n
    w = rational_weights(c)
    m = (n + 1) // 2
    step = gepner_step(c)
    with ctx.active():
        value = gmpy2.mpc(1) / two_pi_i_power(n, ctx)
        value *= e_of(step * (j - 1), ctx)
        for i in range(1, m + 1):
            pick = 2 * i - 1 if n % 2 == 1 else 2 * i
            value *= 1 - e_of(-w[pick - 1], ctx)
        value *= orthant_integral_closed_form(c, (0,) * n, ctx)
    return value


def central_charges(c: ChainDescriptor, jmax: int, ctx: PrecContext):
    return [central_charge(c, j, ctx) for j in range(1, jmax + 1)]

"""Independent quadrature oracle for the orthant integrals (n <= 2).

The closed Gamma form is never used here, not even for inner integrals: the
two-dimensional case runs genuine nested numerical quadrature.  Truncation is
certified with elementary bounds only.

Bounds used (all integrands are positive, so every truncation error is a
positive quantity bounded above):

* ``Gamma(s) <= 6/s`` for ``0 < s <= 3``, since ``s Gamma(s) = Gamma(s+1)``
  and ``Gamma`` is at most ``Gamma(4) = 6`` on ``[1, 4]``.
* 1-D tail: for ``R >= 1``,
  ``int_R^oo x^k e^{-x^a} dx <= e^{-R^a/2} * 2^{(k+1)/a} * 6/(k+1)``.
* 2-D: substituting ``x1 = u^{a2}`` turns the integral into
  ``a2 * int du u^{a2(k1+1)-1} e^{-u^{a1 a2}} int dx2 x2^{k2} e^{-(u x2)^{a2}}``
  which has no endpoint singularity; the inner tail beyond
  ``x2 = T^{1/a2}/u`` and the outer tail beyond ``u = U`` are bounded with
  the 1-D estimates above.
"""

from __future__ import annotations

import math

from scipy import integrate

from .chain import ChainDescriptor, in_prime_basis
from .errors import DimensionTooLarge, MonomialOutOfRange, QuadratureNonConvergent

_MIN_REL_ERR = 1e-8


def _tail_bound_1d(a: int, k: int, r: float) -> float:
    s = (k + 1) / a
    return math.exp(-(r**a) / 2.0) * (2.0**s) * 6.0 / (k + 1)


def _quad_1d(a: int, k: int, target: float) -> float:
    f = lambda x: x**k * math.exp(-(x**a))
    coarse, _ = integrate.quad(f, 0.0, 2.0, limit=100)
    if coarse <= 0.0:
        raise QuadratureNonConvergent("coarse pass returned a nonpositive value")
    budget = target * coarse
    r = 1.0
    while _tail_bound_1d(a, k, r) > budget / 4.0:
        r *= 1.25
        if r > 1e4:
            raise QuadratureNonConvergent("truncation radius ran away")
    value, err = integrate.quad(f, 0.0, r, epsabs=budget / 4.0, epsrel=target / 4.0, limit=300)
    total_err = err + _tail_bound_1d(a, k, r)
    if total_err > target * value:
        raise QuadratureNonConvergent(
            f"certified error {total_err:.2e} exceeds target {target:.2e} * value"
        )
    return value


def _quad_2d(a1: int, a2: int, k1: int, k2: int, target: float) -> float:
    big_a = a1 * a2
    qu = a2 * (k1 + 1) - 1  # u-exponent after substitution; >= 1, no singularity
    e_strip = qu - (k2 + 1)  # >= 0 because k2 <= a2 - 2

    def integrand(x2: float, u: float) -> float:
        return a2 * u**qu * x2**k2 * math.exp(-(u**big_a) - (u * x2) ** a2)

    def run(u_max: float, t_cap: float, epsabs: float, epsrel: float):
        t_root = t_cap ** (1.0 / a2)
        upper = lambda u: t_root / u if u > 0 else t_root * 1e12
        return integrate.dblquad(
            integrand, 0.0, u_max, 0.0, upper, epsabs=epsabs, epsrel=epsrel
        )

    coarse, _ = run(2.5, 40.0, 1e-6, 1e-6)
    if coarse <= 0.0:
        raise QuadratureNonConvergent("coarse pass returned a nonpositive value")
    budget = target * coarse

    # outer truncation: a2 * 6/(k2+1) * tail_1d(big_a, qu - k2 - 1, U) <= budget/6
    u_max = 1.0
    outer_const = a2 * 6.0 / (k2 + 1)
    while outer_const * _tail_bound_1d(big_a, qu - k2 - 1, u_max) > budget / 6.0:
        u_max *= 1.2
        if u_max > 1e3:
            raise QuadratureNonConvergent("outer truncation radius ran away")

    # inner truncation: a2 * e^{-T/2} 2^{s2} (6/(k2+1)) * U^{e+1}/(e+1) <= budget/6
    s2 = (k2 + 1) / a2
    inner_const = a2 * (2.0**s2) * 6.0 / (k2 + 1) * u_max ** (e_strip + 1) / (e_strip + 1)
    t_cap = 2.0 * (math.log(max(inner_const, 1.0)) + math.log(6.0 / budget)) + 10.0
    t_cap = max(t_cap, 30.0)

    value, err = run(u_max, t_cap, budget / 6.0, target / 6.0)
    total_err = (
        err
        + outer_const * _tail_bound_1d(big_a, qu - k2 - 1, u_max)
        + inner_const * math.exp(-t_cap / 2.0)
    )
    if total_err > target * value:
        raise QuadratureNonConvergent(
            f"certified error {total_err:.2e} exceeds target {target:.2e} * value"
        )
    return value


def orthant_integral_quadrature(c: ChainDescriptor, k, target_rel_err: float) -> float:
    """Numerical value of the orthant integral against x^k, with certified
    truncation, to the requested relative error.  Only n <= 2 is supported."""
    if c.n > 2:
        raise DimensionTooLarge("quadrature oracle supports n <= 2 only")
    if target_rel_err < _MIN_REL_ERR:
        raise ValueError(f"target_rel_err must be >= {_MIN_REL_ERR}")
    k = tuple(int(x) for x in k)
    if not in_prime_basis(c, k):
        raise MonomialOutOfRange(f"{k} is not in the reduced basis of {c}")
    if c.n == 1:
        return _quad_1d(c.a[0], k[0], target_rel_err)
    return _quad_2d(c.a[0], c.a[1], k[0], k[1], target_rel_err)


def power_exp_integral_quadrature(a: int, k: int, target_rel_err: float) -> float:
    """One-dimensional oracle for integrals of x^k e^{-x^a} over [0, oo)."""
    if target_rel_err < _MIN_REL_ERR:
        raise ValueError(f"target_rel_err must be >= {_MIN_REL_ERR}")
    if a < 2 or k < 0:
        raise ValueError("need a >= 2 and k >= 0")
    return _quad_1d(a, k, target_rel_err)

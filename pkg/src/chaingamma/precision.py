"""Arbitrary-precision context and scalar helpers on top of gmpy2/MPFR.

Every numeric routine takes an explicit :class:`PrecContext`; nothing relies
on the ambient thread context outside the ``with`` blocks opened here, so
concurrent evaluation with distinct contexts is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2

from .errors import PrecisionUnachievable

_LOG2_10 = math.log2(10)
_GUARD_BITS = 24


@dataclass(frozen=True)
class PrecContext:
    """Working precision in decimal digits plus the derived tolerances.

    ``tau`` (the residual acceptance threshold) keeps 16 guard digits below
    the working precision; the Gamma contract keeps 8.
    """

    digits: int = 128

    def __post_init__(self) -> None:
        if self.digits < 32:
            raise ValueError("precision must be at least 32 digits")

    @property
    def bits(self) -> int:
        return math.ceil(self.digits * _LOG2_10) + _GUARD_BITS

    @property
    def tau(self) -> Fraction:
        return Fraction(1, 10 ** (self.digits - 16))

    def tau_mpfr(self):
        with self.active():
            return gmpy2.mpfr(10) ** (16 - self.digits)

    def gamma_rel_err(self):
        with self.active():
            return gmpy2.mpfr(10) ** (8 - self.digits)

    def active(self, extra_bits: int = 0):
        return gmpy2.context(precision=self.bits + extra_bits)


def to_mpfr(q, ctx: PrecContext):
    """Round an int/Fraction/float to the working precision."""
    with ctx.active():
        if isinstance(q, Fraction):
            return gmpy2.mpfr(q.numerator) / gmpy2.mpfr(q.denominator)
        return gmpy2.mpfr(q)


def pi_value(ctx: PrecContext):
    with ctx.active():
        return gmpy2.const_pi()


def two_pi_power_half(n: int, ctx: PrecContext):
    """(2*pi)^(n/2) as a positive real (exact integer power for even n)."""
    with ctx.active():
        two_pi = 2 * gmpy2.const_pi()
        if n % 2 == 0:
            return two_pi ** (n // 2)
        return gmpy2.sqrt(two_pi) ** n


def two_pi_i_power(k: int, ctx: PrecContext):
    """(2*pi*i)^k as an mpc."""
    with ctx.active():
        return gmpy2.mpc(0, 2 * gmpy2.const_pi()) ** k


@lru_cache(maxsize=100_000)
def _phase_cached(num: int, den: int, bits: int):
    with gmpy2.context(precision=bits + 32):
        theta = 2 * gmpy2.const_pi() * gmpy2.mpfr(num) / gmpy2.mpfr(den)
        s, c = gmpy2.sin_cos(theta)
    return gmpy2.mpc(c, s, precision=bits)


def e_of(q: Fraction, ctx: PrecContext):
    """exp(2*pi*i*q) for an exact rational q, reduced mod 1 first.

    The angle is formed at elevated precision so no accuracy is lost for
    rationals with large denominators.
    """
    q = Fraction(q) % 1
    return _phase_cached(q.numerator, q.denominator, ctx.bits)


@lru_cache(maxsize=50_000)
def _gamma_cached(num: int, den: int, bits: int):
    with gmpy2.context(precision=bits):
        return gmpy2.gamma(gmpy2.mpfr(num) / gmpy2.mpfr(den))


def gamma_rational(q: Fraction, ctx: PrecContext, self_check: bool = True):
    """Gamma at an exact rational argument in (0, 2).

    For arguments strictly inside (0, 1) the value is re-checked against the
    reflection identity gamma(q) * gamma(1-q) * sin(pi q) / pi = 1; failure
    raises :class:`PrecisionUnachievable`.
    """
    q = Fraction(q)
    if not 0 < q < 2:
        raise ValueError(f"gamma_rational requires 0 < q < 2, got {q}")
    if q == 1:
        with ctx.active():
            return gmpy2.mpfr(1)
    value = _gamma_cached(q.numerator, q.denominator, ctx.bits)
    if self_check and 0 < q < 1:
        other = _gamma_cached((1 - q).numerator, (1 - q).denominator, ctx.bits)
        with ctx.active():
            x = gmpy2.mpfr(q.numerator) / gmpy2.mpfr(q.denominator)
            product = value * other * gmpy2.sin(gmpy2.const_pi() * x) / gmpy2.const_pi()
            err = abs(product - 1)
        if err > ctx.gamma_rel_err():
            raise PrecisionUnachievable(
                f"reflection self-test failed for q={q}: |err|={float(err):.3e}"
            )
    return value


def eval_int_poly_at_phase(coeffs, q: Fraction, ctx: PrecContext):
    """Evaluate an integer-coefficient polynomial at exp(2*pi*i*q) by Horner."""
    z = e_of(q, ctx)
    with ctx.active():
        acc = gmpy2.mpc(0)
        for coef in reversed(tuple(coeffs)):
            acc = acc * z + coef
        return acc


def mpfr_decimal(x, digits: int) -> str:
    """Deterministic decimal string with ``digits`` significant digits."""
    if gmpy2.is_nan(x):
        return "nan"
    if gmpy2.is_infinite(x):
        return "-inf" if x < 0 else "inf"
    if x == 0:
        return "0"
    mant, exp, _ = gmpy2.digits(x, 10, digits)
    sign = ""
    if mant.startswith("-"):
        sign, mant = "-", mant[1:]
    mant = mant.rstrip("0") or "0"
    head, tail = mant[0], mant[1:]
    body = f"{head}.{tail}" if tail else head
    return f"{sign}{body}e{exp - 1:+d}"


def mpfr_from_decimal(text: str, ctx: PrecContext):
    with ctx.active():
        return gmpy2.mpfr(text)


def mpc_to_json(z, digits: int) -> dict:
    return {
        "re": mpfr_decimal(z.real, digits),
        "im": mpfr_decimal(z.imag, digits),
        "digits": digits,
    }


def mpc_from_json(obj: dict, ctx: PrecContext):
    with ctx.active():
        return gmpy2.mpc(gmpy2.mpfr(obj["re"]), gmpy2.mpfr(obj["im"]))

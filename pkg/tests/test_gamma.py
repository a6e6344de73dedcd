from fractions import Fraction

import gmpy2
import mpmath
import pytest

from chaingamma import (
    IndexNotInSet,
    WrongLevel,
    c_kappa,
    central_charge,
    ch_gamma_column,
    ch_gamma_matrix,
    gepner_step,
    new_chain,
    orthant_integral_closed_form,
)
from chaingamma.chain import SectorIndex
from chaingamma.precision import (
    PrecContext,
    e_of,
    gamma_rational,
    mpc_from_json,
    mpc_to_json,
    mpfr_decimal,
    two_pi_i_power,
)
from conftest import small_corpus

F = Fraction


def mp_gamma(q, dps=60):
    """Independent Gamma oracle (mpmath, different implementation)."""
    with mpmath.workdps(dps):
        return mpmath.gamma(mpmath.mpf(q.numerator) / q.denominator)


def close(x, y, tol):
    return abs(float(x) - float(y)) <= tol * max(1.0, abs(float(y)))


def test_gamma_rational_examples(ctx128):
    assert gamma_rational(F(1), ctx128) == 1
    sqrt_pi = gmpy2.sqrt(gmpy2.const_pi(precision=ctx128.bits))
    with ctx128.active():
        assert abs(gamma_rational(F(1, 2), ctx128) - sqrt_pi) < gmpy2.mpfr(10) ** -120
    # frozen via the mpmath oracle
    assert close(gamma_rational(F(1, 4), ctx128), 3.625609908221908311930685, 1e-15)
    assert close(gamma_rational(F(3, 4), ctx128), 1.225416702465177645129098, 1e-15)


def test_gamma_rational_against_mpmath(ctx128):
    for q in (F(1, 3), F(2, 3), F(5, 7), F(1, 128), F(127, 128), F(3, 2), F(1, 2)):
        ours = float(gamma_rational(q, ctx128))
        theirs = float(mp_gamma(q))
        assert abs(ours - theirs) <= 1e-14 * abs(theirs)


def test_gamma_rational_domain(ctx128):
    with pytest.raises(ValueError):
        gamma_rational(F(0), ctx128)
    with pytest.raises(ValueError):
        gamma_rational(F(2), ctx128)
    with pytest.raises(ValueError):
        gamma_rational(F(-1, 2), ctx128)


def test_e_of_values(ctx128):
    with ctx128.active():
        tol = gmpy2.mpfr(10) ** -120
        assert abs(e_of(F(1, 2), ctx128) + 1) < tol
        assert abs(e_of(F(1, 4), ctx128) - gmpy2.mpc(0, 1)) < tol
        assert abs(abs(e_of(F(3, 7), ctx128)) - 1) < tol
        assert abs(e_of(F(9, 4), ctx128) - e_of(F(1, 4), ctx128)) == 0


def test_c_kappa_examples(ctx128):
    with ctx128.active():
        tol = gmpy2.mpfr(10) ** -115
        two_sqrt_pi = 2 * gmpy2.sqrt(gmpy2.const_pi())
        v = c_kappa(new_chain([2]), SectorIndex(1, 1), ctx128)
        assert abs(v - two_sqrt_pi) < tol

        # Gamma(2/3) * (3/2 - sqrt(3)/2 i)
        v = c_kappa(new_chain([3]), SectorIndex(1, 1), ctx128)
        g23 = gamma_rational(F(2, 3), ctx128)
        expected = g23 * gmpy2.mpc(gmpy2.mpfr(3) / 2, -gmpy2.sqrt(gmpy2.mpfr(3)) / 2)
        assert abs(v - expected) < tol

        # even case picks the second exponent: 2 * Gamma(3/4) * sqrt(pi)
        v = c_kappa(new_chain([2, 2]), SectorIndex(2, 1), ctx128)
        expected = 2 * gamma_rational(F(3, 4), ctx128) * gmpy2.sqrt(gmpy2.const_pi())
        assert abs(v - expected) < tol


def test_c_kappa_errors(ctx128):
    c = new_chain([2, 2])
    with pytest.raises(WrongLevel):
        c_kappa(c, SectorIndex(0, 1), ctx128)
    with pytest.raises(IndexNotInSet):
        c_kappa(c, SectorIndex(2, 2), ctx128)


def test_ch_gamma_column_examples(ctx128):
    with ctx128.active():
        tol = gmpy2.mpfr(10) ** -115
        two_sqrt_pi = 2 * gmpy2.sqrt(gmpy2.const_pi())
        col = ch_gamma_column(new_chain([2]), 1, ctx128)
        assert len(col) == 1 and abs(col[0] - two_sqrt_pi) < tol
        col = ch_gamma_column(new_chain([2]), 2, ctx128)
        assert abs(col[0] + two_sqrt_pi) < tol
        # level-0 entry of the first column is 2*pi*i
        col = ch_gamma_column(new_chain([2, 2]), 1, ctx128)
        assert abs(col[2] - gmpy2.mpc(0, 2 * gmpy2.const_pi())) < tol


def test_ch_gamma_column_periodicity(ctx128):
    with ctx128.active():
        tol = ctx128.tau_mpfr()
        for c in (new_chain([3]), new_chain([2, 3]), new_chain([2, 2, 2])):
            base = ch_gamma_column(c, 2, ctx128)
            shifted = ch_gamma_column(c, 2 + c.d[c.n], ctx128)
            assert max(abs(x - y) for x, y in zip(base, shifted)) <= tol
            negative = ch_gamma_column(c, 2 - c.d[c.n], ctx128)
            assert max(abs(x - y) for x, y in zip(base, negative)) <= tol


def test_ch_gamma_matrix_shape_and_invertibility(ctx128):
    c = new_chain([3, 2])
    mat = ch_gamma_matrix(c, ctx128)
    assert mat.size == c.mu
    assert mat.digits == 128
    assert [s.level for s in mat.labels] == [2, 2, 2, 0]
    for row in mat.entries:
        for z in row:
            assert gmpy2.is_finite(z.real) and gmpy2.is_finite(z.imag)


def test_orthant_integral_examples(ctx128):
    # sqrt(pi)/2, the classic half-Gaussian
    v = orthant_integral_closed_form(new_chain([2]), (0,), ctx128)
    assert close(v, 0.8862269254527580136490837, 1e-18)
    # (1/4) Gamma(1/4) Gamma(1/2), frozen from the mpmath oracle
    v = orthant_integral_closed_form(new_chain([2, 2]), (0, 0), ctx128)
    assert close(v, 1.6065565609272789806136299, 1e-18)
    # (1/3) Gamma(2/3), frozen from the mpmath oracle
    v = orthant_integral_closed_form(new_chain([3]), (1,), ctx128)
    assert close(v, 0.4513726464754668056484293, 1e-18)


def test_orthant_integral_matches_mpmath_product(ctx128):
    from chaingamma.chain import monomial_basis, monomial_exponents

    for c in (new_chain([4, 3]), new_chain([5])):
        _, prime = monomial_basis(c)
        for k in prime:
            w = monomial_exponents(c, k)
            with mpmath.workdps(50):
                expected = mpmath.mpf(1) / c.d[c.n]
                for wl in w:
                    expected *= mpmath.gamma(mpmath.mpf(wl.numerator) / wl.denominator)
            ours = float(orthant_integral_closed_form(c, k, ctx128))
            assert abs(ours - float(expected)) <= 1e-14 * float(expected)


def test_central_charge_examples(ctx128):
    with ctx128.active():
        c = new_chain([2])
        z1 = central_charge(c, 1, ctx128)
        z2 = central_charge(c, 2, ctx128)
        # sqrt(pi)/(2 pi i): modulus sqrt(pi)/(2 pi), ratio between steps is -1
        target = gmpy2.sqrt(gmpy2.const_pi()) / (2 * gmpy2.const_pi())
        tol = gmpy2.mpfr(10) ** -115
        assert abs(abs(z1) - target) < tol
        assert abs(z1 + z2) < tol

        c = new_chain([2, 2])
        z = central_charge(c, 1, ctx128)
        expected = (
            (1 / two_pi_i_power(2, ctx128))
            * (1 - e_of(F(-1, 2), ctx128))
            * orthant_integral_closed_form(c, (0, 0), ctx128)
        )
        assert abs(z - expected) < tol


def test_gepner_rotation_small_corpus(ctx128):
    with ctx128.active():
        tau = ctx128.tau_mpfr()
        for c in small_corpus(mu_cap=12):
            step = gepner_step(c)
            assert step == F(-1 if c.n % 2 else 1, c.d[c.n])
            charges = [central_charge(c, j, ctx128) for j in range(1, 5)]
            rot = e_of(step, ctx128)
            for prev, cur in zip(charges, charges[1:]):
                assert abs(cur - rot * prev) <= tau
                assert abs(abs(cur) - abs(charges[0])) <= tau


def test_complex_json_roundtrip(ctx128):
    with ctx128.active():
        z = gmpy2.mpc(gmpy2.sqrt(gmpy2.mpfr(2)), -gmpy2.const_pi())
    blob = mpc_to_json(z, 128)
    assert blob["digits"] == 128
    back = mpc_from_json(blob, ctx128)
    with ctx128.active():
        assert abs(back - z) <= gmpy2.mpfr(10) ** -120


def test_mpfr_decimal_forms():
    with PrecContext(64).active():
        assert mpfr_decimal(gmpy2.mpfr(0), 10) == "0"
        assert mpfr_decimal(gmpy2.mpfr(1), 5) == "1e+0"
        assert mpfr_decimal(gmpy2.mpfr("-0.25"), 5) == "-2.5e-1"

from fractions import Fraction

import pytest

from chaingamma import SizeLimitExceeded, new_chain
from chaingamma.exact import (
    euler_matrix,
    euler_series,
    geometric_poly,
    grading_matrix,
    intersection_matrix,
    int_matrix_power,
    level_polynomials,
    p_polynomial,
    pairing_matrix,
    poly_mul,
    serre_matrix,
    series_inverse,
    x_value,
)
from chaingamma.lattice import int_determinant
from conftest import corpus, small_corpus

F = Fraction


def frac_rows(rows):
    return tuple(tuple(F(x) for x in row) for row in rows)


# --- numerator polynomial -------------------------------------------------

def test_p_polynomial_examples():
    assert p_polynomial(new_chain([3])).coeffs == (1, -1)
    # (1 - t^2)/(1 - t) = 1 + t
    assert p_polynomial(new_chain([2, 2])).coeffs == (1, 1)
    # (1 - t)(1 + t^2)
    assert p_polynomial(new_chain([2, 2, 2])).coeffs == (1, -1, 1, -1)


def test_p_polynomial_product_identity():
    # oracle: p_n times the product of the "minus" factors equals the product
    # of the "plus" factors, as honest integer polynomials
    for c in corpus(mu_cap=120):
        n = c.n
        p = list(p_polynomial(c).coeffs)
        lhs = p
        rhs = [1]
        for i in range(1, n + 1):
            factor = [0] * (c.d[i - 1] + 1)
            factor[0] = 1
            factor[c.d[i - 1]] = -1
            if (-1) ** (n - i) == -1:
                lhs = poly_mul(lhs, factor)
            else:
                rhs = poly_mul(rhs, factor)
        # strip trailing zeros before comparing
        while lhs and lhs[-1] == 0:
            lhs.pop()
        while rhs and rhs[-1] == 0:
            rhs.pop()
        assert lhs == rhs


def test_p_polynomial_degree():
    # degree equals the Milnor number one level down
    for c in corpus(mu_cap=120):
        lower_mu = 1 if c.n == 1 else new_chain(c.a[: c.n - 1]).mu
        assert p_polynomial(c).degree == lower_mu


def test_series_inverse_roundtrip():
    ser = euler_series(new_chain([3, 3]))
    inv = series_inverse(ser, len(ser))
    prod = poly_mul(ser, inv)[: len(ser)]
    assert prod == [1] + [0] * (len(ser) - 1)


def test_geometric_poly():
    assert geometric_poly(2, 3) == [1, 0, 1, 0, 1]


# --- Euler matrix ----------------------------------------------------------

def test_euler_matrix_examples():
    assert euler_matrix(new_chain([2])).entries == frac_rows([[1]])
    assert euler_matrix(new_chain([3])).entries == frac_rows([[1, -1], [0, 1]])
    assert euler_matrix(new_chain([2, 2])).entries == frac_rows(
        [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
    )


def test_euler_matrix_multiply_back():
    # oracle: the series times every product factor reduces to 1 mod t^mu
    for c in small_corpus():
        ser = list(euler_series(c))
        n = c.n
        work = ser
        for i in range(0, n + 1):
            step = c.d[i]
            if (-1) ** (n - i) == 1:
                # multiply by (1 - t^step)
                nxt = list(work)
                for deg in range(step, len(work)):
                    nxt[deg] -= work[deg - step]
                work = nxt
            else:
                work = poly_mul(work, geometric_poly(step, 1 + (len(work) - 1) // step))[
                    : len(work)
                ]
        assert work == [1] + [0] * (len(work) - 1)


def test_euler_unipotent_corpus():
    for c in corpus(mu_cap=200):
        chi = euler_matrix(c).entries
        mu = c.mu
        assert all(chi[i][i] == 1 for i in range(mu))
        assert all(chi[i][j] == 0 for i in range(mu) for j in range(i))
        assert all(x.denominator == 1 for row in chi for x in row)


def test_size_limit():
    with pytest.raises(SizeLimitExceeded):
        euler_matrix(new_chain([2, 2]), size_limit=2)
    with pytest.raises(SizeLimitExceeded):
        pairing_matrix(new_chain([4, 4]), size_limit=5)


# --- Serre matrix ----------------------------------------------------------

def unitriangular_inverse_oracle(chi):
    mu = len(chi)
    aug = [[F(x) for x in row] + [F(i == j) for j in range(mu)] for i, row in enumerate(chi)]
    for i in range(mu - 1, -1, -1):
        for r in range(i):
            f = aug[r][i]
            if f:
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[i])]
    return [row[mu:] for row in aug]


def test_serre_examples():
    assert serre_matrix(new_chain([2])).entries == frac_rows([[1]])
    assert serre_matrix(new_chain([3])).entries == frac_rows([[0, 1], [-1, 1]])


def test_serre_matches_elimination_oracle():
    for c in small_corpus():
        chi = euler_matrix(c).entries
        inv = unitriangular_inverse_oracle(chi)
        mu = c.mu
        expected = [
            [sum(inv[i][k] * chi[j][k] for k in range(mu)) for j in range(mu)]
            for i in range(mu)
        ]
        assert serre_matrix(c).entries == frac_rows(expected)


def test_serre_power_and_det():
    assert int_matrix_power(
        [[x.numerator for x in row] for row in serre_matrix(new_chain([3])).entries], 6
    ) == [[1, 0], [0, 1]]
    for c in small_corpus():
        s = [[x.numerator for x in row] for row in serre_matrix(c).entries]
        assert int_determinant(s) in (1, -1)
        power = int_matrix_power(s, 2 * c.d[c.n])
        assert power == [[int(i == j) for j in range(c.mu)] for i in range(c.mu)]


# --- X values ---------------------------------------------------------------

def test_x_value_examples():
    c = new_chain([3])
    assert x_value(c, 0) == 1
    assert x_value(c, -1) == -1
    assert x_value(c, -2) == 0


def test_x_value_mod_reduction():
    for c in small_corpus():
        dn = c.d[c.n]
        for l in (-1, 0, 1, 5):
            assert x_value(c, l) == x_value(c, l + dn) == x_value(c, l - dn)


def test_chi_matches_x_value():
    for c in corpus(mu_cap=120):
        chi = euler_matrix(c).entries
        for i in range(c.mu):
            for j in range(i, c.mu):
                assert chi[i][j] == x_value(c, i - j)


# --- pairing / grading ------------------------------------------------------

def test_pairing_examples():
    assert pairing_matrix(new_chain([2])).entries == frac_rows([[F(1, 2)]])
    assert pairing_matrix(new_chain([3])).entries == frac_rows(
        [[0, F(1, 3)], [F(1, 3), 0]]
    )
    assert pairing_matrix(new_chain([2, 2])).entries == frac_rows(
        [[0, F(1, 4), 0], [F(1, 4), 0, 0], [0, 0, F(-1, 2)]]
    )


def test_pairing_symmetric_invertible():
    for c in corpus(mu_cap=120):
        eta = pairing_matrix(c).entries
        mu = c.mu
        assert all(eta[i][j] == eta[j][i] for i in range(mu) for j in range(mu))
        for row in eta:
            assert sum(1 for x in row if x != 0) == 1


def test_grading_examples():
    g = grading_matrix(new_chain([2]))
    assert g.entries[0][0] == 0
    g = grading_matrix(new_chain([3]))
    assert (g.entries[0][0], g.entries[1][1]) == (F(-1, 6), F(1, 6))
    g = grading_matrix(new_chain([2, 2]))
    assert [g.entries[i][i] for i in range(3)] == [F(-1, 4), F(1, 4), F(0)]


def test_grading_pairing_anticommute():
    for c in corpus(mu_cap=120):
        eta = pairing_matrix(c).entries
        q = [grading_matrix(c).entries[i][i] for i in range(c.mu)]
        for i in range(c.mu):
            for j in range(c.mu):
                assert eta[i][j] * (q[i] + q[j]) == 0


# --- intersection form -------------------------------------------------------

def test_intersection_examples():
    assert intersection_matrix(new_chain([3])).entries == frac_rows(
        [[2, -1], [-1, 2]]
    )
    assert intersection_matrix(new_chain([2])).entries == frac_rows([[2]])
    assert intersection_matrix(new_chain([2, 2])).entries == frac_rows(
        [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
    )


def test_intersection_symmetry_odd():
    for c in corpus(mu_cap=60):
        inter = intersection_matrix(c).entries
        if c.n % 2 == 1:
            assert all(
                inter[i][j] == inter[j][i] for i in range(c.mu) for j in range(c.mu)
            )


def test_level_polynomials_base_cases():
    polys = level_polynomials(new_chain([4, 3, 2]))
    assert polys[0] == (1,)
    assert polys[1] == (1, -1)

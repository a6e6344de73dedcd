"""Machine verification of every checkable identity, with residual reporting.

Exact checks run in rational arithmetic and report "exact"; numerical checks
report a max-abs residual against the context tolerance.  All checks are pure
in the inputs; a :class:`Materials` bundle carries the matrices so tests can
corrupt single entries and prove the checks are not vacuous.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import gmpy2

from . import kernels, linalg
from .chain import (
    ChainDescriptor,
    SectorIndex,
    exponents_for_kappa,
    index_levels,
    index_set,
    monomial_basis,
    monomial_exponents,
    prime_index_level,
    psi,
    psi_inverse,
)
from .errors import SingularChGamma
from .exact import (
    _int_matmul,
    euler_matrix,
    grading_entries,
    intersection_matrix,
    intersection_sign,
    int_matrix_power,
    level_polynomials,
    pairing_matrix,
    serre_matrix,
    x_level_partial,
    x_value,
)
from .gamma import (
    central_charge,
    ch_gamma_matrix,
    gepner_step,
    orthant_integral_closed_form,
    _c_kappa_level,
)
from .precision import (
    PrecContext,
    e_of,
    eval_int_poly_at_phase,
    gamma_rational,
    mpfr_decimal,
    two_pi_i_power,
    two_pi_power_half,
)
from .quadrature import orthant_integral_quadrature, power_exp_integral_quadrature

QUAD_TOL_1D = 1e-6
QUAD_TOL_2D = 1e-4


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    residual: Optional[str]  # decimal string, "exact", or None when skipped
    seconds: float

    def to_json_dict(self) -> dict:
        out = {"name": self.name, "status": self.status, "seconds": round(self.seconds, 6)}
        if self.residual is not None:
            out["residual"] = self.residual
        return out


@dataclass
class VerificationReport:
    chain: tuple[int, ...]
    digits: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def overall_pass(self) -> bool:
        return all(ch.status != "fail" for ch in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "chain": list(self.chain),
            "digits": self.digits,
            "overall": "pass" if self.overall_pass else "fail",
            "checks": [ch.to_json_dict() for ch in self.checks],
        }

    def to_table(self) -> str:
        width = max((len(ch.name) for ch in self.checks), default=4)
        lines = [f"chain={list(self.chain)} digits={self.digits}"]
        for ch in self.checks:
            res = ch.residual if ch.residual is not None else "-"
            lines.append(f"{ch.name.ljust(width)}  {ch.status.upper():7}  {res}  ({ch.seconds:.3f}s)")
        lines.append(f"overall: {'PASS' if self.overall_pass else 'FAIL'}")
        return "\n".join(lines)


@dataclass
class Materials:
    """All matrices for one chain at one precision, in mutable form."""

    c: ChainDescriptor
    ctx: PrecContext
    labels: list[SectorIndex]
    eta: list[list[Fraction]]
    qdiag: list[Fraction]
    chi: list[list[Fraction]]
    serre: list[list[Fraction]]
    ch: list[list[gmpy2.mpc]]

    @classmethod
    def build(cls, c: ChainDescriptor, ctx: PrecContext) -> "Materials":
        eta = [list(row) for row in pairing_matrix(c).entries]
        chi = [list(row) for row in euler_matrix(c).entries]
        serre = [list(row) for row in serre_matrix(c).entries]
        # invertibility surfaces through the LU pivots in the theorem checks
        ch = ch_gamma_matrix(c, ctx, check_invertible=False).rows()
        return cls(
            c=c,
            ctx=ctx,
            labels=list(index_set(c)),
            eta=eta,
            qdiag=grading_entries(c),
            chi=chi,
            serre=serre,
            ch=ch,
        )


def _scaled_frame(m: Materials):
    """The character matrix scaled by (2*pi)^(-n/2), exactly as verified."""
    ctx = m.ctx
    with ctx.active():
        scale = 1 / two_pi_power_half(m.c.n, ctx)
        return [[scale * z for z in row] for row in m.ch]


def _phase_diag(m: Materials, half: bool = False):
    div = 2 if half else 1
    return [e_of(q / div, m.ctx) for q in m.qdiag]


def _exact_times_complex(exact_rows, complex_rows, ctx: PrecContext):
    """Product of an exact sparse matrix with a complex matrix."""
    with ctx.active():
        mu = len(exact_rows)
        width = len(complex_rows[0])
        out = [[gmpy2.mpc(0)] * width for _ in range(mu)]
        for i, row in enumerate(exact_rows):
            for lam, coef in enumerate(row):
                if coef == 0:
                    continue
                f = gmpy2.mpfr(coef.numerator) / gmpy2.mpfr(coef.denominator)
                src = complex_rows[lam]
                dst = out[i]
                for j in range(width):
                    dst[j] = dst[j] + f * src[j]
        return out


def verify_theorem_identity_1(c: ChainDescriptor, ctx: PrecContext, materials: Optional[Materials] = None):
    """Max-abs residual of frame^{-1} e[Q] frame minus the Serre matrix."""
    m = materials if materials is not None else Materials.build(c, ctx)
    frame = _scaled_frame(m)
    with ctx.active():
        phases = _phase_diag(m)
        rhs = [[p * z for z in row] for p, row in zip(phases, frame)]
    try:
        lu, piv = kernels.lu_factor(frame, ctx.bits)
    except ZeroDivisionError as exc:
        raise SingularChGamma(str(exc)) from exc
    conjugated = kernels.lu_solve_mat(lu, piv, rhs, ctx.bits)
    return linalg.sub_max_abs(conjugated, m.serre, ctx)


def verify_theorem_identity_2(c: ChainDescriptor, ctx: PrecContext, materials: Optional[Materials] = None):
    """Max-abs residual of frame^T e[Q/2] eta frame minus the Euler matrix."""
    m = materials if materials is not None else Materials.build(c, ctx)
    frame = _scaled_frame(m)
    eta_frame = _exact_times_complex(m.eta, frame, ctx)
    with ctx.active():
        half = _phase_diag(m, half=True)
        middle = [[p * z for z in row] for p, row in zip(half, eta_frame)]
    product = kernels.mat_mul(linalg.transpose(frame), middle, ctx.bits)
    return linalg.sub_max_abs(product, m.chi, ctx)


def _unitriangular_inverse(chi):
    """Exact inverse of a unipotent upper-triangular integer matrix."""
    mu = len(chi)
    inv = [[1 if i == j else 0 for j in range(mu)] for i in range(mu)]
    for i in range(mu - 1, -1, -1):
        for j in range(i + 1, mu):
            acc = 0
            for k in range(i + 1, j + 1):
                acc += chi[i][k] * inv[k][j]
            inv[i][j] = -acc
    return inv


def verify_d3_relations(c: ChainDescriptor, ctx: PrecContext):
    """Monodromy-data relations, recomputed along an independent path.

    Builds a fresh character matrix and derives the right-hand sides from the
    Euler matrix by direct elimination, sharing no intermediates with the
    theorem checks.
    """
    frame_mat = ch_gamma_matrix(c, ctx, check_invertible=False)
    with ctx.active():
        scale = 1 / two_pi_power_half(c.n, ctx)
        frame = [[scale * z for z in row] for row in frame_mat.rows()]
    chi = [[x.numerator for x in row] for row in euler_matrix(c).entries]
    chi_inv = _unitriangular_inverse(chi)
    mu = len(chi)
    stokes_conj = _int_matmul(chi_inv, [list(col) for col in zip(*chi)])
    qdiag = grading_entries(c)
    with ctx.active():
        phases = [e_of(q, ctx) for q in qdiag]
        rhs = [[p * z for z in row] for p, row in zip(phases, frame)]
    lu, piv = kernels.lu_factor(frame, ctx.bits)
    lhs1 = kernels.lu_solve_mat(lu, piv, rhs, ctx.bits)
    res1 = linalg.sub_max_abs(lhs1, stokes_conj, ctx)

    eta = [list(row) for row in pairing_matrix(c).entries]
    eta_frame = _exact_times_complex(eta, frame, ctx)
    with ctx.active():
        half = [e_of(q / 2, ctx) for q in qdiag]
        middle = [[p * z for z in row] for p, row in zip(half, eta_frame)]
    product = kernels.mat_mul(linalg.transpose(frame), middle, ctx.bits)
    res2 = linalg.sub_max_abs(product, chi, ctx)
    return res1, res2


# ---------------------------------------------------------------------------
# exact suite
# ---------------------------------------------------------------------------

def _exact_checks(m: Materials) -> list[tuple[str, bool]]:
    c = m.c
    mu = c.mu
    checks: list[tuple[str, bool]] = []

    integral = all(Fraction(x).denominator == 1 for row in m.chi for x in row)
    unipotent = (
        integral
        and all(m.chi[i][i] == 1 for i in range(mu))
        and all(m.chi[i][j] == 0 for i in range(mu) for j in range(i))
    )
    checks.append(("chi_unipotent_upper_triangular", unipotent))

    # triangular determinant is the diagonal product
    checks.append(("det_chi_one", all(m.chi[i][i] == 1 for i in range(mu))))

    fold_ok = all(
        m.chi[i][j] == x_value(c, (i + 1) - (j + 1))
        for i in range(mu)
        for j in range(i, mu)
    )
    checks.append(("chi_entries_match_fold", fold_ok))

    polys = level_polynomials(c)
    rec_ok = True
    for level in range(c.n, 1, -2):
        lower = level - 2
        d_low = c.d[lower]
        for l in list(range(c.d[level])) + [-1, c.d[level] + 3]:
            full = Fraction(sum(polys[level][e] for e in range((-l) % c.d[level], len(polys[level]), c.d[level])))
            low_val = Fraction(
                sum(polys[lower][e] for e in range((-l) % d_low, len(polys[lower]), d_low))
            )
            if full != x_level_partial(c, level, l) + Fraction(low_val, c.a[level - 1]):
                rec_ok = False
                break
        if not rec_ok:
            break
    checks.append(("x_recursion", rec_ok))

    anti_ok = all(
        m.eta[i][j] * (m.qdiag[i] + m.qdiag[j]) == 0 for i in range(mu) for j in range(mu)
    )
    checks.append(("grading_pairing_anticommute", anti_ok))

    checks.append(
        ("pairing_symmetric", all(m.eta[i][j] == m.eta[j][i] for i in range(mu) for j in range(mu)))
    )

    invertible = all(
        sum(1 for x in row if x != 0) == 1 for row in m.eta
    ) and all(sum(1 for i in range(mu) if m.eta[i][j] != 0) == 1 for j in range(mu))
    checks.append(("pairing_invertible", invertible))

    serre_int = all(x.denominator == 1 for row in m.serre for x in row)
    if serre_int:
        s_int = [[x.numerator for x in row] for row in m.serre]
        power = int_matrix_power(s_int, 2 * c.d[c.n])
        serre_ok = all(
            power[i][j] == (1 if i == j else 0) for i in range(mu) for j in range(mu)
        )
    else:
        serre_ok = False
    checks.append(("serre_power_identity", serre_ok))

    if serre_int and integral:
        s_int = [[x.numerator for x in row] for row in m.serre]
        chi_int = [[x.numerator for x in row] for row in m.chi]
        s_t = [list(col) for col in zip(*s_int)]
        st_chi_s = _int_matmul(_int_matmul(s_t, chi_int), s_int)
        iso_ok = st_chi_s == chi_int
    else:
        iso_ok = False
    checks.append(("serre_isometry", iso_ok))

    full, prime = monomial_basis(c)
    kappas = [psi(c, k) for k in prime]
    psi_ok = (
        sorted(kappas) == prime_index_level(c, c.n)
        and len(full) == c.mu
        and all(psi_inverse(c, kp) == k for kp, k in zip(kappas, prime))
    )
    checks.append(("psi_bijection", psi_ok))

    dual_ok = True
    for level in index_levels(c):
        if level == 0:
            continue
        for kappa in prime_index_level(c, level):
            w = exponents_for_kappa(c, SectorIndex(level, kappa))
            wd = exponents_for_kappa(c, SectorIndex(level, c.d[level] - kappa))
            if any(x + y != 1 for x, y in zip(w, wd)):
                dual_ok = False
    checks.append(("exponent_duality", dual_ok))

    compat_ok = all(
        monomial_exponents(c, k) == exponents_for_kappa(c, SectorIndex(c.n, psi(c, k)))
        for k in prime
    )
    checks.append(("psi_exponent_compatibility", compat_ok))

    inter = intersection_matrix(c).entries
    sign = intersection_sign(c.n)
    eps = (-1) ** (c.n - 1)
    formula_ok = all(
        inter[i][j] == sign * (m.chi[i][j] + eps * m.chi[j][i])
        for i in range(mu)
        for j in range(mu)
    )
    if c.n % 2 == 1:
        formula_ok = formula_ok and all(
            inter[i][j] == inter[j][i] for i in range(mu) for j in range(mu)
        )
    checks.append(("intersection_formula", formula_ok))

    length = c.d[c.n] + 1
    via_p = _series_via_numerator(c, length)
    via_factors = _series_via_factors(c, length)
    checks.append(("euler_series_crosscheck", via_p == via_factors))

    return checks


def _series_via_numerator(c: ChainDescriptor, length: int) -> list[int]:
    p = level_polynomials(c)[c.n]
    dn = c.d[c.n]
    out = []
    for mdeg in range(length):
        acc = 0
        e = mdeg
        while e >= 0:
            if e < len(p):
                acc += p[e]
            e -= dn
        out.append(acc)
    return out


def _series_via_factors(c: ChainDescriptor, length: int) -> list[int]:
    """Series of the reciprocal product, multiplying/dividing factor by factor."""
    ser = [0] * length
    ser[0] = 1
    for i in range(c.n + 1):
        expo = (-1) ** (c.n - i)
        step = c.d[i]
        if expo == -1:
            # multiply by (1 - t^step)
            nxt = list(ser)
            for deg in range(step, length):
                nxt[deg] -= ser[deg - step]
            ser = nxt
        else:
            # divide by (1 - t^step): multiply by the geometric series
            nxt = list(ser)
            for deg in range(step, length):
                nxt[deg] += nxt[deg - step]
            ser = nxt
    return ser


def verify_exact_suite(c: ChainDescriptor, materials: Optional[Materials] = None, ctx: Optional[PrecContext] = None) -> list[CheckResult]:
    m = materials
    if m is None:
        m = Materials.build(c, ctx if ctx is not None else PrecContext())
    out = []
    for name, ok in _exact_checks(m):
        t0 = time.perf_counter()
        out.append(
            CheckResult(name=name, status="pass" if ok else "fail", residual="exact" if ok else "exact-mismatch", seconds=time.perf_counter() - t0)
        )
    return out


# ---------------------------------------------------------------------------
# gamma oracles
# ---------------------------------------------------------------------------

def _coefficient_lemma_residual(c: ChainDescriptor, ctx: PrecContext):
    n = c.n
    dn = c.d[n]
    poly = level_polynomials(c)[n]
    with ctx.active():
        worst = gmpy2.mpfr(0)
        inv_two_pi_n = 1 / (2 * gmpy2.const_pi()) ** n
        for kappa in prime_index_level(c, n):
            w = exponents_for_kappa(c, SectorIndex(n, kappa))
            lhs = (
                inv_two_pi_n
                * _c_kappa_level(c, n, kappa, ctx)
                * e_of(sum((wl - Fraction(1, 2) for wl in w), Fraction(0)) / 2, ctx)
                * _c_kappa_level(c, n, dn - kappa, ctx)
                / dn
            )
            arg = Fraction((-1) ** (n - 1)) * w[0]
            rhs = eval_int_poly_at_phase(poly, arg, ctx) / dn
            diff = abs(lhs - rhs)
            if diff > worst:
                worst = diff
        return worst


def _x_dft_residual(c: ChainDescriptor, ctx: PrecContext):
    n = c.n
    dn = c.d[n]
    poly = level_polynomials(c)[n]
    with ctx.active():
        values = [eval_int_poly_at_phase(poly, Fraction(a, dn), ctx) for a in range(1, dn + 1)]
        worst = gmpy2.mpfr(0)
        for l in range(dn):
            acc = gmpy2.mpc(0)
            for a in range(1, dn + 1):
                acc += values[a - 1] * e_of(Fraction(a * l, dn), ctx)
            acc = acc / dn
            exact = x_value(c, l)
            diff = abs(acc - (gmpy2.mpfr(exact.numerator) / gmpy2.mpfr(exact.denominator)))
            if diff > worst:
                worst = diff
        return worst


def _reflection_sample_residual(c: ChainDescriptor, ctx: PrecContext, count: int = 100):
    dn = c.d[c.n]
    rng = random.Random(10_000 + dn)
    with ctx.active(extra_bits=64):
        worst = gmpy2.mpfr(0)
        pi_hi = gmpy2.const_pi()
        for _ in range(count):
            p = rng.randrange(1, dn) if dn > 1 else 1
            q = Fraction(p, dn)
            if q == 0 or q >= 1:
                continue
            g1 = gamma_rational(q, ctx, self_check=False)
            g2 = gamma_rational(1 - q, ctx, self_check=False)
            x = gmpy2.mpfr(q.numerator) / gmpy2.mpfr(q.denominator)
            err = abs(g1 * g2 * gmpy2.sin(pi_hi * x) / pi_hi - 1)
            if err > worst:
                worst = err
        return worst


def _gepner_residual(c: ChainDescriptor, ctx: PrecContext):
    step = gepner_step(c)
    js = range(1, min(c.d[c.n], 6) + 1)
    with ctx.active():
        worst = gmpy2.mpfr(0)
        prev = central_charge(c, 1, ctx)
        base_mod = abs(prev)
        for j in js:
            cur = central_charge(c, j + 1, ctx)
            diff = abs(cur - e_of(step, ctx) * prev)
            if diff > worst:
                worst = diff
            mdiff = abs(abs(cur) - base_mod)
            if mdiff > worst:
                worst = mdiff
            prev = cur
        return worst


def _frame_charge_residual(m: Materials):
    """Row of the pairing at psi(0) against column 1 of the character matrix
    must reproduce the first central charge times (2 pi i)^n."""
    c, ctx = m.c, m.ctx
    kappa0 = psi(c, (0,) * c.n)
    row = m.labels.index(SectorIndex(c.n, kappa0))
    with ctx.active():
        acc = gmpy2.mpc(0)
        for lam, coef in enumerate(m.eta[row]):
            if coef == 0:
                continue
            acc += (gmpy2.mpfr(coef.numerator) / gmpy2.mpfr(coef.denominator)) * m.ch[lam][0]
        z = central_charge(c, 1, ctx) * two_pi_i_power(c.n, ctx)
        return abs(acc - z)


def verify_gamma_oracles(c: ChainDescriptor, ctx: PrecContext, materials: Optional[Materials] = None) -> list[CheckResult]:
    m = materials if materials is not None else Materials.build(c, ctx)
    out: list[CheckResult] = []
    tau = ctx.tau_mpfr()

    t0 = time.perf_counter()
    if c.n <= 2:
        tol = QUAD_TOL_1D if c.n == 1 else QUAD_TOL_2D
        _, prime = monomial_basis(c)
        worst = 0.0
        for k in prime:
            closed = float(orthant_integral_closed_form(c, k, ctx))
            quad = orthant_integral_quadrature(c, k, tol)
            rel = abs(closed - quad) / closed
            worst = max(worst, rel)
        out.append(
            CheckResult(
                "orthant_quadrature_agreement",
                "pass" if worst <= tol else "fail",
                f"{worst:.3e}",
                time.perf_counter() - t0,
            )
        )
    else:
        out.append(CheckResult("orthant_quadrature_agreement", "skipped", None, time.perf_counter() - t0))

    t0 = time.perf_counter()
    worst = _coefficient_lemma_residual(c, ctx)
    out.append(
        CheckResult(
            "coefficient_lemma",
            "pass" if worst <= tau else "fail",
            mpfr_decimal(worst, 3),
            time.perf_counter() - t0,
        )
    )

    t0 = time.perf_counter()
    if c.n == 1:
        a1 = c.a[0]
        worst = 0.0
        for i, kappa in enumerate(prime_index_level(c, 1)):
            base = power_exp_integral_quadrature(a1, a1 - 1 - kappa, 1e-8)
            for j in range(1, c.mu + 1):
                with ctx.active():
                    expected = (
                        a1
                        * (1 - e_of(Fraction(kappa, a1), ctx))
                        * e_of(Fraction(kappa * (j - 1), a1), ctx)
                        * base
                    )
                    rel = float(abs(m.ch[i][j - 1] - expected) / abs(m.ch[i][j - 1]))
                worst = max(worst, rel)
        out.append(
            CheckResult(
                "frame_vs_quadrature_dim1",
                "pass" if worst <= 1e-6 else "fail",
                f"{worst:.3e}",
                time.perf_counter() - t0,
            )
        )
    else:
        out.append(CheckResult("frame_vs_quadrature_dim1", "skipped", None, time.perf_counter() - t0))

    t0 = time.perf_counter()
    worst = _reflection_sample_residual(c, ctx)
    out.append(
        CheckResult(
            "gamma_reflection_sample",
            "pass" if worst <= ctx.gamma_rel_err() else "fail",
            mpfr_decimal(worst, 3),
            time.perf_counter() - t0,
        )
    )

    t0 = time.perf_counter()
    worst = _x_dft_residual(c, ctx)
    out.append(
        CheckResult(
            "x_dft_crosscheck",
            "pass" if worst <= tau else "fail",
            mpfr_decimal(worst, 3),
            time.perf_counter() - t0,
        )
    )

    t0 = time.perf_counter()
    worst = _gepner_residual(c, ctx)
    out.append(
        CheckResult(
            "gepner_rotation",
            "pass" if worst <= tau else "fail",
            mpfr_decimal(worst, 3),
            time.perf_counter() - t0,
        )
    )

    t0 = time.perf_counter()
    worst = _frame_charge_residual(m)
    out.append(
        CheckResult(
            "frame_charge_consistency",
            "pass" if worst <= tau else "fail",
            mpfr_decimal(worst, 3),
            time.perf_counter() - t0,
        )
    )

    return out


SUITES = ("exact", "thm1", "thm2", "d3", "gamma")


def run_suite(
    c: ChainDescriptor,
    ctx: PrecContext,
    suites=SUITES,
    materials: Optional[Materials] = None,
) -> VerificationReport:
    """Run the requested check suites; deterministic report ordering."""
    m = materials if materials is not None else Materials.build(c, ctx)
    report = VerificationReport(chain=c.a, digits=ctx.digits)
    tau = ctx.tau_mpfr()

    if "exact" in suites:
        report.checks.extend(verify_exact_suite(c, materials=m))

    if "thm1" in suites:
        t0 = time.perf_counter()
        try:
            res = verify_theorem_identity_1(c, ctx, materials=m)
            status = "pass" if res <= tau else "fail"
            report.checks.append(
                CheckResult("theorem_identity_1", status, mpfr_decimal(res, 3), time.perf_counter() - t0)
            )
        except SingularChGamma:
            report.checks.append(CheckResult("theorem_identity_1", "fail", "singular", time.perf_counter() - t0))

    if "thm2" in suites:
        t0 = time.perf_counter()
        res = verify_theorem_identity_2(c, ctx, materials=m)
        status = "pass" if res <= tau else "fail"
        report.checks.append(
            CheckResult("theorem_identity_2", status, mpfr_decimal(res, 3), time.perf_counter() - t0)
        )

    if "d3" in suites:
        t0 = time.perf_counter()
        res1, res2 = verify_d3_relations(c, ctx)
        elapsed = time.perf_counter() - t0
        report.checks.append(
            CheckResult("d3_relation_1", "pass" if res1 <= tau else "fail", mpfr_decimal(res1, 3), elapsed / 2)
        )
        report.checks.append(
            CheckResult("d3_relation_2", "pass" if res2 <= tau else "fail", mpfr_decimal(res2, 3), elapsed / 2)
        )

    if "gamma" in suites:
        report.checks.extend(verify_gamma_oracles(c, ctx, materials=m))

    return report

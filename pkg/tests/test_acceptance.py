"""Acceptance gate: every criterion at its stated grid and tolerance.

Each test prints one PASS/FAIL line; the identity suites demand exact zeros,
the sign suites demand unconditional exact verdicts for 1 <= m <= 60, the
float suites run at 50 digits with the stated margins.
"""

import random
from fractions import Fraction as F

import mpmath

from qturan.analysis import (
    complete_monotonicity_check,
    laplace_representation_check,
    measure_from_series,
    multiplicative_convexity_check,
)
from qturan.conditions import (
    chain_condition_a,
    chain_condition_b,
    majorization_sufficiency,
    rts_monotonicity_probe,
    RtsDirection,
)
from qturan.identities import (
    q_to_1_limit_study,
    verify_connection_formula,
    verify_finite_sum_identity,
    verify_kummer_linearization,
    verify_linearization,
    verify_rahman_product,
    verify_recqgamma,
)
from qturan.qcore import QBase, elementary_symmetric, qgamma
from qturan.scalar import ex, fl
from qturan.series import TruncatedSeries, heine_f_series, modified_qbessel_i1
from qturan.turanian import (
    Family,
    SignVerdict,
    TuranianSpec,
    delta_sign_certificate,
    delta_tilde_sign_certificate,
    gamma_sign_certificate,
    turan_point_inequality,
    turanian_series,
    verdict_satisfies,
)

mpmath.mp.dps = 60

DIGITS = 50
CASE_B = dict(a=(F(2), F(3)), b=(F(1), F(2)))        # chain case (b): nonnegative
CASE_A = dict(a=(F(1), F(1), F(1)), b=(F(2), F(2)))  # chain case (a): nonpositive


def _report(name, failures, total):
    ok = not failures
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {total - len(failures)}/{total} instances"
          + (f"; first failure {failures[0]}" if failures else ""))
    assert ok, f"{name}: {failures[:5]}"


# -- criterion 1: identity suites (exact mode, exact zeros) -------------------


def test_criterion_1_linearization():
    failures, total = [], 0
    for qv in (F(1, 2), F(3, 4)):
        q = QBase.exact(q=qv)
        for mu in (F(1, 2), F(1), F(2)):
            for alpha in (1, 2, 3):
                for beta in (F(0), F(1, 2), F(1), F(2)):
                    total += 1
                    res = verify_linearization(mu, alpha, beta, q, 30)
                    if not res.exact_zero:
                        failures.append((str(qv), str(mu), alpha, str(beta)))
    _report("Heine product-difference linearization suite", failures, total)


def test_criterion_1_finite_sum():
    failures, total = [], 0
    params = (F(1, 2), F(1), F(3, 2), F(2))
    for pv in (F(1, 2), F(3, 4)):
        q = QBase.exact(p=pv)
        for nu in params:
            for eta in params:
                for m in range(21):
                    total += 1
                    res = verify_finite_sum_identity(nu, eta, q, m)
                    if not res.exact_zero:
                        failures.append((str(pv), str(nu), str(eta), m))
    _report("paired finite-sum identity suite", failures, total)


def test_criterion_1_rahman_product():
    failures, total = [], 0
    params = (F(1, 2), F(1), F(3, 2), F(2))
    for pv in (F(1, 2), F(3, 4)):
        q = QBase.exact(p=pv)
        for nu in params:
            for eta in params:
                total += 1
                res = verify_rahman_product(nu, eta, q, 25)
                if not res.exact_zero:
                    failures.append((str(pv), str(nu), str(eta)))
    _report("Rahman product suite", failures, total)


def test_criterion_1_recqgamma():
    failures, total = [], 0
    for qv in (F(1, 2), F(1, 4)):
        q = QBase.exact(q=qv)
        for mu in (F(1, 2), F(1), F(3, 2)):
            for beta in (F(1, 2), F(1), F(3, 2)):
                for m in range(11):
                    total += 1
                    res = verify_recqgamma(mu, beta, q, m)
                    if not res.exact_zero:
                        failures.append((str(qv), str(mu), str(beta), m))
    _report("Gamma_q summation identity suite", failures, total)


def test_criterion_1_kummer():
    failures, total = [], 0
    for mu in (F(1, 2), F(1), F(3, 2)):
        for alpha in (1, 2, 3):
            for beta in (F(0), F(1, 2), F(1)):
                total += 1
                res = verify_kummer_linearization(mu, alpha, beta, 30)
                if not res.exact_zero:
                    failures.append((str(mu), alpha, str(beta)))
    _report("Kummer linearization suite", failures, total)


# -- criterion 2: sign suites (exact mode, strict for 1 <= m <= 60) -----------


GRID_Q = (F(1, 4), F(1, 2), F(3, 4))
GRID_P = (F(1, 2), F(1), F(2))


def test_criterion_2_heine_family_negative():
    spot = turanian_series(
        TuranianSpec(Family.HEINE_F, F(1), F(1), F(1), QBase.exact(q=F(1, 2)), 2))
    assert spot.coeffs[1].to_fraction() == F(-20, 21)
    failures, total = [], 0
    for qv in GRID_Q:
        q = QBase.exact(q=qv)
        for mu in GRID_P:
            for alpha in GRID_P:
                for beta in GRID_P:
                    total += 1
                    rep = delta_sign_certificate(
                        TuranianSpec(Family.HEINE_F, mu, alpha, beta, q, 60))
                    if rep.verdict != SignVerdict.ALL_STRICTLY_NEG:
                        failures.append((str(qv), str(mu), str(alpha), str(beta),
                                         rep.verdict.value))
    _report("Heine family sign suite (delta_m < 0, spot -20/21)", failures, total)


def test_criterion_2_tilde_family_positive():
    failures, total = [], 0
    for qv in GRID_Q:
        q = QBase.exact(q=qv)
        for mu in GRID_P:
            for alpha in GRID_P:
                for beta in GRID_P:
                    total += 1
                    rep = delta_tilde_sign_certificate(
                        TuranianSpec(Family.HEINE_F_TILDE, mu, alpha, beta, q, 60))
                    if rep.verdict != SignVerdict.ALL_STRICTLY_POS:
                        failures.append((str(qv), str(mu), str(alpha), str(beta),
                                         rep.verdict.value))
    _report("tilde family sign suite (delta~_m > 0)", failures, total)


def _example_suite(name, vectors, expected):
    q = QBase.exact(q=F(1, 2))
    failures, total = [], 0
    for mu in (F(0), F(1, 2), F(1), F(2)):
        for alpha in (1, 2, 3):
            for beta in (alpha - 1, alpha, alpha + 1):
                total += 1
                rep = gamma_sign_certificate(
                    TuranianSpec(Family.G_NORMALIZED, mu, F(alpha), F(beta),
                                 q, 60, **vectors))
                ok = (verdict_satisfies(rep.verdict, expected)
                      and rep.matches_expected and rep.expected == expected)
                if beta == 0:
                    ok = rep.verdict == SignVerdict.ZERO
                if not ok:
                    failures.append((str(mu), alpha, beta, rep.verdict.value))
    _report(name, failures, total)


def test_criterion_2_g_2phi2_nonnegative():
    _example_suite("normalized 2phi2 sign suite (gamma_m >= 0)", CASE_B,
                   SignVerdict.ALL_NONNEG)


def test_criterion_2_g_3phi2_nonpositive():
    _example_suite("normalized 3phi2 sign suite (gamma_m <= 0)", CASE_A,
                   SignVerdict.ALL_NONPOS)


# -- criterion 3: inequality/limit suites (float mode, 50 digits) -------------


def test_criterion_3_turan_point_inequalities():
    q = QBase.floating(F(1, 2), DIGITS)
    margin_floor = mpmath.mpf("1e-30")
    failures, total = [], 0
    for x in (F(1, 10), F(1, 2), F(9, 10)):
        for fam_vectors, direction in ((CASE_B, "direct"), (CASE_A, "inverse")):
            total += 1
            ok, margin = turan_point_inequality(
                Family.G_NORMALIZED, F(1), x, q, direction, **fam_vectors)
            if not (ok and margin.val > margin_floor):
                failures.append((str(x), direction, mpmath.nstr(margin.val, 5)))
    _report("Turan point inequalities (margin > 1e-30)", failures, total)


def test_criterion_3_connection_and_roundtrip():
    failures, total = [], 0
    tol = mpmath.mpf("1e-35")
    for qv in ("0.3", "0.5", "0.8"):
        q = QBase.floating(qv, DIGITS)
        for alpha in (F(0), F(1, 2), F(1), F(3, 2)):
            for y in (F(1, 10), F(1, 2), F(1), F(19, 10)):
                total += 1
                res = verify_connection_formula(alpha, y, q)
                if not res.max_rel.val < tol:
                    failures.append(("connection", qv, str(alpha), str(y),
                                     mpmath.nstr(res.max_rel.val, 5)))
    q = QBase.floating(F(1, 2), DIGITS)
    for mu in (F(1, 2), F(1), F(2)):
        for x in (F(1, 10), F(1, 2), F(9, 10)):
            total += 1
            order = 1200
            direct = heine_f_series(mu, q, order).eval(fl(x, DIGITS))
            y = fl(x, DIGITS).sqrt() * 2
            i1 = modified_qbessel_i1(mu - 1, y, q, order)
            rebuilt = ((1 - q.q) ** fl(mu - 1, DIGITS)) * qgamma(mu, q) \
                * (fl(x, DIGITS) ** fl(-(mu - 1) / 2, DIGITS)) * i1
            rel = abs((direct - rebuilt) / direct)
            if not rel.val < tol:
                failures.append(("roundtrip", str(mu), str(x),
                                 mpmath.nstr(rel.val, 5)))
    _report("Connection formula and Bessel round-trip (< 1e-35)", failures, total)


def _caseb_series_float(order=40):
    spec = TuranianSpec(Family.G_NORMALIZED, F(1), F(1), F(2),
                        QBase.exact(q=F(1, 2)), order, **CASE_B)
    return turanian_series(spec).to_float(DIGITS)


def test_criterion_3_complete_monotonicity_and_multiplicative_convexity():
    ts = _caseb_series_float()
    grid = []
    cur = F(1)
    while cur <= F(5):
        grid.append(fl(cur, DIGITS))
        cur += F(1, 20)
    ok_cm, margins = complete_monotonicity_check(lambda y: ts.eval(1 / y),
                                                 grid, 6)
    rng = random.Random(2024)
    pairs = [(fl(F(rng.randint(1, 40), 20), DIGITS),
              fl(F(rng.randint(1, 40), 20), DIGITS)) for _ in range(20)]
    ok_mc, mc_margins = multiplicative_convexity_check(lambda x: ts.eval(x),
                                                       pairs)
    failures = []
    if not (ok_cm and all(m.val >= 0 for m in margins)):
        failures.append("complete-monotonicity")
    if not ok_mc:
        failures.append("multiplicative-convexity")
    _report("complete monotonicity and multiplicative convexity (order 6; 20 pairs)",
            failures, 2)


def test_criterion_3_laplace_representation():
    # bookkeeping oracle first: the transform of t^(m-1)/(m-1)! is x^m
    with mpmath.workdps(DIGITS):
        x = mpmath.mpf(3) / 10
        for m in (1, 2, 4):
            val = mpmath.quad(lambda t: mpmath.e ** (-t / x) * t ** (m - 1)
                              / mpmath.factorial(m - 1), [0, 60])
            assert abs(val - x ** m) < mpmath.mpf("1e-40")
    md = measure_from_series(_caseb_series_float())
    res = laplace_representation_check(md, [F(3, 10), F(6, 10)], digits=DIGITS,
                                       upper_limit=80)
    ok = res.max_rel.val < mpmath.mpf("1e-20")
    print(f"[{'PASS' if ok else 'FAIL'}] Laplace representation "
          f"(max_rel={mpmath.nstr(res.max_rel.val, 4)} < 1e-20)")
    assert ok


def test_criterion_3_q_to_1_study():
    out = q_to_1_limit_study(F(1), 1, F(1), F(1, 2), ["0.9", "0.99", "0.999"],
                             digits=DIGITS)
    devs = [r.max_abs.val for r in out]
    ok = devs[0] > devs[1] > devs[2]
    print(f"[{'PASS' if ok else 'FAIL'}] q->1 deviations strictly decrease: "
          + ", ".join(mpmath.nstr(d, 4) for d in devs))
    assert ok


# -- criterion 4: structural property tests -----------------------------------


def test_criterion_4_structural_properties():
    rng = random.Random(404)
    q = QBase.exact(q=F(1, 2))
    failures = []

    # Cauchy-product symmetry on random exact series
    for _ in range(50):
        a = TruncatedSeries(tuple(ex(F(rng.randint(-9, 9), rng.randint(1, 6)))
                                  for _ in range(8)), 7)
        b = TruncatedSeries(tuple(ex(F(rng.randint(-9, 9), rng.randint(1, 6)))
                                  for _ in range(8)), 7)
        if not all((x - y).is_zero() for x, y in zip((a * b).coeffs, (b * a).coeffs)):
            failures.append("cauchy-symmetry")
            break

    # Turanian symmetry and delta_0 = 0 on the Heine family
    for _ in range(25):
        mu = F(rng.randint(1, 6), 2)
        al = F(rng.randint(1, 6), 2)
        be = F(rng.randint(1, 6), 2)
        s1 = turanian_series(TuranianSpec(Family.HEINE_F, mu, al, be, q, 10))
        s2 = turanian_series(TuranianSpec(Family.HEINE_F, mu, be, al, q, 10))
        if not all((x - y).is_zero() for x, y in zip(s1.coeffs, s2.coeffs)):
            failures.append("turanian-symmetry")
            break
        if not s1.coeffs[0].is_zero():
            failures.append("delta0-zero")
            break

    # chain cross-multiplication equals the division form; the witness and
    # monotonicity implications hold with zero counterexamples over 500 draws
    grid = [ex(F(n, 7)) for n in sorted(rng.sample(range(1, 6000), 50))]
    for _ in range(500):
        s = rng.randint(1, 3)
        t = s + rng.randint(0, 1)
        c = [ex(F(rng.randint(1, 15))) for _ in range(t)]
        d = [ex(F(rng.randint(1, 15))) for _ in range(s)]
        got_a = chain_condition_a(c, d)
        ec, ed = elementary_symmetric(c), elementary_symmetric(d)
        ratios = [ec[t - j] / ed[s - j] for j in range(s + 1)]
        if got_a != all(x <= y for x, y in zip(ratios, ratios[1:])):
            failures.append("cross-multiplication")
            break
        try:
            verdict = majorization_sufficiency(c, d)  # raises if breached
        except Exception:
            failures.append("witness-implication")
            break
        direction = rts_monotonicity_probe(c, d, grid)  # asserts direction
        if got_a and t >= s and direction == RtsDirection.DECREASING:
            failures.append("monotone-direction")
            break
        if t <= s and chain_condition_b(c, d) and \
                direction == RtsDirection.INCREASING:
            failures.append("monotone-direction")
            break
    _report("structural properties (symmetry, delta_0, chains, implications x500)",
            failures, 4)

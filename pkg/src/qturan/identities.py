"""Coefficientwise and pointwise identity verification.

Each verifier builds the two sides of one identity independently and
reports a :class:`Residual`.  In exact mode the comparison is exact
(``exact_zero`` is meaningful: truncation introduces no error because the
identities hold as formal power series); in float mode the residual records
the maximum absolute and relative deviation.

A representation note: the product of the four upper parameters
(+-q^((v+e-1)/2), +-q^((v+e)/2)) is evaluated through the pairing
(a; q)_k (-a; q)_k = (a^2; q^2)_k, which keeps half-integer v, e inside the
exact field.  When v+e = 1 the lower parameter q^(v+e-1) equals 1 and the
coefficient is a removable 0/0 form whose limit replaces
(1; q^2)_k / (1; q)_k by (q^2; q^2)_{k-1} / (q; q)_{k-1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .qcore import QBase, pochhammer_classical, qgamma, qpochhammer_finite, shifted_factorial
from .series import (
    PhiSpec,
    TruncatedSeries,
    geometric_tail_order,
    heine_f_series,
    kummer_1f1_unit_top,
    kummer_1f1_value,
    qbessel_j1,
    qbessel_j2,
    tphis_series,
)
from .qcore import qpochhammer_infinite
from .scalar import (
    CollisionError,
    DomainError,
    FloatScalar,
    HypothesisError,
    Scalar,
    as_fraction,
    ex,
    fl,
    zero_like,
)


@dataclass(frozen=True)
class Residual:
    mode: str
    max_abs: Scalar
    max_rel: Scalar
    order_checked: int
    exact_zero: bool
    label: str = ""
    note: str | None = None


def _compare(pairs, mode: str, order: int, label: str, note=None) -> Residual:
    """Residual from (lhs, rhs) pairs; 0/0 positions count as zero deviation."""
    max_abs = None
    max_rel = None
    all_zero = True
    for lhs, rhs in pairs:
        diff = abs(lhs - rhs)
        if not diff.is_zero():
            all_zero = False
        denom = max(abs(lhs), abs(rhs))
        rel = diff if denom.is_zero() else diff / denom
        if max_abs is None or diff > max_abs:
            max_abs = diff
        if max_rel is None or rel > max_rel:
            max_rel = rel
    if max_abs is None:
        raise ValueError("no values to compare")
    return Residual(mode, max_abs, max_rel, order,
                    exact_zero=(mode == "exact" and all_zero),
                    label=label, note=note)


def _phi43_rahman_coeffs(nu, eta, q: QBase, order: int):
    """Coefficients of the 4phi3 factor of the Rahman product.

    Coefficient k is (q^(v+e-1); q^2)_k (q^(v+e); q^2)_k divided by
    (q^v; q)_k (q^e; q)_k (q^(v+e-1); q)_k (q; q)_k, with the removable
    v+e = 1 limit handled.
    """
    big_a = q.q_power(nu + eta - 1)
    big_b = q.q_power(nu + eta)
    q_nu = q.q_power(nu)
    q_eta = q.q_power(eta)
    q2 = q.q * q.q
    removable = (big_a - 1).is_zero()
    coeffs = []
    for k in range(order + 1):
        if removable:
            up = shifted_factorial(q2, q2, k - 1) if k else q.one
            lo_a = shifted_factorial(q.q, q.q, k - 1) if k else q.one
        else:
            up = shifted_factorial(big_a, q2, k)
            lo_a = shifted_factorial(big_a, q.q, k)
        up = up * shifted_factorial(big_b, q2, k)
        den = (shifted_factorial(q_nu, q.q, k) *
               shifted_factorial(q_eta, q.q, k) *
               lo_a *
               shifted_factorial(q.q, q.q, k))
        if den.is_zero():
            raise CollisionError(
                f"lower parameter of the 4phi3 vanishes at k={k}"
            )
        coeffs.append(up / den)
    return coeffs


def _check_heine_params(*params):
    for p in params:
        if isinstance(p, Fraction) and not p > 0:
            raise HypothesisError(f"parameter {p} must be positive")


def verify_rahman_product(nu, eta, q: QBase, order: int) -> Residual:
    """Product of two Heine series against e_q times the paired 4phi3."""
    nu = as_fraction(nu) if q.is_exact else nu
    eta = as_fraction(eta) if q.is_exact else eta
    _check_heine_params(nu, eta)
    lhs = heine_f_series(nu, q, order) * heine_f_series(eta, q, order)

    phi43 = _phi43_rahman_coeffs(nu, eta, q, order)
    # e_q(z) has coefficient j equal to 1/(q; q)_j
    eq_coeffs = []
    cur = q.one
    qq_run = q.one
    qk = q.q
    for j in range(order + 1):
        eq_coeffs.append(cur)
        qq_run = qq_run * (1 - qk)
        qk = qk * q.q
        cur = q.one / qq_run
    rhs = []
    for m in range(order + 1):
        acc = zero_like(q.one)
        for k in range(m + 1):
            acc = acc + phi43[k] * eq_coeffs[m - k]
        rhs.append(acc)
    pairs = list(zip(lhs.coeffs, rhs))
    return _compare(pairs, q.mode, order, f"rahman-product(nu={nu},eta={eta})")


def verify_finite_sum_identity(nu, eta, q: QBase, m: int) -> Residual:
    """The order-m coefficient identity extracted from the Rahman product."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    nu = as_fraction(nu) if q.is_exact else nu
    eta = as_fraction(eta) if q.is_exact else eta
    _check_heine_params(nu, eta)
    q_nu = q.q_power(nu)
    q_eta = q.q_power(eta)
    lhs = zero_like(q.one)
    for k in range(m + 1):
        den = (shifted_factorial(q_nu, q.q, k) *
               shifted_factorial(q_eta, q.q, m - k) *
               shifted_factorial(q.q, q.q, k) *
               shifted_factorial(q.q, q.q, m - k))
        if den.is_zero():
            raise CollisionError(f"denominator vanishes at k={k}")
        lhs = lhs + q.one / den
    phi43 = _phi43_rahman_coeffs(nu, eta, q, m)
    rhs = zero_like(q.one)
    for k in range(m + 1):
        rhs = rhs + phi43[k] / shifted_factorial(q.q, q.q, m - k)
    return _compare([(lhs, rhs)], q.mode, m,
                    f"finite-sum(nu={nu},eta={eta},m={m})")


def verify_connection_formula(alpha, y, q: QBase, order: int | None = None) -> Residual:
    """J2_alpha(y) against (-y^2/4; q)_infty J1_alpha(y), pointwise."""
    if q.is_exact:
        raise DomainError("the connection formula is verified in float mode")
    yv = q.scalar(y)
    if not abs(yv) < FloatScalar(2, q.digits):
        raise DomainError("|y| < 2 required")
    if order is None:
        tol = mpmath.mpf(10) ** (6 - q.digits)
        order = geometric_tail_order(abs(yv) * abs(yv) / 4, tol, minimum=120)
    lhs = qbessel_j2(alpha, yv, q, order)
    factor = qpochhammer_infinite(-(yv * yv) / 4, q)
    rhs = factor * qbessel_j1(alpha, yv, q, order)
    return _compare([(lhs, rhs)], q.mode, order,
                    f"connection(alpha={alpha},y={y})")


def heine_phi_q0_series(c, q: QBase, order: int) -> TruncatedSeries:
    """2phi1(q, 0; q^c; x) = sum_n x^n / (q^c; q)_n as a truncated series."""
    spec = PhiSpec((q.q, q.zero), (q.q_power(c),), q)
    return tphis_series(spec, order)


def linearization_sides(mu, alpha: int, beta, q: QBase, order: int):
    """Both sides of the finite linearization of the Heine product difference."""
    if not (isinstance(alpha, int) or (isinstance(alpha, Fraction) and alpha.denominator == 1)):
        raise HypothesisError(f"alpha must be a positive integer, got {alpha}")
    alpha = int(alpha)
    if alpha < 1:
        raise HypothesisError("alpha must be a positive integer")
    mu = as_fraction(mu) if q.is_exact else mu
    beta = as_fraction(beta) if q.is_exact else beta

    def phi(c):
        return heine_phi_q0_series(c, q, order)

    def poch(c, n):
        return qpochhammer_finite(q.q_power(c), q, n)

    lhs = (phi(mu + alpha) * phi(mu + beta)).scaled(poch(mu + beta, alpha)) \
        - (phi(mu) * phi(mu + alpha + beta)).scaled(poch(mu, alpha))

    rhs = None
    for j in range(alpha):
        pos = phi(mu + 1 + j).scaled(
            poch(mu + 1 + j, alpha - 1 - j) * poch(mu + alpha + beta - 1 - j, 1 + j))
        neg = phi(mu + alpha + beta - j).scaled(
            poch(mu + j, alpha - j) * poch(mu + alpha + beta - j, j))
        bracket = pos - neg
        rhs = bracket if rhs is None else rhs + bracket
    return lhs, rhs


def verify_linearization(mu, alpha: int, beta, q: QBase, order: int) -> Residual:
    """Coefficientwise check of the linearization identity."""
    lhs, rhs = linearization_sides(mu, alpha, beta, q, order)
    pairs = list(zip(lhs.coeffs, rhs.coeffs))
    return _compare(pairs, q.mode, order,
                    f"linearization(mu={mu},alpha={alpha},beta={beta})")


def kummer_sides(mu, alpha: int, beta, order: int):
    """Both sides of the q -> 1 confluent limit of the linearization."""
    if not (isinstance(alpha, int) or (isinstance(alpha, Fraction) and alpha.denominator == 1)):
        raise HypothesisError(f"alpha must be a positive integer, got {alpha}")
    alpha = int(alpha)
    if alpha < 1:
        raise HypothesisError("alpha must be a positive integer")
    mu = as_fraction(mu)
    beta = as_fraction(beta)

    def f(c):
        return kummer_1f1_unit_top(c, order)

    def poch(c, n):
        return pochhammer_classical(ex(c), n)

    lhs = (f(mu + alpha) * f(mu + beta)).scaled(poch(mu + beta, alpha)) \
        - (f(mu) * f(mu + alpha + beta)).scaled(poch(mu, alpha))
    rhs = None
    for j in range(alpha):
        pos = f(mu + 1 + j).scaled(
            poch(mu + 1 + j, alpha - 1 - j) * poch(mu + alpha + beta - 1 - j, 1 + j))
        neg = f(mu + alpha + beta - j).scaled(
            poch(mu + j, alpha - j) * poch(mu + alpha + beta - j, j))
        bracket = pos - neg
        rhs = bracket if rhs is None else rhs + bracket
    return lhs, rhs


def verify_kummer_linearization(mu, alpha: int, beta, order: int) -> Residual:
    """Exact rational check of the confluent linearization identity."""
    lhs, rhs = kummer_sides(mu, alpha, beta, order)
    pairs = list(zip(lhs.coeffs, rhs.coeffs))
    return _compare(pairs, "exact", order,
                    f"kummer-linearization(mu={mu},alpha={alpha},beta={beta})")


def _linearization_sides_value(mu, alpha: int, beta, x, q: QBase):
    """Transformed q-side values: argument (1-q)x, scaled by (1-q)^(-alpha)."""
    digits = q.digits
    z = (1 - q.q) * q.scalar(x)
    tol = mpmath.mpf(10) ** (4 - digits)
    order = geometric_tail_order(abs(z), tol, minimum=60)

    def phi_val(c):
        return heine_phi_q0_series(c, q, order).eval(z)

    def poch(c, n):
        return qpochhammer_finite(q.q_power(c), q, n)

    scale = (1 - q.q) ** (-alpha)
    lhs = scale * (poch(mu + beta, alpha) * phi_val(mu + alpha) * phi_val(mu + beta)
                   - poch(mu, alpha) * phi_val(mu) * phi_val(mu + alpha + beta))
    rhs_acc = None
    for j in range(alpha):
        pos = (poch(mu + 1 + j, alpha - 1 - j)
               * poch(mu + alpha + beta - 1 - j, 1 + j)
               * phi_val(mu + 1 + j))
        neg = (poch(mu + j, alpha - j)
               * poch(mu + alpha + beta - j, j)
               * phi_val(mu + alpha + beta - j))
        term = pos - neg
        rhs_acc = term if rhs_acc is None else rhs_acc + term
    rhs = scale * rhs_acc
    return lhs, rhs


def _kummer_sides_value(mu, alpha: int, beta, x, digits: int):
    def f_val(c):
        return kummer_1f1_value(c, fl(x, digits), digits)

    def poch(c, n):
        return pochhammer_classical(ex(c), n).to_float_scalar(digits)

    lhs = (poch(mu + beta, alpha) * f_val(mu + alpha) * f_val(mu + beta)
           - poch(mu, alpha) * f_val(mu) * f_val(mu + alpha + beta))
    rhs = None
    for j in range(alpha):
        pos = (poch(mu + 1 + j, alpha - 1 - j)
               * poch(mu + alpha + beta - 1 - j, 1 + j)
               * f_val(mu + 1 + j))
        neg = (poch(mu + j, alpha - j)
               * poch(mu + alpha + beta - j, j)
               * f_val(mu + alpha + beta - j))
        term = pos - neg
        rhs = term if rhs is None else rhs + term
    return lhs, rhs


def q_to_1_limit_study(mu, alpha: int, beta, x, q_sequence, *,
                       digits: int = 50) -> list[Residual]:
    """Deviation of the transformed linearization from its confluent limit.

    For each q the q-side is evaluated at argument (1-q)x and rescaled by
    (1-q)^(-alpha); the residual records how far each side sits from the
    corresponding confluent side.  Deviations should decrease as q -> 1.
    """
    alpha = int(alpha)
    if alpha < 1:
        raise HypothesisError("alpha must be a positive integer")
    mu = as_fraction(mu)
    beta = as_fraction(beta)
    base_lhs, base_rhs = _kummer_sides_value(mu, alpha, beta, x, digits)
    out = []
    for qv in q_sequence:
        q = QBase.floating(qv, digits)
        with mpmath.workdps(digits):
            starving = (1 - q.q.val) < mpmath.mpf(10) ** (-digits / 2)
        note = "precision exhaustion: 1-q below 10^(-digits/2)" if starving else None
        lhs_q, rhs_q = _linearization_sides_value(mu, alpha, beta, x, q)
        res = _compare([(lhs_q, base_lhs), (rhs_q, base_rhs)], "float", alpha,
                       f"q-to-1(q={qv})", note=note)
        out.append(res)
    return out


def verify_recqgamma(mu, beta, q: QBase, m: int) -> Residual:
    """The Gamma_q summation identity at order m.

    In exact mode both sides are multiplied by Gamma_q(mu) Gamma_q(mu+beta)
    and every Gamma ratio is rewritten through the finite ratio identity, so
    the comparison is rational.  Float mode evaluates the Gammas directly.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if q.is_exact:
        mu = as_fraction(mu)
        beta = as_fraction(beta)
        qmu = q.q_power(mu)
        qmb = q.q_power(mu + beta)
        one_minus = 1 - q.q
        # A_j = (q^mu; q)_j, B_j = (q^(mu+beta); q)_j, precomputed
        A = [q.one]
        B = [q.one]
        qk = q.one
        for j in range(m + 2):
            A.append(A[-1] * (1 - qmu * qk))
            B.append(B[-1] * (1 - qmb * qk))
            qk = qk * q.q
        for j in range(1, m + 2):
            if A[j].is_zero() or B[j].is_zero():
                raise CollisionError("Gamma_q pole encountered in the summation")
        lhs = zero_like(q.one)
        for k in range(m + 1):
            lhs = lhs + (q.one / (A[k + 1] * B[m - k]) - q.one / (A[k] * B[m - k + 1]))
        lhs = lhs * one_minus ** (m + 1)
        rhs = (B[m + 1] - A[m + 1]) * one_minus ** (m + 1) / (A[m + 1] * B[m + 1])
        return _compare([(lhs, rhs)], "exact", m,
                        f"recqgamma(mu={mu},beta={beta},m={m})")
    lhs = zero_like(q.one)
    for k in range(m + 1):
        lhs = lhs + (1 / (qgamma(mu + k + 1, q) * qgamma(mu + beta + m - k, q))
                     - 1 / (qgamma(mu + k, q) * qgamma(mu + beta + m - k + 1, q)))
    num = (qpochhammer_finite(q.q_power(mu + beta), q, m + 1)
           - qpochhammer_finite(q.q_power(mu), q, m + 1))
    rhs = num / (qgamma(mu + m + 1, q) * qgamma(mu + beta + m + 1, q)
                 * (1 - q.q) ** (m + 1))
    return _compare([(lhs, rhs)], "float", m,
                    f"recqgamma(mu={mu},beta={beta},m={m})")

"""Truncated power series and the series families used throughout.

A :class:`TruncatedSeries` holds coefficients c_0..c_M in x.  Arithmetic
between series of different orders truncates to the smaller order; the
Cauchy product is the single convolution kernel every Turanian goes
through.

Constructors:

* :func:`tphis_series` -- the generalized q-hypergeometric series with t
  upper and s lower parameters (t <= s+1), coefficient
  (a; q)_n / ((b; q)_n (q; q)_n) * [(-1)^n q^binom(n,2)]^(1+s-t).
* :func:`g_series` -- the Gamma_q-normalized series with all parameters
  shifted by mu and the argument factor (q-1)^(1+s-t) absorbed into the
  coefficients, so evaluation points stay nonnegative.
* :func:`heine_f_series` / :func:`heine_f_tilde_series` -- Heine's
  2phi1(0,0; q^mu; x) and its 1/Gamma_q(mu) normalization.
* :func:`qbessel_j1`, :func:`qbessel_j2`, :func:`modified_qbessel_i1` --
  the two Jackson q-Bessel analogues and the first modified q-Bessel
  function (float mode, point evaluation).
* :func:`kummer_1f1_unit_top` -- the confluent series 1F1(1; b; x) with
  coefficients 1/(b)_n, in plain rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .qcore import QBase, qgamma, qpochhammer_infinite
from .scalar import (
    CollisionError,
    DomainError,
    ExactModeError,
    ExactScalar,
    FloatScalar,
    HypothesisError,
    PoleError,
    Scalar,
    as_fraction,
    ex,
    one_like,
)


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c_0..c_M of a power series in x, with a tail annotation."""

    coeffs: tuple
    order: int
    family_label: str = ""
    tail_note: str | None = None

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                f"order {self.order} needs {self.order + 1} coefficients, "
                f"got {len(self.coeffs)}"
            )

    def coefficient(self, n: int) -> Scalar:
        return self.coeffs[n]

    def eval(self, x) -> Scalar:
        """Horner evaluation at x; a tail note marks an |x| < 1 domain."""
        if self.tail_note is not None:
            if not abs(x) < one_like(x):
                raise DomainError(
                    f"series valid for |x| < 1 only ({self.tail_note})"
                )
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        m = min(self.order, other.order)
        coeffs = tuple(self.coeffs[i] + other.coeffs[i] for i in range(m + 1))
        return TruncatedSeries(coeffs, m, self.family_label, self.tail_note)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        m = min(self.order, other.order)
        coeffs = tuple(self.coeffs[i] - other.coeffs[i] for i in range(m + 1))
        return TruncatedSeries(coeffs, m, self.family_label, self.tail_note)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.order,
                               self.family_label, self.tail_note)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Cauchy product, truncated to the smaller order."""
        m = min(self.order, other.order)
        out = []
        for n in range(m + 1):
            acc = self.coeffs[0] * other.coeffs[n]
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * other.coeffs[n - k]
            out.append(acc)
        return TruncatedSeries(tuple(out), m, self.family_label, self.tail_note)

    def scaled(self, c: Scalar) -> "TruncatedSeries":
        return TruncatedSeries(tuple(c * v for v in self.coeffs), self.order,
                               self.family_label, self.tail_note)

    def to_float(self, digits: int) -> "TruncatedSeries":
        coeffs = tuple(
            c.to_float_scalar(digits) if isinstance(c, ExactScalar) else c
            for c in self.coeffs
        )
        return TruncatedSeries(coeffs, self.order, self.family_label, self.tail_note)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)


def series_eval(s: TruncatedSeries, x) -> Scalar:
    return s.eval(x)


def series_sum(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a - b


def cauchy_product(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def zero_series(q: QBase, order: int, label: str = "zero") -> TruncatedSeries:
    return TruncatedSeries(tuple(q.zero for _ in range(order + 1)), order, label)


@dataclass(frozen=True)
class PhiSpec:
    """Upper/lower parameter values of a t-phi-s series over a base q.

    The entries are the series parameters themselves (for instance q^(a+mu),
    or literal 0); the convergence constraint t <= s+1 is enforced here.
    """

    upper: tuple
    lower: tuple
    q: QBase

    def __post_init__(self):
        if len(self.upper) > len(self.lower) + 1:
            raise DomainError(
                f"t={len(self.upper)} upper parameters need t <= s+1 "
                f"(s={len(self.lower)})"
            )


def tphis_series(spec: PhiSpec, order: int) -> TruncatedSeries:
    """The generalized q-hypergeometric series as a truncated series in z.

    Coefficient n is (a; q)_n / ((b; q)_n (q; q)_n) times
    [(-1)^n q^binom(n,2)]^(1+s-t).  Literal-zero upper entries contribute
    factor 1.  A vanishing lower factor raises CollisionError.
    """
    q = spec.q
    t, s = len(spec.upper), len(spec.lower)
    d = 1 + s - t
    upper = [q.scalar(a) for a in spec.upper]
    lower = [q.scalar(b) for b in spec.lower]
    coeffs = [q.one]
    c = q.one
    qn1 = q.one          # q^(n-1)
    qn = q.q             # q^n
    for n in range(1, order + 1):
        num = q.one
        for a in upper:
            num = num * (1 - a * qn1)
        den = 1 - qn
        for b in lower:
            factor = 1 - b * qn1
            if factor.is_zero():
                raise CollisionError(
                    f"lower parameter hits q^(-{n - 1}); (b; q)_n vanishes at n={n}"
                )
            den = den * factor
        c = c * num / den
        if d:
            c = c * ((-1) ** d) * (qn1 ** d)
        coeffs.append(c)
        qn1 = qn1 * q.q
        qn = qn * q.q
    tail = "converges for |z| < 1 only" if t == s + 1 else None
    return TruncatedSeries(tuple(coeffs), order, f"tphis({t},{s})", tail)


def heine_f_series(mu, q: QBase, order: int) -> TruncatedSeries:
    """Heine's 2phi1(0, 0; q^mu; x): coefficient n = 1/((q^mu; q)_n (q; q)_n)."""
    mu_cmp = as_fraction(mu) if q.is_exact else mu
    if not mu_cmp > 0:
        raise HypothesisError(f"heine_f needs mu > 0, got mu={mu}")
    spec = PhiSpec((q.zero, q.zero), (q.q_power(mu),), q)
    ts = tphis_series(spec, order)
    return TruncatedSeries(ts.coeffs, order, f"heine_f(mu={mu})", ts.tail_note)


def heine_f_tilde_series(mu, q: QBase, order: int, *,
                         absolute: bool = False) -> TruncatedSeries:
    """Heine's series normalized by 1/Gamma_q(mu).

    By the Gamma-ratio identity the coefficients relative to the common
    factor 1/Gamma_q(mu) coincide with those of :func:`heine_f_series`;
    that relative form is the default and is exact.  With ``absolute=True``
    (float mode only) the true 1/Gamma_q(mu) scale is applied.
    """
    base = heine_f_series(mu, q, order)
    if not absolute:
        return TruncatedSeries(base.coeffs, order,
                               f"heine_f_tilde(mu={mu})/rel", base.tail_note)
    if q.is_exact:
        raise ExactModeError("absolute tilde normalization needs float mode")
    scale = 1 / qgamma(mu, q)
    return TruncatedSeries(tuple(scale * c for c in base.coeffs), order,
                           f"heine_f_tilde(mu={mu})", base.tail_note)


def _validate_g_params(a, b, mu, q):
    a = tuple(as_fraction(v) if q.is_exact else v for v in a)
    b = tuple(as_fraction(v) if q.is_exact else v for v in b)
    mu = as_fraction(mu) if q.is_exact else mu
    if len(a) > len(b) + 1:
        raise DomainError(f"t={len(a)} needs t <= s+1 (s={len(b)})")
    if any(not v >= 0 for v in a) or any(not v >= 0 for v in b):
        raise HypothesisError("parameter vectors must be nonnegative")
    if not mu >= 0:
        raise HypothesisError(f"mu must be nonnegative, got {mu}")
    return a, b, mu


def g_relative_prefactor(a, b, ref_mu, sigma: int, q: QBase) -> Scalar:
    """Gamma_q(a+ref+sigma)/Gamma_q(b+ref+sigma) relative to the same ratio
    at ref, rewritten through the finite Gamma-ratio identity.

    Exact whenever the exponents sit on the half-integer grid and sigma is a
    nonnegative integer.
    """
    if sigma < 0:
        raise ValueError("sigma must be a nonnegative integer")
    t, s = len(a), len(b)
    result = q.one
    for ai in a:
        base = q.q_power(ai + ref_mu)
        cur = q.one
        qk = q.one
        for _ in range(sigma):
            cur = cur * (1 - base * qk)
            qk = qk * q.q
        result = result * cur
    for bj in b:
        base = q.q_power(bj + ref_mu)
        cur = q.one
        qk = q.one
        for _ in range(sigma):
            cur = cur * (1 - base * qk)
            qk = qk * q.q
        result = result / cur
    if sigma and s != t:
        result = result * ((1 - q.q) ** (sigma * (s - t)))
    return result


def g_series(a: Sequence, b: Sequence, mu, q: QBase, order: int, *,
             ref_mu=None, absolute: bool = False) -> TruncatedSeries:
    """The Gamma_q-normalized series in x, with the (q-1)^(1+s-t) argument
    factor absorbed into the coefficients.

    Coefficient n equals

        prefactor * (q^(a+mu); q)_n / ((q^(b+mu); q)_n (q; q)_n)
                  * q^((1+s-t) binom(n,2)) * (1-q)^((1+s-t) n),

    so for nonnegative a, b, mu all raw coefficients are positive and the
    natural evaluation points are x >= 0.

    In exact mode the Gamma prefactor is carried relative to the reference
    shift ``ref_mu`` (default: mu itself, making the prefactor 1); mu must
    exceed the reference by a nonnegative integer.  ``absolute=True``
    computes the true Gamma ratio and needs float mode.
    """
    a, b, mu = _validate_g_params(a, b, mu, q)
    t, s = len(a), len(b)
    d = 1 + s - t

    if absolute:
        if q.is_exact:
            raise ExactModeError(
                "the absolute Gamma prefactor is transcendental; use ref_mu "
                "or a float QBase"
            )
        prefactor = q.one
        for ai in a:
            prefactor = prefactor * qgamma(ai + mu, q)
        for bj in b:
            prefactor = prefactor / qgamma(bj + mu, q)
    else:
        ref = mu if ref_mu is None else (as_fraction(ref_mu) if q.is_exact else ref_mu)
        sigma_raw = mu - ref
        if q.is_exact:
            if sigma_raw.denominator != 1 or sigma_raw < 0:
                raise HypothesisError(
                    f"mu must exceed ref_mu by a nonnegative integer, "
                    f"got shift {sigma_raw}"
                )
            sigma = int(sigma_raw)
        else:
            shift = float(sigma_raw.val if isinstance(sigma_raw, FloatScalar)
                          else sigma_raw)
            sigma = round(shift)
            if sigma < 0 or abs(shift - sigma) > 1e-9:
                raise HypothesisError(
                    f"mu must exceed ref_mu by a nonnegative integer, "
                    f"got shift {shift}"
                )
        prefactor = g_relative_prefactor(a, b, ref, sigma, q)

    upper = tuple(q.q_power(ai + mu) for ai in a)
    lower = tuple(q.q_power(bj + mu) for bj in b)
    coeffs = [prefactor]
    c = prefactor
    one_minus_q_d = (1 - q.q) ** d if d else q.one
    qn1 = q.one
    qn = q.q
    for n in range(1, order + 1):
        num = q.one
        for u in upper:
            num = num * (1 - u * qn1)
        den = 1 - qn
        for v in lower:
            factor = 1 - v * qn1
            if factor.is_zero():
                raise CollisionError(f"lower parameter collision at n={n}")
            den = den * factor
        c = c * num / den
        if d:
            c = c * one_minus_q_d * (qn1 ** d)
        coeffs.append(c)
        qn1 = qn1 * q.q
        qn = qn * q.q
    tail = "converges for |x| < 1 only" if t == s + 1 else None
    label = f"g(a={list(map(str, a))},b={list(map(str, b))},mu={mu})"
    return TruncatedSeries(tuple(coeffs), order, label, tail)


def geometric_tail_order(x_abs, tol, *, minimum: int = 40,
                         cap: int = 200_000) -> int:
    """Order N with x^N / (1-x) below tol, for series with bounded coefficients."""
    with mpmath.workdps(30):
        if isinstance(x_abs, FloatScalar):
            xv = mpmath.mpf(x_abs.val)
        elif isinstance(x_abs, ExactScalar):
            xv = x_abs.to_mpf(30)
        elif isinstance(x_abs, Fraction):
            xv = mpmath.mpf(x_abs.numerator) / x_abs.denominator
        else:
            xv = mpmath.mpf(x_abs)
        if xv <= 0:
            return minimum
        if xv >= 1:
            raise DomainError("geometric tail needs |x| < 1")
        n = mpmath.log(mpmath.mpf(tol) * (1 - xv)) / mpmath.log(xv)
        n = int(mpmath.ceil(n)) + 4
    return min(max(n, minimum), cap)


def _float_only(q: QBase, what: str):
    if q.is_exact:
        raise ExactModeError(f"{what} evaluates infinite products; use float mode")


def qbessel_j1(alpha, y, q: QBase, order: int) -> Scalar:
    """First Jackson q-Bessel function at y, for |y| < 2 (float mode)."""
    _float_only(q, "qbessel_j1")
    y = q.scalar(y)
    if not abs(y) < FloatScalar(2, q.digits):
        raise DomainError("qbessel_j1 needs |y| < 2")
    alpha_s = q.scalar(alpha)
    half_y = y / 2
    if y.is_zero():
        if alpha_s.is_zero():
            return q.one
        if alpha_s > 0:
            return q.zero
        raise DomainError("qbessel_j1 diverges at y=0 for alpha < 0")
    with mpmath.workdps(q.digits):
        if y.val < 0 and mpmath.floor(alpha_s.val) != alpha_s.val:
            raise DomainError("negative y needs integer alpha")
    prefactor = (half_y ** alpha_s) * qpochhammer_infinite(
        q.q ** (alpha_s + 1), q) / qpochhammer_infinite(q.q, q)
    z = -(y * y) / 4
    b = q.q ** (alpha_s + 1)
    total = q.one
    term = q.one
    qn1 = q.one
    qn = q.q
    for _ in range(1, order + 1):
        term = term * z / ((1 - b * qn1) * (1 - qn))
        total = total + term
        qn1 = qn1 * q.q
        qn = qn * q.q
    return prefactor * total


def qbessel_j2(alpha, y, q: QBase, order: int) -> Scalar:
    """Second Jackson q-Bessel function at y (entire in y; float mode)."""
    _float_only(q, "qbessel_j2")
    y = q.scalar(y)
    alpha_s = q.scalar(alpha)
    half_y = y / 2
    if y.is_zero():
        if alpha_s.is_zero():
            return q.one
        if alpha_s > 0:
            return q.zero
        raise DomainError("qbessel_j2 diverges at y=0 for alpha < 0")
    with mpmath.workdps(q.digits):
        if y.val < 0 and mpmath.floor(alpha_s.val) != alpha_s.val:
            raise DomainError("negative y needs integer alpha")
    b = q.q ** (alpha_s + 1)
    prefactor = (half_y ** alpha_s) * qpochhammer_infinite(
        b, q) / qpochhammer_infinite(q.q, q)
    z = -(y * y) * b / 4
    total = q.one
    term = q.one
    qn1 = q.one
    qn = q.q
    q2 = q.q * q.q
    qpow2 = q.one        # q^(2(n-1))
    for _ in range(1, order + 1):
        term = term * z * qpow2 / ((1 - b * qn1) * (1 - qn))
        total = total + term
        qpow2 = qpow2 * q2
        qn1 = qn1 * q.q
        qn = qn * q.q
    return prefactor * total


def modified_qbessel_i1(nu, y, q: QBase, order: int) -> Scalar:
    """First modified q-Bessel function at y in (0, 2), nu > -1 (float mode)."""
    _float_only(q, "modified_qbessel_i1")
    y = q.scalar(y)
    if not (FloatScalar(0, q.digits) < y and y < FloatScalar(2, q.digits)):
        raise DomainError("modified_qbessel_i1 needs 0 < y < 2")
    nu_s = q.scalar(nu)
    with mpmath.workdps(q.digits):
        nv = nu_s.val
        if nv <= -1:
            if nv == mpmath.floor(nv):
                raise PoleError(f"Gamma_q pole at nu={nv}")
            raise DomainError("modified_qbessel_i1 needs nu > -1")
    x = (y / 2) ** 2
    b = q.q ** (nu_s + 1)
    total = q.one
    term = q.one
    qn1 = q.one
    qn = q.q
    for _ in range(1, order + 1):
        term = term * x / ((1 - b * qn1) * (1 - qn))
        total = total + term
        qn1 = qn1 * q.q
        qn = qn * q.q
    scale = ((y / 2) ** nu_s) / (((1 - q.q) ** nu_s) * qgamma(nu_s + 1, q))
    return scale * total


def kummer_1f1_unit_top(b, order: int) -> TruncatedSeries:
    """1F1(1; b; x) as a truncated series: coefficient n = 1/(b)_n (exact)."""
    bf = as_fraction(b)
    if bf.denominator == 1 and bf <= 0:
        raise PoleError(f"1F1 bottom parameter pole at b={bf}")
    coeffs = [ex(1)]
    c = ex(1)
    for n in range(1, order + 1):
        factor = bf + (n - 1)
        if factor == 0:
            raise PoleError(f"(b)_n vanishes at n={n} for b={bf}")
        c = c / ex(factor)
        coeffs.append(c)
    return TruncatedSeries(tuple(coeffs), order, f"1F1(1;{bf};x)")


def kummer_1f1_value(b, x, digits: int, order: int | None = None) -> FloatScalar:
    """Float evaluation of 1F1(1; b; x) by direct summation."""
    bf = as_fraction(b) if isinstance(b, (int, str, Fraction)) else b
    with mpmath.workdps(digits):
        bv = (mpmath.mpf(bf.numerator) / bf.denominator
              if isinstance(bf, Fraction) else mpmath.mpf(bf))
        xv = x.val if isinstance(x, FloatScalar) else mpmath.mpf(x)
        total = mpmath.mpf(1)
        term = mpmath.mpf(1)
        n = 0
        limit = order or (10 * digits + 200)
        while n < limit:
            term = term * xv / (bv + n)
            total += term
            n += 1
            if abs(term) < mpmath.mpf(10) ** (-digits - 8) * max(abs(total), 1):
                break
    return FloatScalar(total, digits)

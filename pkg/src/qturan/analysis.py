"""Structural certificates: complete monotonicity, multiplicative convexity,
and the Laplace representation of an entire nonnegative-coefficient series.

Complete monotonicity is certified through forward finite differences on a
uniform grid: for a completely monotone function the alternating-sign
differences (-1)^n Delta^n f are nonnegative at every order, which is the
literal testable surrogate for derivative sign alternation.  No symbolic
derivatives are taken anywhere.

The Laplace side represents sum_m c_m x^m (entire, c_m >= 0) as
c_0 + integral_0^infty e^(-t/x) rho(t) dt with density
rho(t) = sum_{m>=1} c_m t^(m-1)/(m-1)!, validated against the closed-form
transform integral_0^infty e^(-t/x) t^(m-1)/(m-1)! dt = x^m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath

from .identities import Residual
from .scalar import (
    DimensionError,
    DomainError,
    ExactScalar,
    FloatScalar,
    Scalar,
    fl,
)
from .series import TruncatedSeries


def complete_monotonicity_check(evaluator, y_grid, max_order: int):
    """Alternating-sign test for forward differences up to max_order.

    The grid must be uniform and longer than max_order.  Returns
    (ok, margins) where margins[n] is the minimum of (-1)^n Delta^n f over
    the grid windows of order n = 0..max_order.
    """
    if len(y_grid) <= max_order:
        raise DimensionError(
            f"grid of {len(y_grid)} points cannot support order {max_order}"
        )
    spacings = [y_grid[i + 1] - y_grid[i] for i in range(len(y_grid) - 1)]
    h0 = spacings[0]
    for h in spacings[1:]:
        rel = abs(h - h0) / abs(h0)
        if not rel < fl("1e-20", 30):
            raise DimensionError("grid must be uniform")
    level = [evaluator(y) for y in y_grid]
    margins = [min(level)]
    sign = 1
    for _ in range(max_order):
        level = [b - a for a, b in zip(level, level[1:])]
        sign = -sign
        margins.append(min(v * sign for v in level))
    ok = all(m.sign() >= 0 for m in margins)
    return ok, margins


def multiplicative_convexity_check(evaluator, pairs):
    """phi(sqrt(x1 x2)) <= sqrt(phi(x1) phi(x2)) on each positive pair.

    Valid for series with nonnegative coefficients; returns (ok, margins)
    with margin = sqrt(phi(x1) phi(x2)) - phi(sqrt(x1 x2)).
    """
    margins = []
    for x1, x2 in pairs:
        if not (x1.sign() > 0 and x2.sign() > 0):
            raise DomainError("multiplicative convexity needs positive points")
        geo = (x1 * x2).sqrt()
        rhs = (evaluator(x1) * evaluator(x2)).sqrt()
        margins.append(rhs - evaluator(geo))
    return all(m.sign() >= 0 for m in margins), margins


@dataclass(frozen=True)
class MeasureDensity:
    """Atom at zero plus the polynomial Laplace density of an entire series.

    density(t) = sum_{m=1}^{order} coeff_m t^(m-1)/(m-1)!; the weight is
    fixed by the transform identity
    integral_0^infty e^(-t/x) t^(m-1)/(m-1)! dt = x^m.
    """

    atom_at_zero: Scalar
    density_coeffs: tuple
    order: int

    def __post_init__(self):
        if len(self.density_coeffs) != self.order:
            raise ValueError("density needs coefficients for m = 1..order")


def measure_from_series(ts: TruncatedSeries) -> MeasureDensity:
    return MeasureDensity(ts.coeffs[0], tuple(ts.coeffs[1:]), ts.order)


def tau_density(md: MeasureDensity, t: Scalar) -> Scalar:
    """The density at t > 0 (the atom at zero is not included)."""
    total = None
    for m, c in enumerate(md.density_coeffs, start=1):
        term = c * (t ** (m - 1))
        if m > 1:
            term = term / factorial(m - 1)
        total = term if total is None else total + term
    if total is None:
        return t - t
    return total


def _density_mpf(md: MeasureDensity, digits: int):
    with mpmath.workdps(digits):
        coeffs = []
        for m, c in enumerate(md.density_coeffs, start=1):
            v = c.to_mpf(digits) if isinstance(c, ExactScalar) else c.val
            coeffs.append(v / mpmath.mpf(factorial(m - 1)))

    def rho(t):
        acc = mpmath.mpf(0)
        for v in reversed(coeffs):
            acc = acc * t + v
        return acc

    return rho, [abs(v) for v in coeffs]


def _default_upper_limit(abs_coeffs, x_max, tol, digits):
    # grow T until e^(-T/x_max) * sum |c_m| T^(m-1)/(m-1)! drops below tol
    with mpmath.workdps(digits):
        T = mpmath.mpf(40)
        for _ in range(30):
            envelope = mpmath.mpf(0)
            for v in reversed(abs_coeffs):
                envelope = envelope * T + v
            if mpmath.e ** (-T / x_max) * max(envelope, 1) < tol:
                return T
            T = T * 2
    raise DomainError("no finite quadrature window meets the tolerance")


def laplace_representation_check(md: MeasureDensity, x_grid, *,
                                 digits: int = 50, upper_limit=None,
                                 tol=None) -> Residual:
    """Adaptive quadrature of the Laplace side against direct series evaluation.

    For each x the integral c_0 + integral_0^T e^(-t/x) density(t) dt is
    compared to c_0 + sum_m c_m x^m; T defaults to the first window where
    the integrand envelope falls below the tolerance.
    """
    # 15 guard digits absorb quadrature round-off below the reported digits
    work = digits + 15
    rho, abs_coeffs = _density_mpf(md, work)
    atom = (md.atom_at_zero.to_mpf(work)
            if isinstance(md.atom_at_zero, ExactScalar) else md.atom_at_zero.val)
    with mpmath.workdps(work):
        if tol is None:
            tol = mpmath.mpf(10) ** (10 - digits)
        xs = []
        for x in x_grid:
            if isinstance(x, (ExactScalar, FloatScalar)):
                xs.append(x.to_mpf(work))
            elif isinstance(x, Fraction):
                xs.append(mpmath.mpf(x.numerator) / x.denominator)
            else:
                xs.append(mpmath.mpf(x))
        if any(x <= 0 for x in xs):
            raise DomainError("evaluation points must be positive")
        x_max = max(xs)
        T = mpmath.mpf(upper_limit) if upper_limit is not None else \
            _default_upper_limit(abs_coeffs, x_max, tol, digits)
        pairs = []
        for x in xs:
            # segment geometrically so the exponential decay never spans
            # more scales than the quadrature can track in one panel
            points = [mpmath.mpf(0)]
            seg = x
            while points[-1] < T:
                points.append(min(points[-1] + seg, T))
                seg = seg * 2
            integral = atom + mpmath.quad(
                lambda t: mpmath.e ** (-t / x) * rho(t), points)
            series_side = atom
            xp = mpmath.mpf(1)
            for m, c in enumerate(md.density_coeffs, start=1):
                xp = xp * x
                v = c.to_mpf(work) if isinstance(c, ExactScalar) else c.val
                series_side += v * xp
            pairs.append((FloatScalar(integral, digits),
                          FloatScalar(series_side, digits)))
    from .identities import _compare
    return _compare(pairs, "float", md.order, "laplace-representation")

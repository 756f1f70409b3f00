"""Chain conditions and their majorization shortcut.

Given nonnegative parameter vectors a (size t) and b (size s) over a base q,
the derived vectors are c_k = q^(-a_k) - 1 and d_k = q^(-b_k) - 1.  The two
chain conditions decide the sign regime of the normalized Turanian:

* case (a), for s <= t <= s+1:
      e_t(c)/e_s(d) <= e_{t-1}(c)/e_{s-1}(d) <= ... <= e_{t-s}(c),
* case (b), for t <= s: the same chain with c and d exchanged.

Both are evaluated by cross-multiplication so vanishing symmetric
polynomials (possible only when a parameter is 0) never divide; ties count
as satisfying the non-strict chain.

A weak-supermajorization witness on a subvector is a sufficient condition
for the corresponding chain; the search is exhaustive over subvectors.  The
rational function R(y) = prod(c_k + y) / prod(d_k + y) is monotone on
(0, infinity) whenever the matching chain holds, and the probe asserts that
direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Sequence

from .qcore import QBase, elementary_symmetric, weak_supermajorizes
from .scalar import (
    DimensionError,
    FloatScalar,
    QTuranError,
    Scalar,
    as_fraction,
    one_like,
)


@dataclass(frozen=True)
class ChainVerdict:
    applies_case_a: bool
    applies_case_b: bool
    via_majorization: bool
    witness_subvector: tuple[int, ...] | None


class RtsDirection(Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    CONSTANT = "constant"
    NON_MONOTONE = "non-monotone"


def derive_cd(a: Sequence, b: Sequence, q: QBase):
    """c_k = q^(-a_k) - 1 and d_k = q^(-b_k) - 1, exact on the half grid."""
    def one_vec(vec):
        out = []
        for entry in vec:
            e = as_fraction(entry) if q.is_exact else entry
            if not e >= 0:
                raise QTuranError(f"parameter {entry} must be nonnegative")
            out.append(q.q_power(-e) - 1)
        return tuple(out)

    return one_vec(a), one_vec(b)


def chain_condition_a(c: Sequence[Scalar], d: Sequence[Scalar]) -> bool:
    """The case-(a) chain, cross-multiplied; requires s <= t <= s+1."""
    t, s = len(c), len(d)
    if not s <= t <= s + 1:
        raise DimensionError(f"case (a) needs s <= t <= s+1, got t={t}, s={s}")
    ec = elementary_symmetric(c)
    ed = elementary_symmetric(d)
    for j in range(s):
        lhs = ec[t - j] * ed[s - j - 1]
        rhs = ec[t - j - 1] * ed[s - j]
        if not lhs <= rhs:
            return False
    return True


def chain_condition_b(c: Sequence[Scalar], d: Sequence[Scalar]) -> bool:
    """The case-(b) chain (roles of c and d exchanged); requires t <= s."""
    t, s = len(c), len(d)
    if not t <= s:
        raise DimensionError(f"case (b) needs t <= s, got t={t}, s={s}")
    ec = elementary_symmetric(c)
    ed = elementary_symmetric(d)
    for j in range(t):
        lhs = ed[s - j] * ec[t - j - 1]
        rhs = ed[s - j - 1] * ec[t - j]
        if not lhs <= rhs:
            return False
    return True


def majorization_sufficiency(c: Sequence[Scalar], d: Sequence[Scalar]) -> ChainVerdict:
    """Search subvectors for a weak-supermajorization witness.

    For t >= s, a subvector c' of c with d majorized (weakly, from above) by
    c' forces chain (a); for t <= s, a subvector d' with c majorized by d'
    forces chain (b).  When a witness exists and the chain's dimensional
    hypothesis holds, the implication is asserted.
    """
    t, s = len(c), len(d)
    witness = None
    via = False
    if t >= s:
        for idx in combinations(range(t), s):
            sub = [c[i] for i in idx]
            if weak_supermajorizes(d, sub):
                witness, via = idx, True
                break
    else:
        for idx in combinations(range(s), t):
            sub = [d[i] for i in idx]
            if weak_supermajorizes(sub, c):
                witness, via = idx, True
                break

    case_a = s <= t <= s + 1 and chain_condition_a(c, d)
    case_b = t <= s and chain_condition_b(c, d)

    if via:
        implied = case_a if t >= s else case_b
        if not implied:
            raise QTuranError(
                "majorization witness found but the implied chain fails"
            )
    return ChainVerdict(case_a, case_b, via, witness)


def rts_value(c: Sequence[Scalar], d: Sequence[Scalar], y: Scalar) -> Scalar:
    num = one_like(y)
    for ck in c:
        num = num * (ck + y)
    den = one_like(y)
    for dk in d:
        den = den * (dk + y)
    return num / den


def rts_monotonicity_probe(c: Sequence[Scalar], d: Sequence[Scalar],
                           grid: Sequence[Scalar], *,
                           rel_tol=None) -> RtsDirection:
    """Classify R(y) = prod(c_k+y)/prod(d_k+y) on an increasing positive grid.

    Non-monotone needs a strict local reversal beyond the float tolerance
    (exact values compare directly).  When the matching chain condition
    holds, the direction it predicts is asserted.
    """
    if len(grid) < 2:
        raise DimensionError("grid needs at least two points")
    values = [rts_value(c, d, y) for y in grid]
    ups = downs = 0
    for prev, cur in zip(values, values[1:]):
        diff = cur - prev
        if isinstance(diff, FloatScalar):
            tol = rel_tol if rel_tol is not None else 10 ** (6 - diff.digits)
            scale = max(abs(prev).val, abs(cur).val, 1)
            if abs(diff.val) <= tol * scale:
                continue
        s = diff.sign()
        if s > 0:
            ups += 1
        elif s < 0:
            downs += 1
    if ups and downs:
        direction = RtsDirection.NON_MONOTONE
    elif ups:
        direction = RtsDirection.INCREASING
    elif downs:
        direction = RtsDirection.DECREASING
    else:
        direction = RtsDirection.CONSTANT

    t, s = len(c), len(d)
    if t >= s and s <= t <= s + 1 and chain_condition_a(c, d):
        if direction == RtsDirection.DECREASING or direction == RtsDirection.NON_MONOTONE:
            raise QTuranError("chain (a) holds but R is not increasing")
    if t <= s and chain_condition_b(c, d):
        if direction == RtsDirection.INCREASING or direction == RtsDirection.NON_MONOTONE:
            raise QTuranError("chain (b) holds but R is not decreasing")
    return direction

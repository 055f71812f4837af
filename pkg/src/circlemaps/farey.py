"""Arithmetic constraints on rotation numbers at a discontinuity.

Fraction sets are returned as sorted tuples of irreducible Fractions.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from .errors import ValidationError
from .rational import as_fraction

FractionSet = tuple[Fraction, ...]


def _ordered(lo, hi) -> tuple[Fraction, Fraction]:
    lo, hi = as_fraction(lo), as_fraction(hi)
    if not lo < hi:
        raise ValidationError(f"need lower < upper, got {lo} and {hi}")
    return lo, hi


def check_pair(nu0, nu1) -> bool:
    """Whether two rotation numbers ``nu0 < nu1`` can belong to maps at zero
    Levy distance: ``(p1-1)/q1 <= p0/q0 < p1/q1 <= (p0+1)/q0``."""
    nu0, nu1 = _ordered(nu0, nu1)
    p0, q0 = nu0.numerator, nu0.denominator
    p1, q1 = nu1.numerator, nu1.denominator
    return Fraction(p1 - 1, q1) <= nu0 < nu1 <= Fraction(p0 + 1, q0)


def q_range(nu_minus, nu_plus) -> tuple[int, int]:
    """Inclusive window of denominators that can contribute to :func:`sset`."""
    lo, hi = _ordered(nu_minus, nu_plus)
    pm, qm = lo.numerator, lo.denominator
    pp, qp = hi.numerator, hi.denominator
    delta = pp * qm - pm * qp
    return -((-(qm + qp)) // delta), (2 * qm * qp) // delta


def _admissible(q: int, lo: Fraction, hi: Fraction) -> Optional[Fraction]:
    p = math.floor(q * lo) + 1
    if math.ceil(q * hi) == p + 1:
        return Fraction(p, q)
    return None


def sset(nu_minus, nu_plus) -> FractionSet:
    """All ``(floor(q lo) + 1) / q`` with ``ceil(q hi) = floor(q lo) + 2``."""
    lo, hi = _ordered(nu_minus, nu_plus)
    q_min, q_max = q_range(lo, hi)
    found = {_admissible(q, lo, hi) for q in range(max(q_min, 1), q_max + 1)}
    found.discard(None)
    return tuple(sorted(found))


def excluded_center(nu_minus, nu_plus) -> Optional[Fraction]:
    """The irreducible ``p/q`` with ``(p-1)/q = lo``, ``(p+1)/q = hi`` and odd
    ``q``, if it exists.  No lift with these one-sided rotation numbers has it
    as its own rotation number."""
    lo, hi = _ordered(nu_minus, nu_plus)
    q = 2 / (hi - lo)
    if q.denominator != 1:
        return None
    q = int(q)
    p = q * lo + 1
    if p.denominator != 1 or q % 2 == 0:
        return None
    p = int(p)
    if math.gcd(p, q) != 1:
        return None
    return Fraction(p, q)

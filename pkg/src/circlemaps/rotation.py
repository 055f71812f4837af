"""Exact rotation numbers by orbit iteration with first-repeat detection."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import BudgetError, ValidationError
from .lift import Lift, interpolate, left_map, power, right_map, sandwich_homeos
from .rational import as_fraction, format_fraction

log = logging.getLogger(__name__)

DEFAULT_MAX_ITER = 100_000
DEFAULT_MAX_BITS = 4096
# largest denominator tried when resolving a continuous map by fixed points
DEFAULT_MAX_Q = 64


@dataclass(frozen=True)
class PeriodicOrbit:
    """One periodic orbit, as its points mod 1 in increasing order."""

    points: tuple[Fraction, ...]
    p: int
    q: int

    @property
    def rotation(self) -> Fraction:
        return Fraction(self.p, self.q)

    def enumerate(self, anchor: Fraction | None = None) -> Callable[[int], Fraction]:
        """The increasing enumeration ``j -> x_j`` of the lifted orbit, with
        ``x_0 = anchor`` (default: the smallest point)."""
        pts = self.points
        n = len(pts)
        if anchor is None:
            shift, base = 0, 0
        else:
            anchor = as_fraction(anchor)
            base = math.floor(anchor)
            shift = pts.index(anchor - base)

        def x(j: int) -> Fraction:
            k, r = divmod(j + shift, n)
            return pts[r] + k + base

        return x


@dataclass(frozen=True)
class RotationResult:
    kind: str  # "exact" or "interval"
    value: Optional[Fraction] = None
    bounds: Optional[tuple[Fraction, Fraction]] = None
    witness: Optional[PeriodicOrbit] = None
    n: Optional[int] = None

    @property
    def exact(self) -> bool:
        return self.kind == "exact"

    def __str__(self):
        if self.exact:
            return f"exact {format_fraction(self.value)}"
        lo, hi = self.bounds
        return f"interval [{format_fraction(lo)}, {format_fraction(hi)}] n={self.n}"


def _check_bits(x: Fraction, max_bits: int) -> None:
    if x.denominator.bit_length() > max_bits:
        raise BudgetError(f"iterate denominator exceeds the {max_bits}-bit bound")


def orbit(L: Lift, x0, n: int, max_bits: int = DEFAULT_MAX_BITS) -> list[Fraction]:
    """``[x0, f(x0), ..., f^n(x0)]``."""
    if n < 0:
        raise ValidationError("orbit length must be non-negative")
    xs = [as_fraction(x0)]
    for _ in range(n):
        x = L(xs[-1])
        _check_bits(x, max_bits)
        xs.append(x)
    return xs


def _cycle(L: Lift, x0: Fraction, max_iter: int, max_bits: int):
    """Iterate until a fractional part repeats.

    Returns ``(xs, k)`` where ``xs[k]`` and ``xs[-1]`` share a fractional part,
    or ``(xs, None)`` if ``max_iter`` steps produced no repeat.
    """
    seen = {}
    xs = []
    x = x0
    for _ in range(max_iter + 1):
        r = x - math.floor(x)
        k = seen.get(r)
        if k is not None:
            xs.append(x)
            return xs, k
        seen[r] = len(xs)
        xs.append(x)
        if len(xs) > max_iter:
            break
        x = L(x)
        _check_bits(x, max_bits)
    return xs, None


def _orbit_from_cycle(xs: list[Fraction], k: int) -> PeriodicOrbit:
    q = len(xs) - 1 - k
    p = xs[-1] - xs[k]
    points = tuple(sorted(x - math.floor(x) for x in xs[k:-1]))
    nu = Fraction(int(p), q)
    return PeriodicOrbit(points, nu.numerator, nu.denominator)


def rotation_number(
    L: Lift,
    x0=0,
    max_iter: int = DEFAULT_MAX_ITER,
    max_bits: int = DEFAULT_MAX_BITS,
) -> RotationResult:
    """Rotation number of ``L`` started from ``x0``.

    The orbit is followed until its fractional part repeats; the displacement
    over the cycle gives ``p/q`` exactly.  For a continuous lift whose orbit
    only converges to a cycle (any map with slopes other than 0 and 1 can do
    this) the value is resolved instead by solving ``f^q(x) = x + p`` exactly
    for the candidate fractions left by the iteration.  If neither works an
    interval of width ``2/n`` containing the rotation number is returned.
    """
    if max_iter < 1:
        raise ValidationError("max_iter must be at least 1")
    x0 = as_fraction(x0)
    try:
        xs, k = _cycle(L, x0, max_iter, max_bits)
    except BudgetError:
        if not L.is_continuous:
            raise
        xs = orbit_until_budget(L, x0, max_iter, max_bits)
        k = None
        log.debug("denominator bound hit after %d steps; solving for fixed points", len(xs) - 1)
    if k is not None:
        w = _orbit_from_cycle(xs, k)
        return RotationResult("exact", value=w.rotation, witness=w)
    n = len(xs) - 1
    if n == 0:
        raise BudgetError(f"first iterate already exceeds the {max_bits}-bit bound")
    m = xs[-1] - xs[0]
    bounds = ((m - 1) / n, (m + 1) / n)
    if L.is_continuous:
        found = _resolve_continuous(L, bounds)
        if found is not None:
            return RotationResult("exact", value=found.rotation, witness=found)
    return RotationResult("interval", bounds=bounds, n=n)


def orbit_until_budget(L: Lift, x0: Fraction, max_iter: int, max_bits: int) -> list[Fraction]:
    xs = [x0]
    for _ in range(max_iter):
        x = L(xs[-1])
        if x.denominator.bit_length() > max_bits:
            break
        xs.append(x)
    return xs


def _candidates(lo: Fraction, hi: Fraction, max_q: int):
    for q in range(1, max_q + 1):
        for p in range(math.ceil(q * lo), math.floor(q * hi) + 1):
            if math.gcd(p, q) == 1:
                yield Fraction(p, q)


def _resolve_continuous(L: Lift, bounds, max_q: int = DEFAULT_MAX_Q) -> Optional[PeriodicOrbit]:
    for cand in _candidates(*bounds, max_q):
        sign, x = compare_rotation(L, cand)
        if sign == 0:
            return _witness_at(L, x, cand)
    return None


def _witness_at(L: Lift, x: Fraction, nu: Fraction) -> PeriodicOrbit:
    pts = []
    y = x
    for _ in range(nu.denominator):
        pts.append(y - math.floor(y))
        y = L(y)
    return PeriodicOrbit(tuple(sorted(pts)), nu.numerator, nu.denominator)


def compare_rotation(L: Lift, target) -> tuple[int, Optional[Fraction]]:
    """Compare the rotation number of a continuous lift with ``target = p/q``.

    Returns ``(sign, x)`` where sign is the sign of ``nu(L) - target``; when it
    is 0, ``x`` is an exact solution of ``L^q(x) = x + p``.  Exact because
    ``L^q(x) - x - p`` is continuous, periodic and piecewise affine.
    """
    if not L.is_continuous:
        raise ValidationError("compare_rotation needs a continuous lift")
    target = as_fraction(target)
    p, q = target.numerator, target.denominator
    G = power(L, q)
    pts = list(G.starts) + [Fraction(1)]
    vals = [G.eval(b) - b - p for b in pts]
    for b, v in zip(pts, vals):
        if v == 0:
            return 0, b
    if all(v > 0 for v in vals):
        return 1, None
    if all(v < 0 for v in vals):
        return -1, None
    for seg, v0, v1 in zip(G.segments, vals, vals[1:]):
        if (v0 < 0) != (v1 < 0):
            return 0, (p - seg.intercept) / (seg.slope - 1)
    raise AssertionError("sign change without a crossing")


def periodic_orbit(L: Lift, x0=0, max_iter: int = DEFAULT_MAX_ITER, max_bits: int = DEFAULT_MAX_BITS) -> PeriodicOrbit:
    """The cycle eventually reached from ``x0`` (transient discarded)."""
    res = rotation_number(L, x0, max_iter, max_bits)
    if not res.exact:
        raise BudgetError(f"no cycle within budget of {max_iter} iterations")
    return res.witness


def exact_rotation(L: Lift, x0=0, **kw) -> Fraction:
    """Rotation number as a Fraction, raising if only an interval is known."""
    res = rotation_number(L, x0, **kw)
    if not res.exact:
        raise BudgetError(f"rotation number not resolved: {res}")
    return res.value


@dataclass(frozen=True)
class TuneResult:
    lift: Lift
    lam: Fraction
    converged: bool
    nu: Optional[Fraction]
    bracket: tuple[Fraction, Fraction]
    steps: int


def tune_lambda(L: Lift, target, delta, tol=Fraction(1, 2**40), max_bisect: int = 200) -> TuneResult:
    """Homeomorphism within Levy distance ``delta`` of ``L`` with rotation
    number exactly ``target``, found by bisection along the segment joining
    the two sandwich homeomorphisms.

    ``converged`` is true only on exact equality; otherwise the final bracket
    of interpolation weights is reported.
    """
    target, delta, tol = as_fraction(target), as_fraction(delta), as_fraction(tol)
    if delta <= 0 or tol <= 0:
        raise ValidationError("delta and tol must be positive")
    lo_nu = exact_rotation(left_map(L))
    hi_nu = exact_rotation(right_map(L))
    if not lo_nu < target < hi_nu:
        raise ValidationError(
            f"target {format_fraction(target)} not strictly between "
            f"{format_fraction(lo_nu)} and {format_fraction(hi_nu)}"
        )
    h_lo, h_hi = sandwich_homeos(L, delta)
    a, b = Fraction(0), Fraction(1)
    g = h_lo
    for step in range(1, max_bisect + 1):
        lam = (a + b) / 2
        g = interpolate(h_lo, h_hi, lam)
        sign, _ = compare_rotation(g, target)
        if sign == 0:
            return TuneResult(g, lam, True, target, (a, b), step)
        if sign < 0:
            a = lam
        else:
            b = lam
        if b - a < tol:
            break
    log.warning("tune_lambda: no exact lock on %s; bracket [%s, %s]", target, a, b)
    return TuneResult(g, (a + b) / 2, False, None, (a, b), step)

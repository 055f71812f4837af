"""Maps at zero Levy distance from a base lift.

Such maps differ from the base only at its jump points, where the value may be
anything in ``[f^-(d), f^+(d)]``.  The rotation number depends on those values
only through which breakpoint cells their orbits visit, so a finite grid of
critical values per gap is enough to enumerate the realized rotation numbers.
"""
from __future__ import annotations

import csv
import io
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import BudgetError, CircleMapError, ValidationError
from .farey import FractionSet
from .lift import GapSpec, Lift, Segment, discontinuities, left_map, levy_zero_equiv, make_lift, preimages, right_map
from .rational import as_fraction, format_fraction
from .rotation import DEFAULT_MAX_BITS, DEFAULT_MAX_ITER, exact_rotation, periodic_orbit

log = logging.getLogger(__name__)

DEFAULT_DEPTH = 8
DEFAULT_MAX_ASSIGNMENTS = 200_000
# stop growing the backward-preimage set past this many points
MAX_PREIMAGE_POINTS = 50_000

GapAssignment = Mapping[Fraction, Fraction]


def assign(L: Lift, values: GapAssignment) -> Lift:
    """Replace the value of ``L`` at each gap point by ``values[point]``."""
    gaps = {g.point: g for g in discontinuities(L)}
    values = {as_fraction(k): as_fraction(v) for k, v in values.items()}
    if set(values) != set(gaps):
        raise ValidationError(
            f"assignment keys {sorted(map(format_fraction, values))} do not match "
            f"gap points {sorted(map(format_fraction, gaps))}"
        )
    for d, v in values.items():
        g = gaps[d]
        if not g.lo <= v <= g.hi:
            raise ValidationError(f"value {v} at {d} outside gap [{g.lo}, {g.hi}]")
    return make_lift(
        Segment(s.start, values.get(s.start, s.value), s.slope, s.intercept) for s in L.segments
    )


def complete(L: Lift, partial: GapAssignment) -> dict[Fraction, Fraction]:
    """``partial`` extended with the base map's own values at the other gaps."""
    out = {g.point: g.current for g in discontinuities(L)}
    out.update({as_fraction(k): as_fraction(v) for k, v in partial.items()})
    return out


def backward_set(L: Lift, depth: int) -> set[Fraction]:
    """Points of ``[0, 1)`` whose orbit hits a breakpoint within ``depth - 1``
    steps (``depth = 0`` gives the empty set)."""
    if depth <= 0:
        return set()
    seen = set(L.starts)
    frontier = set(seen)
    for _ in range(depth - 1):
        if not frontier:
            break
        new = preimages(L, frontier) - seen
        seen |= new
        frontier = new
        if len(seen) > MAX_PREIMAGE_POINTS:
            log.warning("backward preimage set truncated at %d points", len(seen))
            break
    return seen


def critical_grid(L: Lift, gap: GapSpec, depth: int = DEFAULT_DEPTH, _back=None) -> list[Fraction]:
    """Sorted sample values for one gap: both endpoints, every value whose
    orbit reaches a breakpoint within ``depth - 1`` steps, and the midpoint of
    each consecutive pair.

    Flat pieces have whole intervals as preimages; only their endpoints are
    taken, which is where the cell an orbit falls in can change.
    """
    if depth < 0:
        raise ValidationError("depth must be non-negative")
    back = backward_set(L, depth) if _back is None else _back
    if any(s.slope == 0 for s in L.segments):
        log.debug("flat pieces present: preimages represented by interval endpoints")
    lo, hi = gap.lo, gap.hi
    pts = {lo, hi}
    for b in back:
        for m in range(math.ceil(lo - b), math.floor(hi - b) + 1):
            y = b + m
            if lo < y < hi:
                pts.add(y)
    pts = sorted(pts)
    mids = [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    return sorted(pts + mids)


class _Branch(Exception):
    def __init__(self, point):
        self.point = point


def _rotation_with(L: Lift, gap_points, values, x0, max_iter, max_bits) -> Fraction:
    """Rotation number of ``L`` with gap values overridden by ``values``.

    Raises :class:`_Branch` at the first visited gap point with no value yet.
    """
    seen = {}
    xs = []
    x = x0
    for _ in range(max_iter + 1):
        n = math.floor(x)
        r = x - n
        k = seen.get(r)
        if k is not None:
            return Fraction(int(x - xs[k]), len(xs) - k)
        seen[r] = len(xs)
        xs.append(x)
        if r in gap_points:
            if r not in values:
                raise _Branch(r)
            x = values[r] + n
        else:
            x = L(x)
        if x.denominator.bit_length() > max_bits:
            raise BudgetError(f"iterate denominator exceeds the {max_bits}-bit bound")
    raise BudgetError(f"no cycle within {max_iter} iterations")


def grids(L: Lift, depth: int = DEFAULT_DEPTH) -> dict[Fraction, list[Fraction]]:
    back = backward_set(L, depth)
    return {g.point: critical_grid(L, g, depth, _back=back) for g in discontinuities(L)}


def vset(
    L: Lift,
    depth: int = DEFAULT_DEPTH,
    max_assignments: int = DEFAULT_MAX_ASSIGNMENTS,
    x0=0,
    max_iter: int = DEFAULT_MAX_ITER,
    max_bits: int = DEFAULT_MAX_BITS,
) -> FractionSet:
    """Rotation numbers realized over the product of the critical grids.

    The product is explored lazily: the orbit of ``x0`` only consults the gap
    values it actually visits, so branching happens at those gaps alone and
    assignments that agree on the visited gaps are evaluated once.  The result
    equals evaluating every assignment of the full product.
    """
    if depth < 0:
        raise ValidationError("depth must be non-negative")
    grid = grids(L, depth)
    if not grid:
        raise ValidationError("vset needs a lift with at least one gap")
    gap_points = frozenset(grid)
    x0 = as_fraction(x0)
    found = set()
    evaluated = 0
    stack: list[dict] = [{}]
    while stack:
        values = stack.pop()
        try:
            nu = _rotation_with(L, gap_points, values, x0, max_iter, max_bits)
        except _Branch as br:
            for v in reversed(grid[br.point]):
                stack.append({**values, br.point: v})
            continue
        evaluated += 1
        if evaluated > max_assignments:
            total = math.prod(len(g) for g in grid.values())
            raise BudgetError(
                f"vset needs more than max_assignments={max_assignments} evaluations "
                f"(full grid product is {total})"
            )
        found.add(nu)
    return tuple(sorted(found))


def vset_bruteforce(L: Lift, depth: int = DEFAULT_DEPTH) -> FractionSet:
    """Evaluate every assignment of the full grid product; small maps only."""
    grid = grids(L, depth)
    points = sorted(grid)
    found = set()
    for combo in itertools.product(*(grid[p] for p in points)):
        found.add(exact_rotation(assign(L, dict(zip(points, combo)))))
    return tuple(sorted(found))


# -- parameter scans --------------------------------------------------------

ScanRow = tuple


def scan_family(base: Lift, axes: Sequence[tuple[Fraction, Sequence[Fraction]]]) -> list[ScanRow]:
    """Exact rotation number on the product of per-gap sample lists.

    Gaps not named in ``axes`` keep the base map's value.  Each row is
    ``(*params, nu)`` where ``nu`` is a Fraction or an ``"error: ..."`` string
    for a cell that could not be evaluated.
    """
    axes = [(as_fraction(p), [as_fraction(v) for v in vals]) for p, vals in axes]
    gap_points = {g.point for g in discontinuities(base)}
    for p, _ in axes:
        if p not in gap_points:
            raise ValidationError(f"{format_fraction(p)} is not a gap point of the base map")
    rows = []
    for combo in itertools.product(*(vals for _, vals in axes)):
        partial = {p: v for (p, _), v in zip(axes, combo)}
        try:
            nu = exact_rotation(assign(base, complete(base, partial)))
        except CircleMapError as exc:
            nu = f"error: {exc}"
        rows.append((*combo, nu))
    rows.sort(key=lambda row: row[:-1])
    return rows


def write_scan_csv(rows: Iterable[ScanRow], n_params: int, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow([f"param_{i}" for i in range(1, n_params + 1)] + ["nu"])
    for row in rows:
        w.writerow([format_fraction(v) for v in row[:-1]] +
                   [row[-1] if isinstance(row[-1], str) else format_fraction(row[-1])])


def scan_csv(rows, n_params) -> str:
    buf = io.StringIO()
    write_scan_csv(rows, n_params, buf)
    return buf.getvalue()


# -- orbit embedding and the parity check -----------------------------------

def _seed_points(*lifts: Lift) -> list[Fraction]:
    pts = {Fraction(0)}
    for L in lifts:
        pts.update(L.starts)
        for s, lo, hi in zip(L.segments, L.lefts, L.rights):
            pts.update(v - math.floor(v) for v in (s.value, lo, hi))
    return sorted(pts)


def periodic_points(L: Lift, seeds: Iterable[Fraction]) -> set[Fraction]:
    """Union (mod 1) of the cycles reached from each seed."""
    out = set()
    for s in seeds:
        out.update(periodic_orbit(L, s).points)
    return out


@dataclass
class EmbeddingReport:
    applicable: bool
    relation: str = ""
    x0: Optional[Fraction] = None
    center: Optional[Fraction] = None
    step: Optional[int] = None
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.applicable and all(lhs == rhs for _, lhs, rhs in self.checks)

    def lines(self) -> list[str]:
        if not self.applicable:
            return ["hypothesis not applicable"]
        out = [f"relation {self.relation} center {format_fraction(self.center)} x0 {format_fraction(self.x0)}"]
        for k, lhs, rhs in self.checks:
            mark = "ok" if lhs == rhs else "FAIL"
            out.append(f"k={k} {format_fraction(lhs)} {format_fraction(rhs)} {mark}")
        out.append("PASS" if self.passed else "FAIL")
        return out


def verify_embedding(L_low: Lift, L_high: Lift, max_k: int = 100) -> EmbeddingReport:
    """Check the indexed orbit relation between two maps at zero distance.

    With ``p/q`` the rotation number of the map whose orbit is enumerated
    (``x_j`` increasing, ``x_0`` a periodic point shared with the other map),
    the other map must satisfy ``other^k(x_0) = x_{k(p+1)}`` when it has
    rotation number ``(p+1)/q``, or ``x_{k(p-1)}`` when it has ``(p-1)/q``.
    """
    if not levy_zero_equiv(L_low, L_high):
        raise ValidationError("maps are not at zero Levy distance")
    nu_low, nu_high = exact_rotation(L_low), exact_rotation(L_high)
    if not nu_low < nu_high:
        return EmbeddingReport(False)
    if nu_high == Fraction(nu_low.numerator + 1, nu_low.denominator):
        center, other, relation, nu = L_low, L_high, "p+1", nu_low
        step = nu.numerator + 1
    elif nu_low == Fraction(nu_high.numerator - 1, nu_high.denominator):
        center, other, relation, nu = L_high, L_low, "p-1", nu_high
        step = nu.numerator - 1
    else:
        return EmbeddingReport(False)
    seeds = _seed_points(L_low, L_high)
    common = sorted(periodic_points(center, seeds) & periodic_points(other, seeds))
    if not common:
        raise BudgetError("no common periodic point found among the seed orbits")
    x0 = common[0]
    xj = periodic_orbit(center, x0).enumerate(x0)
    checks = []
    y = x0
    for k in range(max_k + 1):
        checks.append((k, y, xj(k * step)))
        y = other(y)
    return EmbeddingReport(True, relation, x0, nu, step, checks)


@dataclass(frozen=True)
class HypothesisReport:
    status: str  # "not satisfied", "pass" or "fail"
    nu_minus: Fraction
    nu: Fraction
    nu_plus: Fraction

    def __str__(self):
        vals = " ".join(format_fraction(v) for v in (self.nu_minus, self.nu, self.nu_plus))
        return f"{self.status} ({vals})"


def hypothesis_check(L: Lift) -> HypothesisReport:
    """If ``nu(f) = p/q`` sits exactly halfway, ``(p-1)/q`` below and
    ``(p+1)/q`` above, then ``p`` must be odd and ``q`` even."""
    nu_m = exact_rotation(left_map(L))
    nu = exact_rotation(L)
    nu_p = exact_rotation(right_map(L))
    p, q = nu.numerator, nu.denominator
    if not (Fraction(p - 1, q) == nu_m and Fraction(p + 1, q) == nu_p):
        return HypothesisReport("not satisfied", nu_m, nu, nu_p)
    ok = p % 2 == 1 and q % 2 == 0
    return HypothesisReport("pass" if ok else "fail", nu_m, nu, nu_p)

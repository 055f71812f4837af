"""Piecewise-affine lifts of monotone degree-one circle maps.

A lift is stored on the fundamental domain ``[0, 1)`` as an ordered list of
segments.  Segment ``i`` starts at breakpoint ``a_i``, takes the explicit value
``value`` at ``a_i`` and follows ``slope * x + intercept`` on the open interval
``(a_i, a_{i+1})`` (with ``a_n = 1``).  Everywhere else ``f(x + 1) = f(x) + 1``.
All arithmetic is done in :class:`fractions.Fraction`.
"""
from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import ValidationError
from .rational import as_fraction, format_fraction, parse_fraction

SIDES = ("point", "left", "right")


@dataclass(frozen=True)
class Segment:
    start: Fraction
    value: Fraction
    slope: Fraction
    intercept: Fraction

    def __post_init__(self):
        for name in ("start", "value", "slope", "intercept"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    def law(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class GapSpec:
    """A jump point with its admissible value interval ``[lo, hi]``."""

    point: Fraction
    lo: Fraction
    hi: Fraction
    current: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class Lift:
    """Validated, normalized lift.  Two lifts are equal iff they are the same
    function (normal form is canonical)."""

    segments: tuple[Segment, ...]
    starts: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)
    lefts: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)
    rights: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        segs = _validate(self.segments)
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "starts", tuple(s.start for s in segs))
        lefts, rights = _limits(segs)
        object.__setattr__(self, "lefts", lefts)
        object.__setattr__(self, "rights", rights)

    def __call__(self, x) -> Fraction:
        return self.eval(x)

    def __len__(self):
        return len(self.segments)

    def locate(self, r: Fraction) -> int:
        """Index of the segment whose half-open cell ``[a_i, a_{i+1})`` holds
        ``r`` (``r`` must already be reduced to ``[0, 1)``)."""
        return bisect_right(self.starts, r) - 1

    def eval(self, x, side: str = "point") -> Fraction:
        x = as_fraction(x)
        n = math.floor(x)
        r = x - n
        i = self.locate(r)
        seg = self.segments[i]
        if r != seg.start:
            return seg.law(r) + n
        if side == "point":
            return seg.value + n
        if side == "right":
            return self.rights[i] + n
        if side == "left":
            return self.lefts[i] + n
        raise ValidationError(f"side must be one of {SIDES}, got {side!r}")

    def slope_right(self, x) -> Fraction:
        x = as_fraction(x)
        return self.segments[self.locate(x - math.floor(x))].slope

    @property
    def is_continuous(self) -> bool:
        return all(lo == hi for lo, hi in zip(self.lefts, self.rights))

    def __str__(self):
        parts = [
            f"[{format_fraction(s.start)}: {format_fraction(s.value)} | "
            f"{format_fraction(s.slope)}x+{format_fraction(s.intercept)}]"
            for s in self.segments
        ]
        return "Lift(" + " ".join(parts) + ")"


def _limits(segs):
    last = segs[-1]
    lefts = []
    for i, seg in enumerate(segs):
        if i == 0:
            lefts.append(last.law(Fraction(1)) - 1)
        else:
            lefts.append(segs[i - 1].law(seg.start))
    rights = [seg.law(seg.start) for seg in segs]
    return tuple(lefts), tuple(rights)


def _coerce(seg) -> Segment:
    if isinstance(seg, Segment):
        return seg
    if isinstance(seg, dict):
        return Segment(seg["start"], seg["value"], seg["slope"], seg["intercept"])
    return Segment(*seg)


def _validate(segments) -> tuple[Segment, ...]:
    segs = [_coerce(s) for s in segments]
    if not segs:
        raise ValidationError("a lift needs at least one segment")
    for prev, seg in zip(segs, segs[1:]):
        if seg.start <= prev.start:
            raise ValidationError(f"segment starts not strictly increasing at {seg.start}")
    for seg in segs:
        if not 0 <= seg.start < 1:
            raise ValidationError(f"segment start {seg.start} outside [0, 1)")
        if seg.slope < 0:
            raise ValidationError(f"negative slope {seg.slope} at breakpoint {seg.start}")
    if segs[0].start != 0:
        # the last piece wraps around through 0
        last = segs[-1]
        segs.insert(0, Segment(0, last.law(Fraction(1)) - 1, last.slope, last.law(Fraction(1)) - 1))
    lefts, rights = _limits(segs)
    for seg, lo, hi in zip(segs, lefts, rights):
        if not lo <= seg.value <= hi:
            raise ValidationError(
                f"not monotone at breakpoint {seg.start}: "
                f"left limit {lo}, value {seg.value}, right limit {hi}"
            )
    merged = [segs[0]]
    for seg in segs[1:]:
        prev = merged[-1]
        if (seg.slope, seg.intercept) == (prev.slope, prev.intercept) and seg.value == seg.law(seg.start):
            continue
        merged.append(seg)
    return tuple(merged)


def make_lift(segments: Iterable) -> Lift:
    """Validated constructor.  Accepts :class:`Segment` objects, 4-tuples
    ``(start, value, slope, intercept)`` or dicts with those keys."""
    return Lift(tuple(segments))


def identity() -> Lift:
    return make_lift([(0, 0, 1, 0)])


def translation(t) -> Lift:
    """The rigid rotation ``x -> x + t``."""
    t = as_fraction(t)
    return make_lift([(0, t, 1, t)])


def eval(L: Lift, x, side: str = "point") -> Fraction:  # noqa: A001
    return L.eval(x, side)


def left_map(L: Lift) -> Lift:
    """``f^-``: every breakpoint value replaced by its left limit."""
    return make_lift(Segment(s.start, lo, s.slope, s.intercept) for s, lo in zip(L.segments, L.lefts))


def right_map(L: Lift) -> Lift:
    """``f^+``: every breakpoint value replaced by its right limit."""
    return make_lift(Segment(s.start, hi, s.slope, s.intercept) for s, hi in zip(L.segments, L.rights))


def discontinuities(L: Lift) -> list[GapSpec]:
    return [
        GapSpec(s.start, lo, hi, s.value)
        for s, lo, hi in zip(L.segments, L.lefts, L.rights)
        if lo < hi
    ]


def merged_breakpoints(*lifts: Lift) -> list[Fraction]:
    return sorted(set().union(*(L.starts for L in lifts)))


def pointwise_leq(L1: Lift, L2: Lift) -> bool:
    """Exact test of ``L1(x) <= L2(x)`` for every real ``x``.

    Both functions are affine between consecutive merged breakpoints, so it
    suffices to compare point values and both one-sided limits there.
    """
    for b in merged_breakpoints(L1, L2):
        for side in SIDES:
            if L1.eval(b, side) > L2.eval(b, side):
                return False
    return True


def levy_zero_equiv(L1: Lift, L2: Lift) -> bool:
    """Zero Levy distance, i.e. equal right-limit maps."""
    return right_map(L1) == right_map(L2)


def from_oracle(
    points: Iterable[Fraction],
    point_fn: Callable[[Fraction], Fraction],
    right_fn: Callable[[Fraction], Fraction],
) -> Lift:
    """Build a lift from evaluation callbacks.

    ``points`` must contain every breakpoint of the target function (mod 1);
    the function is assumed affine between them, so the law of each piece is
    recovered from the right limit at its start and the value at its midpoint.
    """
    pts = sorted({p - math.floor(p) for p in map(as_fraction, points)} | {Fraction(0)})
    segs = []
    for j, b in enumerate(pts):
        nxt = pts[j + 1] if j + 1 < len(pts) else Fraction(1)
        mid = (b + nxt) / 2
        start_val = right_fn(b)
        slope = (point_fn(mid) - start_val) / (mid - b)
        segs.append(Segment(b, point_fn(b), slope, start_val - slope * b))
    return make_lift(segs)


def interpolate(L0: Lift, L1: Lift, lam) -> Lift:
    """Convex combination ``(1 - lam) * L0 + lam * L1`` for ``lam`` in [0, 1]."""
    lam = as_fraction(lam)
    if not 0 <= lam <= 1:
        raise ValidationError(f"interpolation weight {lam} outside [0, 1]")
    return from_oracle(
        merged_breakpoints(L0, L1),
        lambda x: (1 - lam) * L0.eval(x) + lam * L1.eval(x),
        lambda x: (1 - lam) * L0.eval(x, "right") + lam * L1.eval(x, "right"),
    )


def shift(L: Lift, c) -> Lift:
    """Vertical shift ``x -> L(x) + c``."""
    c = as_fraction(c)
    return make_lift(Segment(s.start, s.value + c, s.slope, s.intercept + c) for s in L.segments)


def translate(L: Lift, t) -> Lift:
    """Horizontal shift ``x -> L(x + t)``."""
    t = as_fraction(t)
    return from_oracle(
        [a - t for a in L.starts],
        lambda x: L.eval(x + t),
        lambda x: L.eval(x + t, "right"),
    )


def preimages(L: Lift, targets: Iterable[Fraction]) -> set[Fraction]:
    """Points of ``[0, 1)`` mapped into ``targets + Z`` by an open piece of ``L``.

    Pieces of positive slope contribute their unique solution; a flat piece
    whose value hits a target has a whole interval as preimage and contributes
    its two endpoints.
    """
    targets = {t - math.floor(t) for t in map(as_fraction, targets)}
    out = set()
    ends = list(L.starts[1:]) + [Fraction(1)]
    for seg, end in zip(L.segments, ends):
        lo, hi = seg.law(seg.start), seg.law(end)
        if seg.slope == 0:
            if lo - math.floor(lo) in targets:
                out.add(seg.start)
                out.add(end - math.floor(end))
            continue
        for b in targets:
            for m in range(math.ceil(lo - b), math.floor(hi - b) + 1):
                y = b + m
                if lo < y < hi:
                    out.add((y - seg.intercept) / seg.slope)
    return out


def compose(outer: Lift, inner: Lift) -> Lift:
    """``outer o inner`` as a lift."""
    pts = set(inner.starts) | preimages(inner, outer.starts)

    def right(x):
        y = inner.eval(x, "right")
        if inner.slope_right(x) > 0:
            return outer.eval(y, "right")
        return outer.eval(y)

    return from_oracle(pts, lambda x: outer.eval(inner.eval(x)), right)


def power(L: Lift, n: int) -> Lift:
    if n < 0:
        raise ValidationError("negative iterate")
    out = identity()
    for _ in range(n):
        out = compose(L, out)
    return out


def levy_within(f: Lift, g: Lift, eps) -> bool:
    """Exact check of ``f(x - eps) - eps <= g(x) <= f(x + eps) + eps`` for all x,
    i.e. that ``g`` lies in the ``eps`` tube of ``f`` (Levy distance <= eps)."""
    eps = as_fraction(eps)
    lower = shift(translate(f, -eps), -eps)
    upper = shift(translate(f, eps), eps)
    return pointwise_leq(lower, g) and pointwise_leq(g, upper)


def _min_spacing(starts: Sequence[Fraction]) -> Fraction:
    gaps = [b - a for a, b in zip(starts, starts[1:])]
    gaps.append(1 + starts[0] - starts[-1])
    return min(gaps)


def _tilt(H: Lift, delta: Fraction, upper: bool) -> Lift:
    """Mix a continuous lift with a translation so every slope is positive.

    ``(1 - mu) H + mu (x + c)`` with ``c`` the max (upper) or min (lower) of
    ``H(x) - x``; this stays on the correct side of ``H`` and moves by at most
    ``delta / 4``.
    """
    offsets = [H.eval(a) - a for a in H.starts]
    spread = max(offsets) - min(offsets)
    c = max(offsets) if upper else min(offsets)
    mu = Fraction(1, 2) if spread == 0 else min(Fraction(1, 2), delta / (4 * spread))
    if all(s.slope > 0 for s in H.segments):
        return H
    return interpolate(H, translation(c), mu)


def sandwich_homeos(L: Lift, delta) -> tuple[Lift, Lift]:
    """Homeomorphisms ``h_lo <= L <= h_hi`` within Levy distance ``delta / 2``.

    Each jump is replaced by a linear ramp of width
    ``min(delta, min breakpoint spacing) / 4``, placed before the jump for the
    upper map and after it for the lower map; flat pieces are then tilted.
    """
    delta = as_fraction(delta)
    if delta <= 0:
        raise ValidationError(f"delta must be positive, got {delta}")
    w = min(delta, _min_spacing(L.starts)) / 4
    segs = L.segments
    n = len(segs)
    upper, lower = [], []
    for i, seg in enumerate(segs):
        lo, hi = L.lefts[i], L.rights[i]
        if lo == hi:
            upper.append(Segment(seg.start, hi, seg.slope, seg.intercept))
            lower.append(Segment(seg.start, lo, seg.slope, seg.intercept))
            continue
        # upper: ramp on [a - w, a] from the previous law up to the right limit
        prev = segs[i - 1] if i else segs[n - 1]
        x0 = seg.start - w
        y0 = prev.law(x0 + (1 if i == 0 else 0)) - (1 if i == 0 else 0)
        k = (hi - y0) / w
        r = x0 - math.floor(x0)
        y0r = y0 + (r - x0)
        upper.append(Segment(r, y0r, k, y0r - k * r))
        upper.append(Segment(seg.start, hi, seg.slope, seg.intercept))
        # lower: ramp on [a, a + w] from the left limit up to the current law
        x1 = seg.start + w
        y1 = seg.law(x1)
        k = (y1 - lo) / w
        lower.append(Segment(seg.start, lo, k, lo - k * seg.start))
        lower.append(Segment(x1, y1, seg.slope, seg.intercept))
    H_hi = make_lift(sorted(upper, key=lambda s: s.start))
    H_lo = make_lift(sorted(lower, key=lambda s: s.start))
    return _tilt(H_lo, delta, upper=False), _tilt(H_hi, delta, upper=True)


# -- map file format --------------------------------------------------------

def to_dict(L: Lift) -> dict:
    return {
        "segments": [
            {
                "start": format_fraction(s.start),
                "value": format_fraction(s.value),
                "slope": format_fraction(s.slope),
                "intercept": format_fraction(s.intercept),
            }
            for s in L.segments
        ]
    }


def from_dict(doc) -> Lift:
    if not isinstance(doc, dict) or not isinstance(doc.get("segments"), list):
        raise ValidationError('map document needs a "segments" list')
    segs = []
    for k, item in enumerate(doc["segments"]):
        try:
            segs.append(Segment(*(parse_fraction(item[key]) for key in ("start", "value", "slope", "intercept"))))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"segment {k}: missing or malformed field ({exc})") from None
    return make_lift(segs)


def dumps(L: Lift) -> str:
    return json.dumps(to_dict(L), indent=2) + "\n"


def loads(text: str) -> Lift:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from None
    return from_dict(doc)


def load(path) -> Lift:
    with open(path) as fh:
        return loads(fh.read())


def dump(L: Lift, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(L))

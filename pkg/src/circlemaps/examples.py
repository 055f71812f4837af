"""Fixtures for the worked examples.

Each closed form built from floors and ceilings is hand-compiled into
segments.  A ceiling attains its new value only after the jump point, so a
ceiling-built map is left-continuous; a floor-built one is right-continuous.
"""
from __future__ import annotations

from fractions import Fraction as F

from .errors import ValidationError
from .lift import Lift, interpolate, make_lift, right_map
from .rational import as_fraction

# f(x) = ceil(2x) / 2
def ex1_f() -> Lift:
    return make_lift([(0, 0, 0, F(1, 2)), (F(1, 2), F(1, 2), 0, 1)])


# g1(x) = (1 + ceil(2x) + floor(2x)) / 4
def ex1_g1() -> Lift:
    return make_lift([(0, F(1, 4), 0, F(1, 2)), (F(1, 2), F(3, 4), 0, 1)])


# g2(x) = (1 + ceil(x) + floor(2x) + floor(x + 1/2)) / 4
def ex1_g2() -> Lift:
    return make_lift([(0, F(1, 4), 0, F(1, 2)), (F(1, 2), 1, 0, 1)])


# f(x) = min(x + 1/2, ceil(x))
def ex2_f() -> Lift:
    return make_lift([(0, 0, 1, F(1, 2)), (F(1, 2), 1, 0, 1)])


def ex2_g() -> Lift:
    """The average of the example-2 map and its right-limit map."""
    f = ex2_f()
    return interpolate(f, right_map(f), F(1, 2))


# f(x) = (2 + 2ceil(x) + ceil(x-1/10) + ceil(x-1/5) + 2ceil(x-2/5)
#         + ceil(x-1/2) + ceil(x-3/5) + 2ceil(x-4/5)) / 10
# Constant term 2 gives rotation numbers 1/4 (f) and 2/5 (f+); with 4 the
# whole map sits 1/5 higher and both values jump to 1/2 and 3/5.
def ex3_f() -> Lift:
    steps = [
        (0, F(2, 10), F(4, 10)),
        (F(1, 10), F(4, 10), F(5, 10)),
        (F(1, 5), F(5, 10), F(6, 10)),
        (F(2, 5), F(6, 10), F(8, 10)),
        (F(1, 2), F(8, 10), F(9, 10)),
        (F(3, 5), F(9, 10), F(10, 10)),
        (F(4, 5), F(10, 10), F(12, 10)),
    ]
    return make_lift([(a, v, 0, c) for a, v, c in steps])


def ex4_f(alpha, beta) -> Lift:
    """The two-parameter family; ``alpha`` sets the value at 0, ``beta`` the
    value at 1/3, both within their jumps."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    if not (0 <= alpha <= 1 and 0 <= beta <= 1):
        raise ValidationError(f"alpha and beta must lie in [0, 1], got {alpha}, {beta}")
    return make_lift([
        (0, (1 + 2 * alpha) / 6, 0, F(1, 2)),
        (F(1, 3), (1 + beta) / 2, 0, 1),
        (F(5, 6), 1, 1, F(1, 6)),
    ])


# f(x) = (1 + ceil(5x) - ceil(x) + ceil(x - 1/10)) / 5
def ex5_f() -> Lift:
    steps = [
        (0, F(1, 5), F(1, 5)),
        (F(1, 10), F(1, 5), F(2, 5)),
        (F(1, 5), F(2, 5), F(3, 5)),
        (F(2, 5), F(3, 5), F(4, 5)),
        (F(3, 5), F(4, 5), 1),
        (F(4, 5), 1, F(6, 5)),
    ]
    return make_lift([(a, v, 0, c) for a, v, c in steps])


def ex5_variant() -> Lift:
    """``ex5_f`` plus ``(floor(1 + x - 1/5) - ceil(x - 1/5)) / 10``, which is
    nonzero only at ``x = 1/5``."""
    segs = list(ex5_f().segments)
    i = [s.start for s in segs].index(F(1, 5))
    s = segs[i]
    segs[i] = (s.start, s.value + F(1, 10), s.slope, s.intercept)
    return make_lift(segs)


BUILDERS = {
    "ex1_f": ex1_f,
    "ex1_g1": ex1_g1,
    "ex1_g2": ex1_g2,
    "ex2_f": ex2_f,
    "ex2_g": ex2_g,
    "ex3_f": ex3_f,
    "ex4_f": ex4_f,
    "ex5_f": ex5_f,
    "ex5_variant": ex5_variant,
}


def example(name: str, alpha=0, beta=0) -> Lift:
    try:
        build = BUILDERS[name]
    except KeyError:
        raise ValidationError(f"unknown example {name!r}; choose from {sorted(BUILDERS)}") from None
    if name == "ex4_f":
        return build(alpha, beta)
    return build()

"""Independent oracles and random generators shared by the tests."""
import math
import random
from fractions import Fraction as F

from circlemaps.lift import make_lift

ceil, floor = math.ceil, math.floor

# Closed forms evaluated directly, with no reference to the segment fixtures.
CLOSED_FORMS = {
    "ex1_f": lambda x: F(ceil(2 * x), 2),
    "ex1_f_plus": lambda x: F(1 + floor(2 * x), 2),
    "ex1_g1": lambda x: F(1 + ceil(2 * x) + floor(2 * x), 4),
    "ex1_g2": lambda x: F(1 + ceil(x) + floor(2 * x) + floor(x + F(1, 2)), 4),
    "ex2_f": lambda x: min(x + F(1, 2), F(ceil(x))),
    "ex3_f": lambda x: F(
        2 + 2 * ceil(x) + ceil(x - F(1, 10)) + ceil(x - F(1, 5)) + 2 * ceil(x - F(2, 5))
        + ceil(x - F(1, 2)) + ceil(x - F(3, 5)) + 2 * ceil(x - F(4, 5)),
        10,
    ),
    "ex5_f": lambda x: F(1 + ceil(5 * x) - ceil(x) + ceil(x - F(1, 10)), 5),
}
CLOSED_FORMS["ex5_variant"] = lambda x: CLOSED_FORMS["ex5_f"](x) + F(
    floor(1 + x - F(1, 5)) - ceil(x - F(1, 5)), 10
)


def ex4_closed(alpha, beta):
    alpha, beta = F(alpha), F(beta)
    def f(x):
        n = floor(x)
        r = x - n
        if r == 0:
            v = (1 + 2 * alpha) / 6
        elif r < F(1, 3):
            v = F(1, 2)
        elif r == F(1, 3):
            v = (1 + beta) / 2
        elif r <= F(5, 6):
            v = F(1)
        else:
            v = r + F(1, 6)
        return v + n
    return f


def sample_points(den=120, lo=-2, hi=2):
    """Every multiple of 1/den in [lo, hi)."""
    return [F(k, den) for k in range(lo * den, hi * den)]


def random_fraction(rng, lo, hi, max_den=24):
    """Uniform-ish rational in [lo, hi] with denominator <= max_den where possible."""
    lo, hi = F(lo), F(hi)
    q = rng.randint(1, max_den)
    a, b = ceil(lo * q), floor(hi * q)
    if a > b:
        return lo + (hi - lo) * F(rng.randint(0, max_den), max_den)
    return F(rng.randint(a, b), q)


def random_step_map(rng: random.Random, max_breaks=6, max_den=24):
    """A random monotone degree-one step lift with at most ``max_breaks``
    breakpoints per period and denominators at most ``max_den``."""
    k = rng.randint(1, max_breaks)
    starts = set()
    while len(starts) < k:
        q = rng.randint(1, max_den)
        starts.add(F(rng.randrange(q), q))
    starts = sorted(starts)
    base = F(rng.randint(-max_den, max_den), max_den)
    levels = sorted(random_fraction(rng, 0, 1, max_den) for _ in starts)
    levels = [base + u for u in levels]
    segs = []
    for i, a in enumerate(starts):
        lo = levels[i - 1] if i else levels[-1] - 1
        hi = levels[i]
        pick = rng.random()
        v = lo if pick < 0.3 else hi if pick < 0.6 else random_fraction(rng, lo, hi, max_den)
        segs.append((a, v, 0, hi))
    return make_lift(segs)

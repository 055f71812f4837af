import random
from fractions import Fraction as F

import pytest

from circlemaps.errors import BudgetError, ValidationError
from circlemaps.examples import ex1_f, ex1_g1, ex2_f, ex3_f, ex4_f, ex5_f
from circlemaps.family import (
    assign,
    complete,
    critical_grid,
    hypothesis_check,
    scan_csv,
    scan_family,
    verify_embedding,
    vset,
    vset_bruteforce,
)
from circlemaps.farey import excluded_center, sset
from circlemaps.lift import (
    discontinuities,
    identity,
    left_map,
    levy_zero_equiv,
    pointwise_leq,
    right_map,
)
from circlemaps.rotation import exact_rotation
from helpers import random_fraction, random_step_map


def gap_at(L, point):
    return next(g for g in discontinuities(L) if g.point == point)


def test_assign_ex4():
    g = assign(ex4_f(0, 0), {0: F(1, 3), F(1, 3): F(11, 12)})
    assert g == ex4_f(F(1, 2), F(5, 6))
    assert exact_rotation(g) == F(2, 5)


def test_assign_extremes_give_limit_maps():
    L = ex3_f()
    gaps = discontinuities(L)
    assert assign(L, {g.point: g.hi for g in gaps}) == right_map(L)
    assert assign(L, {g.point: g.lo for g in gaps}) == left_map(L)


def test_assign_rejects_bad_assignments():
    L = ex4_f(0, 0)
    with pytest.raises(ValidationError, match="outside gap"):
        assign(L, {0: F(3, 4), F(1, 3): 1})
    with pytest.raises(ValidationError, match="do not match"):
        assign(L, {0: F(1, 3)})


def test_critical_grid_ex4_contains_case_boundary():
    L = ex4_f(0, 0)
    grid = critical_grid(L, gap_at(L, 0), 3)
    assert F(1, 3) in grid
    assert grid == sorted(grid) and grid[0] == F(1, 6) and grid[-1] == F(1, 2)


def test_critical_grid_depth_zero():
    for L in (ex1_f(), ex3_f(), ex4_f(0, 0)):
        for g in discontinuities(L):
            assert critical_grid(L, g, 0) == [g.lo, (g.lo + g.hi) / 2, g.hi]


def test_critical_grid_ex2():
    L = ex2_f()
    grid = critical_grid(L, gap_at(L, 0), 2)
    assert grid[0] == 0 and grid[-1] == F(1, 2)
    assert F(1, 4) in grid


def test_critical_grid_follows_sloped_preimages():
    # ex4's x + 1/6 piece maps (5/6, 1) onto (1, 7/6); on the gap [1/2, 1] at 1/3
    # no new preimages appear, but the 5/6 breakpoint itself is critical
    L = ex4_f(0, 0)
    assert F(5, 6) in critical_grid(L, gap_at(L, F(1, 3)), 1)


def test_critical_grid_negative_depth():
    L = ex1_f()
    with pytest.raises(ValidationError):
        critical_grid(L, discontinuities(L)[0], -1)


@pytest.mark.parametrize("make, expected", [
    (ex1_f, [0, F(1, 4), F(1, 3), F(1, 2)]),
    (ex2_f, [0, F(1, 3), F(1, 2)]),
    (ex3_f, [F(1, 4), F(2, 7), F(3, 10), F(1, 3), F(3, 8), F(2, 5)]),
    (lambda: ex4_f(0, 0), [F(1, 3), F(2, 5), F(1, 2)]),
])
def test_vset_examples(make, expected):
    assert list(vset(make())) == expected


@pytest.mark.parametrize("make", [ex1_f, ex2_f, lambda: ex4_f(0, 0), ex5_f])
@pytest.mark.parametrize("depth", [0, 1, 3])
def test_lazy_vset_equals_full_product(make, depth):
    L = make()
    assert vset(L, depth) == vset_bruteforce(L, depth)


def test_vset_requires_a_gap():
    with pytest.raises(ValidationError):
        vset(identity())


def test_vset_budget_error_names_budget():
    with pytest.raises(BudgetError, match="max_assignments=2"):
        vset(ex3_f(), max_assignments=2)


def test_vset_ex5_excludes_center_and_3_11():
    v = vset(ex5_f())
    assert excluded_center(F(1, 5), F(1, 3)) == F(4, 15)
    assert F(4, 15) not in v and F(3, 11) not in v


@pytest.mark.parametrize("make", [ex1_f, ex2_f, ex3_f, lambda: ex4_f(0, 0), ex5_f])
def test_vset_refinement_monotone(make):
    L = make()
    prev = set()
    for d in range(0, 7):
        cur = set(vset(L, d))
        assert prev <= cur
        prev = cur


@pytest.mark.parametrize("make", [ex1_f, ex2_f, ex3_f, lambda: ex4_f(0, 0), ex5_f])
def test_random_assignments_add_no_values(make):
    L = make()
    rng = random.Random(2024)
    v = set(vset(L, 6))
    gaps = discontinuities(L)
    for _ in range(1000):
        a = {g.point: random_fraction(rng, g.lo, g.hi, 97) for g in gaps}
        assert exact_rotation(assign(L, a)) in v


def test_scan_family_ex4_caption():
    base = ex4_f(0, 0)
    alphas = [F(1, 4), F(1, 2), F(3, 4)]
    rows = scan_family(base, [(0, [(1 + 2 * a) / 6 for a in alphas]), (F(1, 3), [F(11, 12)])])
    assert [r[-1] for r in rows] == [F(1, 3), F(2, 5), F(1, 2)]


@pytest.mark.parametrize("beta, nu", [(F(2, 3), F(1, 3)), (1, F(1, 2))])
def test_scan_family_ex4_boundaries(beta, nu):
    rows = scan_family(ex4_f(0, 0), [(0, [F(1, 3)]), (F(1, 3), [(1 + F(beta)) / 2])])
    assert rows[0][-1] == nu


def test_scan_family_partial_axes_keep_base_values():
    base = ex4_f(0, F(9, 10))
    rows = scan_family(base, [(0, [F(1, 3)])])
    assert rows == [(F(1, 3), F(2, 5))]


def test_scan_family_rejects_non_gap_axis():
    with pytest.raises(ValidationError):
        scan_family(ex4_f(0, 0), [(F(1, 2), [F(1, 2)])])


def test_scan_family_records_errors_in_row():
    rows = scan_family(ex4_f(0, 0), [(0, [F(1, 3), F(9, 10)])])
    assert rows[0][-1] == F(1, 3)
    assert isinstance(rows[1][-1], str) and rows[1][-1].startswith("error:")


def test_scan_csv_format():
    rows = scan_family(ex4_f(0, 0), [(F(1, 3), [1, F(1, 2)]), (0, [F(1, 2), F(1, 6)])])
    text = scan_csv(rows, 2)
    assert text.splitlines() == [
        "param_1,param_2,nu",
        "1/2,1/6,1/3",
        "1/2,1/2,1/2",
        "1/1,1/6,1/3",
        "1/1,1/2,1/2",
    ]


@pytest.mark.parametrize("make", [ex1_f, ex2_f])
def test_verify_embedding_against_right_map(make):
    f = make()
    rep = verify_embedding(f, right_map(f), 100)
    assert rep.applicable and rep.passed
    assert rep.relation == "p-1" and rep.center == F(1, 2) and rep.x0 == 0
    assert len(rep.checks) == 101 and all(lhs == 0 for _, lhs, _ in rep.checks)


def test_verify_embedding_ex1_g1():
    # nu(g1) = 1/4 and nu(f) = 0 = (1 - 1)/4: the mirror relation applies
    rep = verify_embedding(ex1_f(), ex1_g1(), 50)
    assert rep.applicable and rep.passed and rep.relation == "p-1"


def test_verify_embedding_not_applicable():
    # nu = 1/4 and 1/3: neither (1+1)/4 nor (1-1)/3 matches
    from circlemaps.examples import ex1_g2
    rep = verify_embedding(ex1_g1(), ex1_g2())
    assert not rep.applicable and not rep.passed
    assert rep.lines() == ["hypothesis not applicable"]


def test_verify_embedding_p_plus_one_direction():
    # g1 has nu = 1/4 and f+ has nu = 1/2 = (1 + 1)/4
    rep = verify_embedding(ex1_g1(), right_map(ex1_f()), 60)
    assert rep.applicable and rep.relation == "p+1" and rep.passed
    assert rep.center == F(1, 4) and rep.lines()[-1] == "PASS"


def test_verify_embedding_requires_zero_distance():
    with pytest.raises(ValidationError):
        verify_embedding(ex1_f(), ex2_f())


def test_hypothesis_check_examples():
    assert hypothesis_check(ex5_f()).status == "not satisfied"
    assert hypothesis_check(identity()).status == "not satisfied"


def test_hypothesis_check_pass_case():
    # nu- = 0, nu = 1/4, nu+ = 1/2 : p = 1 odd, q = 4 even
    rep = hypothesis_check(ex1_g1())
    assert rep.status == "pass"
    assert str(rep) == "pass (0/1 1/4 1/2)"


def test_ex5_center_never_realized():
    L = ex5_f()
    for d in range(0, 13):
        for v in vset(L, d):
            assert v != F(4, 15)


# -- invariants on random step maps -------------------------------------------------

MAPS = [random_step_map(random.Random(500 + s)) for s in range(80)]


@pytest.mark.parametrize("L", MAPS)
def test_family_invariants(L):
    rng = random.Random(11)
    gaps = discontinuities(L)
    nu_m, nu_p = exact_rotation(left_map(L)), exact_rotation(right_map(L))
    for _ in range(5):
        g = assign(L, {d.point: random_fraction(rng, d.lo, d.hi) for d in gaps})
        assert levy_zero_equiv(L, g)
        assert pointwise_leq(left_map(L), g) and pointwise_leq(g, right_map(L))
    v = set(vset(L))
    assert nu_m in v and nu_p in v
    if nu_m < nu_p:
        assert v <= {nu_m, nu_p} | set(sset(nu_m, nu_p))
        c = excluded_center(nu_m, nu_p)
        assert c is None or c not in v
    else:
        assert v == {nu_m}


def test_complete_fills_missing_gaps():
    L = ex4_f(F(1, 2), F(5, 6))
    assert complete(L, {0: F(1, 6)}) == {0: F(1, 6), F(1, 3): F(11, 12)}

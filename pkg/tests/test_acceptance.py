"""Exit criteria, one marked group per criterion.

The terminal summary (see conftest.py) prints a PASS/FAIL line per criterion.
"""
import random
import time
from fractions import Fraction as F
from math import factorial as fact

import pytest

from nkconfig.bounds import Realizability, bar_step, hat_table, known_realizable, table1
from nkconfig.configuration import (
    Configuration,
    apply_map,
    largest_pencil,
    pencils,
    relabel,
    verify,
)
from nkconfig.constructions import affine_replication, affine_switch, affine_switch_band
from nkconfig.geometry import (
    AffineMap,
    Point,
    collinear,
    line_through,
    pencil_center,
    pencil_center_y,
    switch_family,
)
from nkconfig.planner import coverage, execute, guaranteed_from, plan, plannable
from nkconfig.seeds import multilateral, pappus

from conftest import two_pencil_fixture


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def rand_rat(rng, lo=-40, hi=40, den=30):
    return F(rng.randint(lo, hi), rng.randint(1, den))


# --- 1. figures ---------------------------------------------------------------

@pytest.mark.acceptance(1)
def test_fig_quadrilateral_16_3():
    res, secs = timed(affine_replication, multilateral(4), 3)
    rep = verify(res.output)
    assert rep.ok and (rep.n_points, rep.k) == (16, 3)
    assert secs < 1.0


@pytest.mark.acceptance(1)
def test_fig_pappus_45_4():
    res, secs = timed(affine_replication, pappus(), 4)
    rep = verify(res.output)
    assert rep.ok and (rep.n_points, rep.k) == (45, 4)
    assert len(res.new_pencil) == 9
    assert any(len(p) == 9 for p in pencils(res.output))
    assert secs < 1.0


@pytest.mark.acceptance(1)
@pytest.mark.parametrize("r,n", [(1, 19), (2, 20), (3, 21)])
def test_fig_pappus_switch(r, n):
    c = pappus()
    res, secs = timed(affine_switch, c, largest_pencil(c), None, s=r, t=0)
    rep = verify(res.output)
    assert rep.ok and (rep.n_points, rep.k) == (n, 3)
    assert secs < 1.0


@pytest.mark.acceptance(1)
def test_fig_pappus_band():
    c = pappus()
    band, secs = timed(affine_switch_band, c, largest_pencil(c))
    assert [r.output.n for r in band] == [19, 20, 21]
    assert secs < 1.0


# --- 2. iterated bound table --------------------------------------------------

TABLE1 = {
    (2, 3): [3, 56, 840, 20160, 705600, 33868800, 2133734400, 170698752000, 16899176448000],
    (3, 9): [9, 210, 5040, 176400, 8467200, 533433600, 42674688000, 4224794112000],
    (4, 24): [24, 576, 20160, 967680, 60963840, 4877107200, 482833612800],
}


@pytest.mark.acceptance(2)
@pytest.mark.parametrize("start", sorted(TABLE1))
def test_table1_column(start):
    k0, v0 = start
    got = table1(k0, v0, 10).values()
    assert got == dict(zip(range(k0, 11), TABLE1[start]))


# --- 3. improved bound table --------------------------------------------------

TABLE2 = {5: 576, 6: 7350, 7: 96768, 8: 1333584, 9: 19353600, 10: 287400960, 11: 3832012800}
LARGE = {
    24: (fact(24) // fact(6) * 576 * (24**2 - 1), 5, (285, 26)),
    25: (fact(25) // fact(6) * (25**2 - 1) ** 2, 5, (839, 27)),
    86: (fact(86) // fact(7) * (86**2 - 1) ** 2, 6, (263, 134)),
    110: (fact(110) // fact(8) * (fact(7) // fact(5)) * (7**2 - 1) ** 2 * (110**2 - 1), 7, (461, 182)),
}


def sig3(v):
    e = len(str(v)) - 1
    return (v * 200 + 10**e) // (2 * 10**e), e


@pytest.mark.acceptance(3)
def test_table2_golden():
    table, secs = timed(hat_table, 110)
    assert {k: table[k].value for k in TABLE2} == TABLE2
    assert (table[9].t_used, table[10].t_used) == (4, 5)
    assert (table[32].t_used, table[33].t_used) == (5, 6)
    for k, (value, t, approx) in LARGE.items():
        assert table[k].value == value
        assert table[k].t_used == t
        assert sig3(table[k].value) == approx
    assert secs < 1.0


# --- 4. chained k = 5 construction -------------------------------------------

@pytest.mark.acceptance(4)
def test_chain_to_1085_5():
    t0 = time.perf_counter()
    a = affine_replication(pappus(), 4)
    b = affine_replication(a.output, 5)
    rep = verify(b.output)
    assert rep.ok and (rep.n_points, rep.k) == (270, 5)
    assert len(b.new_pencil) == 45
    s = affine_switch(b.output, b.new_pencil, None, s=5, t=0)
    rep = verify(s.output)
    assert rep.ok and (rep.n_points, rep.k) == (1085, 5)
    assert time.perf_counter() - t0 < 600


# --- 5. property suites -------------------------------------------------------

@pytest.mark.acceptance(5)
def test_switch_family_collinear_100():
    rng = random.Random(25)
    for _ in range(100):
        h = rng.randint(3, 40)
        p = Point(rand_rat(rng), rand_rat(rng))
        maps = switch_family(h, h + 1)  # j = 1 .. h-1
        j1, j2 = sorted(rng.sample(range(len(maps)), 2))
        assert collinear(p, maps[j1](p), maps[j2](p))


@pytest.mark.acceptance(5)
def test_pencil_center_concurrency_100():
    rng = random.Random(24)
    done = 0
    while done < 100:
        a, b, x0, y0 = (rand_rat(rng) for _ in range(4))
        if a == b or b == 1 or a == 1 or 0 in (a, b, x0, y0):
            continue
        alpha = AffineMap.diagonal(a, b)
        cx = pencil_center(alpha, x0)
        assert cx.y == 0
        joins = [line_through(Point(x0, F(y)), alpha(Point(x0, F(y)))) for y in (1, 2, 3)]
        assert len(set(joins)) == 3
        assert all(l.evaluate(cx) == 0 for l in joins)
        cy = pencil_center_y(alpha, y0)
        assert cy.x == 0
        joins = [line_through(Point(F(x), y0), alpha(Point(F(x), y0))) for x in (1, 2, 3)]
        assert all(l.evaluate(cy) == 0 for l in joins)
        done += 1


def construction_corpus():
    """(kind, input order m, k, r, result) for every construction the tests exercise."""
    out = []
    for m in range(3, 11):
        out.append(("AR", m, 3, None, affine_replication(multilateral(m), 3)))
    p45 = affine_replication(pappus(), 4)
    out.append(("AR", 9, 4, None, p45))
    out.append(("AR", 12, 4, None, affine_replication(out[0][4].output, 4)))
    c = pappus()
    for res in affine_switch_band(c, largest_pencil(c)):
        out.append(("AS", 9, 3, len(res.removed_line_ids), res))
    for res in affine_switch_band(p45.output, p45.new_pencil):
        out.append(("AS", 45, 4, len(res.removed_line_ids), res))
    two = two_pencil_fixture()
    h, v = pencils(two)
    for s, t in [(1, 1), (3, 3), (0, 2)]:
        out.append(("AS", 18, 3, s + t, affine_switch(two, h, v, s=s, t=t)))
    return out


@pytest.mark.acceptance(5)
def test_count_identities_corpus():
    for kind, m, k, r, res in construction_corpus():
        c = res.output
        if kind == "AR":
            assert c.n == len(c.lines) == (k + 1) * m
            assert len(res.new_pencil) == m
        else:
            assert c.n == (k - 1) * m + r
            assert len(c.lines) == (k - 1) * (m - r) + r * k == c.n
        assert verify(c).ok


@pytest.mark.acceptance(5)
def test_verify_invariance_50():
    rng = random.Random(50)
    good = pappus()
    bad = Configuration(3, (Point(F(1), F(0)),) + good.points[1:], good.lines)
    done = 0
    while done < 50:
        a, b, c, d = (rand_rat(rng, -9, 9, 7) for _ in range(4))
        if a * d - b * c == 0:
            continue
        m = AffineMap(a, b, c, d, rand_rat(rng), rand_rat(rng))
        pp, lp = list(range(9)), list(range(9))
        rng.shuffle(pp)
        rng.shuffle(lp)
        for base, want in ((good, True), (bad, False)):
            assert verify(apply_map(base, m)).ok is want
            assert verify(relabel(base, pp, lp)).ok is want
            assert verify(relabel(apply_map(base, m), pp, lp)).ok is want
        done += 1


@pytest.mark.acceptance(5)
def test_planner_soundness_k3():
    assert guaranteed_from(3) == bar_step(3, 3) == 56
    cert = coverage(3, 120)
    assert cert.gaps() == []
    assert not plannable(3, 55)
    assert all(plannable(3, n) for n in range(56, 121))
    executed = 0
    for n in range(9, 121):
        if plannable(3, n):
            c = execute(plan(3, n))
            assert verify(c).ok and (c.n, c.k) == (n, 3)
            executed += 1
    assert executed == len([n for n in cert.plannable if 9 <= n <= 120])


# --- 6. negative controls -----------------------------------------------------

@pytest.mark.acceptance(6)
def test_perturbed_pappus_fails_locally():
    c = pappus()
    pts = list(c.points)
    pts[4] = Point(pts[4].x + 1, pts[4].y)
    rep = verify(Configuration(3, tuple(pts), c.lines))
    assert not rep.ok
    assert "broken_incidence" in rep.kinds()
    declared = {li for li, rec in enumerate(c.lines) if 4 in rec.points}
    assert {v.point_id for v in rep.violations if v.kind == "broken_incidence"} == {4}
    assert {v.line_id for v in rep.violations if v.line_id is not None} <= declared


@pytest.mark.acceptance(6)
@pytest.mark.parametrize("k,n,want", [
    (3, 7, Realizability.NO),
    (3, 8, Realizability.NO),
    (4, 19, Realizability.NO),
    (4, 23, Realizability.UNKNOWN),
])
def test_known_realizable_controls(k, n, want):
    assert known_realizable(k, n) is want

from fractions import Fraction as F
from math import factorial as fact

import pytest
from hypothesis import given, strategies as st

from nkconfig.bounds import (
    ArithmeticFamily,
    Realizability,
    band_adjacency_threshold,
    bar_step,
    best_table1,
    falling_ratio,
    hat_table,
    hat_value,
    known_realizable,
    n_bound,
    table1,
)
from nkconfig.errors import BadParams

YES, NO, UNKNOWN = Realizability.YES, Realizability.NO, Realizability.UNKNOWN

# golden iterated-bound values, one column per starting value
TABLE1 = {
    2: {2: 3, 3: 56, 4: 840, 5: 20160, 6: 705600, 7: 33868800, 8: 2133734400,
        9: 170698752000, 10: 16899176448000},
    3: {3: 9, 4: 210, 5: 5040, 6: 176400, 7: 8467200, 8: 533433600,
        9: 42674688000, 10: 4224794112000},
    4: {4: 24, 5: 576, 6: 20160, 7: 967680, 8: 60963840, 9: 4877107200,
        10: 482833612800},
}
TABLE1_BEST = {2: 3, 3: 9, 4: 24, 5: 576, 6: 20160, 7: 967680, 8: 60963840,
               9: 4877107200, 10: 482833612800}

# golden improved-bound rows with the minimizing t
TABLE2 = {5: (576, 4), 6: (7350, 4), 7: (96768, 4), 8: (1333584, 4), 9: (19353600, 4),
          10: (287400960, 5), 11: (3832012800, 5)}

# closed forms of the improved bound, with their t
CLOSED = {
    5: ((5**2 - 1) ** 2, 4),
    6: (6 * (6**2 - 1) ** 2, 4),
    7: (7 * 6 * (7**2 - 1) ** 2, 4),
    8: (fact(8) // fact(5) * (8**2 - 1) ** 2, 4),
    9: (fact(9) // fact(5) * (9**2 - 1) ** 2, 4),
    10: (fact(10) // fact(6) * 576 * (10**2 - 1), 5),
    11: (fact(11) // fact(6) * 576 * (11**2 - 1), 5),
    24: (fact(24) // fact(6) * 576 * (24**2 - 1), 5),
    25: (fact(25) // fact(6) * (25**2 - 1) ** 2, 5),
    26: (fact(26) // fact(6) * (26**2 - 1) ** 2, 5),
    32: (fact(32) // fact(6) * (32**2 - 1) ** 2, 5),
    33: (fact(33) // fact(7) * 7350 * (33**2 - 1), 6),
    85: (fact(85) // fact(7) * 7350 * (85**2 - 1), 6),
    86: (fact(86) // fact(7) * (86**2 - 1) ** 2, 6),
    109: (fact(109) // fact(7) * (109**2 - 1) ** 2, 6),
    110: (fact(110) // fact(8) * fact(7) // fact(5) * (7**2 - 1) ** 2 * (110**2 - 1), 7),
}

# published approximate magnitudes as (three significant digits, exponent)
APPROX = {24: (285, 26), 25: (839, 27), 32: (382, 38), 33: (138, 40), 85: (297, 132),
          86: (263, 134), 109: (404, 180), 110: (461, 182)}


def sig3(v):
    e = len(str(v)) - 1
    return (v * 200 + 10**e) // (2 * 10**e), e


# --- bar_step / table1 -------------------------------------------------------

@pytest.mark.parametrize("k,prev,want", [(5, 24, 576), (4, 9, 210), (3, 3, 56)])
def test_bar_step_examples(k, prev, want):
    assert bar_step(k, prev) == want


def test_bar_step_rejects_small():
    with pytest.raises(BadParams):
        bar_step(2, 3)


@pytest.mark.parametrize("start", [2, 3, 4])
def test_table1_columns(start):
    t = table1(start, TABLE1[start][start], 10)
    assert t.values() == TABLE1[start]


def test_table1_best_column():
    assert best_table1(10).values() == TABLE1_BEST


def test_table1_text_and_csv_exact_integers():
    t = table1(4, 24, 10)
    assert "482833612800" in t.to_text()
    assert "e+" not in t.to_csv()
    assert t.to_csv().splitlines()[0] == "k,value,t_used,formula"


@given(st.integers(3, 60), st.integers(3, 10**6), st.integers(3, 10**6))
def test_bar_step_monotone(k, x, y):
    x, y = min(x, y), max(x, y)
    assert bar_step(k, x) <= bar_step(k, y)


def test_table1_strictly_increasing():
    for start in (2, 3, 4):
        vals = list(table1(start, TABLE1[start][start], 20).values().values())
        assert all(a < b for a, b in zip(vals, vals[1:]))


# --- n_bound ----------------------------------------------------------------

@pytest.mark.parametrize("args,want", [
    ((5, 4, 24, 1), 576),
    ((10, 5, 576, 1), 287400960),
    ((5, 4, 20, 1), 552),
])
def test_n_bound_examples(args, want):
    assert n_bound(*args) == want


@pytest.mark.parametrize("args", [(5, 5, 24, 1), (5, 1, 24, 1), (5, 4, 2, 1), (5, 4, 24, 0)])
def test_n_bound_bad_params(args):
    with pytest.raises(BadParams):
        n_bound(*args)


def test_n_bound_matches_bar_step_at_top():
    for k in range(3, 30):
        for a in range(k * k - 2, k * k + 40):
            assert n_bound(k, k - 1, a, 1) == bar_step(k, a)


def test_n_bound_sparse_sequence_exposed():
    assert n_bound(6, 4, 18, 2) == 35 * 6 * 70


def test_falling_ratio():
    for k in range(3, 40):
        for t in range(2, k):
            assert falling_ratio(k, t) == fact(k) // fact(t + 1)


def test_arithmetic_family_validation():
    ArithmeticFamily(4, 18, 2)
    with pytest.raises(BadParams):
        ArithmeticFamily(1, 18, 2)


# --- band adjacency ---------------------------------------------------------

def adjacency_oracle(k, t, d, limit=100000):
    """Smallest a such that every switch band from a t-level start a' >= a touches the next one.

    Starts a' step by d at level t; k-1-t replications scale them by R = k!/(t+1)!.
    The band of X = a'R spans [(k²-1)X, k²X]; the next one starts at (k²-1)(X + dR).
    """
    R = fact(k) // fact(t + 1)
    q = k * k - 1
    touching = [k * k * (a * R) + 1 >= q * (a * R + d * R) for a in range(limit)]
    first = limit
    while first > 0 and touching[first - 1]:
        first -= 1
    return first


@pytest.mark.parametrize("k,t,d,want", [(5, 4, 1, 23), (6, 4, 1, 35), (5, 4, 2, 47)])
def test_band_adjacency_examples(k, t, d, want):
    assert band_adjacency_threshold(k, t, d) == want


@pytest.mark.parametrize("k,t,d", [(k, t, d) for k in range(3, 9) for t in range(2, k) for d in (1, 2, 3)])
def test_band_adjacency_vs_enumeration(k, t, d):
    assert band_adjacency_threshold(k, t, d) == adjacency_oracle(k, t, d)


def test_band_adjacency_closed_form():
    for k in range(3, 20):
        for t in range(2, k):
            for d in (1, 2, 5):
                q = k * k - 1
                assert band_adjacency_threshold(k, t, d) == (q * d - 1 if t == k - 1 else q * d)


# --- improved bound ---------------------------------------------------------

def test_hat_table_golden():
    table = hat_table(11)
    assert {k: (r.value, r.t_used) for k, r in table.rows.items()} == TABLE2


@pytest.mark.parametrize("k", sorted(CLOSED))
def test_hat_closed_forms(k):
    value, t = CLOSED[k]
    row = hat_table(k)[k]
    assert row.value == value
    assert row.t_used == t


@pytest.mark.parametrize("k", sorted(APPROX))
def test_hat_leading_digits(k):
    assert sig3(hat_value(k)) == APPROX[k]


def test_hat_t_transitions():
    table = hat_table(110)
    ts = {k: table[k].t_used for k in table.rows}
    assert (ts[9], ts[10]) == (4, 5)
    assert (ts[32], ts[33]) == (5, 6)
    assert (ts[109], ts[110]) == (6, 7)
    assert 3 not in ts.values()


def test_hat_not_worse_than_iterated():
    best = best_table1(40).values()
    hat = hat_table(40)
    assert hat[5].value == best[5]
    for k in range(6, 41):
        assert hat[k].value < best[k]


def test_hat_matches_direct_minimum():
    # min over t of (k²-1) k!/(t+1)! max(N^_t, k²-1), recomputed independently
    known = {3: 9, 4: 24}
    for k in range(5, 60):
        q = k * k - 1
        known[k] = min(q * (fact(k) // fact(t + 1)) * max(known[t], q) for t in range(3, k))
        assert hat_value(k) == known[k]


def test_hat_row_110_exact_magnitude():
    assert len(str(hat_value(110))) == 183


def test_hat_table_needs_k5():
    with pytest.raises(BadParams):
        hat_table(4)


# --- known facts ------------------------------------------------------------

@pytest.mark.parametrize("k,n,want", [
    (4, 19, NO), (4, 23, UNKNOWN), (3, 8, NO), (3, 7, NO),
    (3, 9, YES), (2, 3, YES), (2, 2, NO), (4, 18, YES), (4, 20, YES), (4, 21, YES),
    (4, 22, YES), (4, 24, YES), (4, 12, NO), (4, 15, UNKNOWN), (5, 576, YES),
    (5, 20, NO), (5, 100, UNKNOWN), (5, 1085, YES), (7, 96768, YES),
])
def test_known_realizable(k, n, want):
    assert known_realizable(k, n) is want


def test_known_realizable_k3_threshold():
    assert [known_realizable(3, n) for n in range(1, 12)] == [NO] * 8 + [YES] * 3

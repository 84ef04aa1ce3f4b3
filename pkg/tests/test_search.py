import itertools
from fractions import Fraction

import pytest

from carrykit.carries import carry_count, digit_system, integer_carry_count
from carrykit.groups import coset_system, make_cyclic
from carrykit.search import (SearchLimitError, grid_carry_score, grid_cscore, is_balanced_dilate,
                             max_cscore_group, max_solution_count, min_carries_group,
                             min_carries_window)


def window_oracle(b, window):
    levels = [[x for x in range(-window, window + 1) if x % b == r] for r in range(1, b)]
    best = None
    for rest in itertools.product(*levels):
        c = integer_carry_count((0,) + rest)
        best = c if best is None else min(best, c)
    return best


def group_oracle(system):
    return min(carry_count(system, reps) for reps in itertools.product(*system.members))


@pytest.mark.parametrize("b, window", [(2, 4), (3, 6), (4, 6)])
def test_window_pruned_matches_full_scan(b, window):
    pruned = min_carries_window(b, window)
    plain = min_carries_window(b, window, prune=False)
    assert pruned.objective == plain.objective == window_oracle(b, window)
    assert pruned.nodes <= plain.nodes


@pytest.mark.parametrize("p", [2, 3, 5])
def test_group_pruned_matches_full_scan(p):
    system = digit_system(p)
    oracle = group_oracle(system)
    assert min_carries_group(system).objective == oracle
    assert min_carries_group(system, prune=False).objective == oracle


def test_group_counts_agree_between_modes():
    system = digit_system(3)
    a = min_carries_group(system, collect_all=True)
    b = min_carries_group(system, collect_all=True, prune=False)
    assert a.count == b.count
    assert sorted(a.optima) == sorted(b.optima)


def test_workers_do_not_change_results():
    system = digit_system(5)
    one = min_carries_group(system, collect_all=True, workers=1)
    two = min_carries_group(system, collect_all=True, workers=2)
    assert (one.objective, one.witness, one.count) == (two.objective, two.witness, two.count)
    w1 = min_carries_window(5, 10, workers=1)
    w2 = min_carries_window(5, 10, workers=2)
    assert (w1.objective, w1.witness) == (w2.objective, w2.witness)


def test_window_examples():
    r5 = min_carries_window(5, 10, collect_all=True)
    assert r5.objective == 6
    assert is_balanced_dilate(r5.witness, 5)
    assert frozenset({-2, -1, 0, 1, 2}) in {frozenset(o) for o in r5.optima}
    r3 = min_carries_window(3, 6, collect_all=True)
    assert r3.objective == 2
    optima = {frozenset(o) for o in r3.optima}
    assert frozenset({-1, 0, 1}) in optima and frozenset({-2, 0, 2}) in optima
    r4 = min_carries_window(4, 8, collect_all=True)
    assert r4.objective == 4
    assert frozenset({-1, 0, 1, 2}) in {frozenset(o) for o in r4.optima}


def test_odd_optima_are_balanced_dilates():
    for b in (3, 5):
        res = min_carries_window(b, 2 * b, collect_all=True)
        assert all(is_balanced_dilate(o, b) for o in res.optima)


def test_window_minimum_monotone_in_bound():
    vals = [min_carries_window(4, w).objective for w in range(3, 10)]
    assert all(x >= y for x, y in zip(vals, vals[1:]))


def test_balanced_dilate_shapes():
    assert is_balanced_dilate([-1, 0, 1, 2], 4)
    assert is_balanced_dilate([-2, 0, 2], 3)
    assert not is_balanced_dilate([0, 1, 2], 3)


def test_group_minima():
    for p in (3, 5):
        assert min_carries_group(digit_system(p)).objective == (p * p - 1) // 4


def test_max_cscore_examples():
    assert max_cscore_group(digit_system(3)).objective == Fraction(7, 9)
    assert max_cscore_group(digit_system(5)).objective == Fraction(19, 25)
    z6 = make_cyclic(6)
    assert max_cscore_group(coset_system(z6, {0, 2, 4})).objective == 1


def test_unpruned_limit():
    with pytest.raises(SearchLimitError):
        min_carries_group(digit_system(5), prune=False, node_limit=100)


def test_solution_count_p3_exhaustive():
    res = max_solution_count(3)
    assert res.objective == 7 and res.exhaustive
    assert res.info["balanced"] == 7


def test_solution_count_sampled_p5():
    res = max_solution_count(5, samples=2000, seed=1)
    assert res.info["balanced"] == 19
    assert res.info["sampled_max"] <= 19


def test_grid_product_scores():
    assert grid_cscore(3, 6, samples=200).product_balanced == Fraction(49, 81)
    rep = grid_cscore(5, 10, samples=200)
    assert rep.product_balanced == Fraction(361, 625)
    assert rep.best <= Fraction(5865, 10000)
    assert "exploratory" in rep.label


def test_grid_score_of_product_is_product_of_scores():
    xs = [-1, 0, 1]
    assert grid_carry_score([(x, y) for x in xs for y in xs]) == Fraction(7, 9) ** 2

"""Property checks of the algebraic invariants on randomly drawn inputs."""

import math
from fractions import Fraction
from math import gcd

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from carrykit.additive import ModSet, fourier_profile, pollard_check, rep_counts
from carrykit.additive.pollard import cauchy_davenport_check
from carrykit.approx_hom import epsilon_of
from carrykit.carries import (carry_count, carry_table, digit_system, integer_carry_count,
                              sign_count_lower_bound)
from carrykit.fournier import c_score_set, sym_set
from carrykit.groups import coset_system, make_cyclic, make_product

settings.register_profile("carrykit", max_examples=60, deadline=None)
settings.load_profile("carrykit")


@st.composite
def groups(draw):
    if draw(st.booleans()):
        return make_cyclic(draw(st.integers(1, 40)))
    return make_product(make_cyclic(draw(st.integers(1, 7))), make_cyclic(draw(st.integers(1, 7))))


@st.composite
def digit_reps(draw, primes=(2, 3, 5, 7)):
    p = draw(st.sampled_from(primes))
    lifts = draw(st.lists(st.integers(0, p - 1), min_size=p, max_size=p))
    return p, [i + p * t for i, t in enumerate(lifts)]


@given(groups(), st.data())
def test_associativity_and_inverses(g, data):
    n = g.order
    a, b, c = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))
    assert g.mul(a, g.inv(a)) == g.identity


@given(st.integers(2, 30), st.data())
def test_coset_relation(m, data):
    g = make_cyclic(m)
    d = data.draw(st.sampled_from([d for d in range(1, m + 1) if m % d == 0]))
    system = coset_system(g, set(range(0, m, d)))
    x, y = data.draw(st.integers(0, m - 1)), data.draw(st.integers(0, m - 1))
    same = system.coset_of[x] == system.coset_of[y]
    assert same == system.in_subgroup(g.mul(g.inv(x), y))
    sizes = np.bincount(system.coset_of, minlength=system.index)
    assert set(sizes.tolist()) == {m // system.index}


@given(digit_reps())
def test_carry_reconstruction_and_score(pr):
    p, reps = pr
    system = digit_system(p)
    tab = carry_table(system, reps)
    g = system.group
    r = tab.reps.reps
    for i in range(p):
        for j in range(p):
            x12 = r[int(system.coset_of[g.mul(r[i], r[j])])]
            assert g.mul(x12, int(tab.entries[i, j])) == g.mul(r[i], r[j])
            assert system.in_subgroup(int(tab.entries[i, j]))
    assert 0 <= tab.score <= 1


@given(digit_reps(primes=(3, 5, 7)), st.data())
def test_carry_count_dilation_invariant(pr, data):
    p, reps = pr
    m = p * p
    c = data.draw(st.sampled_from([c for c in range(1, m) if gcd(c, m) == 1]))
    system = digit_system(p)
    dilated = system.rep_set_from_elements([c * x % m for x in reps])
    assert carry_count(system, reps) == carry_count(system, dilated)


@given(st.integers(2, 8), st.data())
def test_integer_count_at_least_sign_bound(b, data):
    xs = [0] + [data.draw(st.sampled_from([x for x in range(-3 * b, 3 * b + 1) if x % b == r]))
                for r in range(1, b)]
    pos = sum(1 for x in xs if x > 0)
    assert integer_carry_count(xs) >= sign_count_lower_bound(pos, b) >= b * b // 4


@given(st.integers(5, 60), st.data())
def test_sym_properties(m, data):
    g = make_cyclic(m)
    a = data.draw(st.sets(st.integers(0, m - 1), min_size=1, max_size=m))
    grid = [Fraction(k, 12) for k in range(12)]
    prev = None
    delta = 1 - c_score_set(a, g)
    for eps in grid:
        s = sym_set(a, eps, g)
        assert {(-x) % m for x in s} == s
        if prev is not None:
            assert prev <= s
        prev = s
        assert len(s) <= math.floor(len(a) / (1 - eps))
        if eps > delta:
            assert len(s & a) >= (1 - delta / eps) * len(a)


@given(st.integers(2, 50), st.data())
def test_parseval(m, data):
    a = ModSet(m, data.draw(st.sets(st.integers(0, m - 1), min_size=1)))
    assert fourier_profile(a).parseval_error() < 1e-6


@given(st.sampled_from([5, 7, 11, 13, 17]), st.data())
def test_pollard_and_cauchy_davenport(p, data):
    sets = [data.draw(st.sets(st.integers(0, p - 1), min_size=1, max_size=p)) for _ in range(2)]
    r = data.draw(st.integers(1, 2))
    v = pollard_check(sets, r, p)
    assert v.holds
    size, bound, ok = cauchy_davenport_check(sets[0], sets[1], p)
    assert ok and size >= bound
    if r == 1:
        assert v.value == size


@given(digit_reps(primes=(3, 5)))
def test_section_epsilon_equals_score(pr):
    p, reps = pr
    system = digit_system(p)
    rs = system.rep_set(reps)
    f = np.array(rs.reps, dtype=np.int64)
    assert epsilon_of(f, system.quotient, system.group) == carry_table(system, rs).score


@given(st.sampled_from([3, 5]), st.data())
def test_rep_counts_total(p, data):
    m = p * p
    sets = [ModSet(m, data.draw(st.sets(st.integers(0, m - 1), min_size=1, max_size=6))) for _ in range(3)]
    assert rep_counts(*sets).sum() == math.prod(len(s) for s in sets)

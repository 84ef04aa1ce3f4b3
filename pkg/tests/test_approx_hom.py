import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from carrykit.approx_hom import (InvariantViolation, bclr_repair, epsilon_of, is_homomorphism, split_detector,
                                 tau, tau_limit)
from carrykit.carries import carry_score, digit_system
from carrykit.groups import coset_system, make_cyclic, make_product


def brute_epsilon(f, n1, mul1, mul2):
    good = sum(1 for a in range(n1) for b in range(n1) if mul2(f[a], f[b]) == f[mul1(a, b)])
    return Fraction(good, n1 * n1)


def test_epsilon_examples():
    z3, z9 = make_cyclic(3), make_cyclic(9)
    assert epsilon_of([0, 3, 6], z3, z9) == 1
    assert epsilon_of([0, 1, 8], z3, z9) == Fraction(7, 9)
    g = make_product(make_cyclic(17), make_cyclic(17))
    f = [g.pair(i, int(i == 1)) for i in range(17)]
    assert epsilon_of(f, make_cyclic(17), g) == Fraction(243, 289)
    assert brute_epsilon(f, 17, lambda a, b: (a + b) % 17, g.mul) == Fraction(243, 289)


def test_epsilon_range_error():
    with pytest.raises(ValueError):
        epsilon_of([0, 1, 9], make_cyclic(3), make_cyclic(9))


def test_tau_values():
    assert tau(1) == 0
    # closed form (3 - sqrt(6.6))/12 = 0.0359128; the root check below is the independent route
    assert abs(tau(0.9) - 0.0359128) < 1e-7
    assert abs(tau_limit() - (3 - math.sqrt(11 / 3)) / 12) < 1e-15
    assert abs(tau_limit() - 0.0904) < 1e-4
    for e in (Fraction(7, 9) + Fraction(1, 10 ** 9), Fraction(8, 9), Fraction(99, 100)):
        t = tau(e)
        assert abs(3 * t - 6 * t * t - (1 - float(e))) < 1e-12
        assert t < 0.0905
    with pytest.raises(ValueError):
        tau(Fraction(7, 9))
    with pytest.raises(ValueError):
        tau(Fraction(11, 10))


def test_repair_z17():
    g1 = make_cyclic(17)
    g = make_product(g1, g1)
    f = [g.pair(i, int(i == 1)) for i in range(17)]
    rep = bclr_repair(f, g1, g)
    assert rep.phi == tuple(g.pair(i, 0) for i in range(17))
    assert rep.is_homomorphism and rep.well_defined
    assert rep.agreement == Fraction(16, 17) and rep.disagreement == Fraction(1, 17)
    assert rep.threshold_met and abs(rep.tau_float - 0.0603) < 1e-4
    assert float(rep.disagreement) <= rep.tau_float


def test_repair_brute_plurality():
    g1 = make_cyclic(6)
    g2 = make_cyclic(12)
    f = [0, 2, 4, 7, 8, 10]
    rep = bclr_repair(f, g1, g2)
    for g in range(6):
        votes = [(f[(g + h) % 6] - f[h]) % 12 for h in range(6)]
        top = max(votes.count(v) for v in set(votes))
        assert rep.phi[g] == min(v for v in set(votes) if votes.count(v) == top)


def test_repair_below_threshold_reports():
    rep = bclr_repair([0, 1, 8], make_cyclic(3), make_cyclic(9))
    assert rep.epsilon == Fraction(7, 9) and not rep.threshold_met and rep.tau_float is None


def test_repair_of_homomorphism_is_identity():
    g1, g2 = make_cyclic(5), make_cyclic(25)
    f = [5 * i % 25 for i in range(5)]
    rep = bclr_repair(f, g1, g2)
    assert rep.phi == tuple(f) and rep.agreement == 1 and rep.tie_points == ()


def test_split_examples():
    z6 = coset_system(make_cyclic(6), [0, 2, 4])
    rep = split_detector(z6, z6.rep_set_from_elements([0, 3]))
    assert rep.complement == (0, 3) and rep.verdict == "split-verified"
    g = make_product(make_cyclic(17), make_cyclic(17))
    s = coset_system(g, [g.pair(0, y) for y in range(17)])
    rep = split_detector(s, s.rep_set_from_elements([g.pair(i, int(i == 1)) for i in range(17)]))
    assert rep.score == Fraction(243, 289)
    assert set(rep.complement) == {g.pair(i, 0) for i in range(17)}
    assert all(rep.checks.values())


def test_split_sharp_z9():
    s = digit_system(3)
    scores = set()
    for reps in itertools.product(*s.members):
        rep = split_detector(s, reps)
        scores.add(rep.score)
        assert rep.verdict == "no-guarantee"
        assert rep.score == carry_score(s, reps)
    assert max(scores) == Fraction(7, 9)


@pytest.mark.parametrize("p", [3, 5])
def test_non_split_never_above_threshold(p):
    s = digit_system(p)
    for reps in itertools.product(*s.members):
        assert carry_score(s, reps) <= Fraction(7, 9)


def test_non_split_sampled_p7():
    s = digit_system(7)
    rng = np.random.default_rng(3)
    for _ in range(500):
        reps = [int(rng.choice(m)) for m in s.members]
        assert carry_score(s, reps) <= Fraction(7, 9)


def test_is_homomorphism():
    assert is_homomorphism([0, 3, 6], make_cyclic(3), make_cyclic(9))
    assert not is_homomorphism([0, 1, 8], make_cyclic(3), make_cyclic(9))


def test_invariant_violation_is_assertion():
    assert issubclass(InvariantViolation, AssertionError)

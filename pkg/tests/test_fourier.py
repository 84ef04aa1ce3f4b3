import cmath
import math

import numpy as np
import pytest

from carrykit.additive import ModSet, arc_concentration, best_arc, fourier, fourier_profile, large_fourier_bound_check, max_nonzero_fourier


def direct(a, r):
    return sum(cmath.exp(2j * math.pi * r * x / a.modulus) for x in a.elements)


def test_examples():
    full = ModSet(10, range(10))
    assert all(abs(fourier(full, r)) < 1e-9 for r in range(1, 10))
    a = ModSet(25, range(5))
    assert abs(fourier(a, 5)) < 1e-9
    assert abs(abs(fourier(a, 1)) - math.sin(math.pi / 5) / math.sin(math.pi / 25)) < 1e-12


def test_profile_matches_direct_sum():
    rng = np.random.default_rng(2)
    for _ in range(20):
        m = int(rng.integers(2, 60))
        a = ModSet(m, rng.choice(m, size=int(rng.integers(1, m + 1)), replace=False))
        prof = fourier_profile(a)
        for r in range(m):
            assert abs(prof.coefficients[r] - direct(a, r)) < 1e-9
        assert abs(prof.coefficients[0] - len(a)) < 1e-9
        assert prof.parseval_error() < 1e-6
        assert np.all(np.abs(prof.coefficients) <= len(a) + 1e-9)


def test_argmax_smallest_r():
    a = ModSet(25, range(5))
    r, mag = max_nonzero_fourier(a)
    assert r == 1 and abs(mag - 4.689779682344989) < 1e-9


def test_bound_examples():
    chk = large_fourier_bound_check(ModSet(25, range(5)))
    assert abs(chk["bound"] - 10 / 3) < 1e-12 and chk["holds"]
    chk = large_fourier_bound_check(ModSet(9, [0, 1, 8]))
    assert abs(chk["bound"] - 3 * math.sqrt(2 / 5)) < 1e-12
    assert abs(chk["actual"] - abs(1 + 2 * math.cos(2 * math.pi / 9))) < 1e-12
    chk = large_fourier_bound_check(ModSet(25, range(0, 25, 5)))
    assert abs(chk["bound"] - 5) < 1e-12 and abs(chk["actual"] - 5) < 1e-9
    with pytest.raises(ValueError):
        large_fourier_bound_check(ModSet(5, range(5)))


def test_arc_example():
    pts = [cmath.exp(2j * math.pi * a / 25) for a in range(5)]
    res = arc_concentration(pts)
    assert res.count == 5 and res.count >= (5 + res.resultant) / 2
    assert res.found and not res.refuted


def brute_arc(points, phi):
    ang = [cmath.phase(z) % (2 * math.pi) for z in points]
    best = 0
    for s in ang:
        best = max(best, sum(1 for t in ang if (t - s) % (2 * math.pi) <= phi + 1e-9))
    return best


def test_best_arc_brute():
    rng = np.random.default_rng(4)
    for _ in range(50):
        n = int(rng.integers(1, 15))
        pts = [cmath.exp(1j * t) for t in rng.uniform(0, 2 * math.pi, n)]
        phi = float(rng.uniform(0.1, 2 * math.pi))
        assert best_arc(pts, phi)[1] == brute_arc(pts, phi)


def test_arc_lemma_never_refuted():
    rng = np.random.default_rng(7)
    for _ in range(300):
        n = int(rng.integers(2, 12))
        pts = [cmath.exp(1j * t) for t in rng.normal(0, 1.2, n)]
        phi = float(rng.uniform(0.3, 2 * math.pi - 0.3))
        for k in range(n):
            assert not arc_concentration(pts, phi, k).refuted


def test_points_off_circle_rejected():
    with pytest.raises(ValueError):
        best_arc([2 + 0j], 1.0)

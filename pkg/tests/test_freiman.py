import itertools

import pytest

from carrykit.additive import IntSet, ModSet, freiman_24_check, freiman_3k3_check, freiman_iso_check
from carrykit.additive.freiman import AP, is_prime, smallest_ap_cover


def brute_iso(a, b, m_a, m_b):
    def eq(x, y, z, w, m):
        return (x + y - z - w) == 0 if m is None else (x + y - z - w) % m == 0
    f = dict(zip(a, b))
    return all(eq(x, y, z, w, m_a) == eq(f[x], f[y], f[z], f[w], m_b) for x, y, z, w in itertools.product(a, repeat=4))


def test_3k3_examples():
    # |A+A| = 6 exceeds 3k-4 = 5 for k = 3, so only b = 0 qualifies at k = 3
    r = freiman_3k3_check([0, 1, 3])
    assert not r.applicable and r.sumset_size == 6 and r.excess == 1
    assert smallest_ap_cover([0, 1, 3], 4) == AP(0, 1, 4)
    r = freiman_3k3_check([0, 1, 2, 4])
    assert r.applicable and r.sumset_size == 8 and r.excess == 1
    assert r.ap == AP(0, 1, 5)
    r = freiman_3k3_check([0, 2, 4])
    assert r.applicable and r.ap.elements() == (0, 2, 4)
    r = freiman_3k3_check([0, 1, 5])
    assert not r.applicable
    with pytest.raises(ValueError):
        freiman_3k3_check([0, 1])


def test_3k3_exhaustive_small():
    for k in range(3, 6):
        for a in itertools.combinations(range(10), k):
            r = freiman_3k3_check(IntSet(a))
            if r.applicable:
                # independent route: some AP of length <= k+b covers A
                lo, hi = a[0], a[-1]
                ok = any(all((x - lo) % d == 0 for x in a) and (hi - lo) // d + 1 <= r.bound_length
                         for d in range(1, hi - lo + 1))
                assert ok and not r.counterexample
                assert set(a) <= set(r.ap.elements())


def test_24_examples():
    # k = 4: |A+A| >= 7 > 2.4k - 3 = 6.6, so the hypothesis needs k >= 5
    assert not freiman_24_check([0, 1, 2, 3], 211).applicable
    r = freiman_24_check([0, 1, 2, 3, 4], 211)
    assert r.applicable and r.ap is not None and r.ap.length == 5
    assert set(r.ap.elements()) >= {0, 1, 2, 3, 4}
    r = freiman_24_check([0, 1, 5, 40], 211)
    assert r.sumset_size == 10 and not r.applicable
    assert not freiman_24_check(list(range(10)), 211).applicable
    with pytest.raises(ValueError):
        freiman_24_check([0, 1], 12)


def test_24_dilated_progression():
    # a dilated AP mod a prime is found with the matching difference
    p = 353
    a = ModSet(p, [(17 * t + 5) % p for t in range(10)])
    r = freiman_24_check(a, p)
    assert r.applicable and set(a.elements) <= set(r.ap.elements()) and r.ap.length == 10


def test_iso_examples():
    assert freiman_iso_check([0, 1, 2], [0, 1, 2], [0, 1, 2], None, 9)
    assert not freiman_iso_check([0, 1, 2], [0, 1, 2], [0, 1, 2], 3, None)
    a = [0, 1, 3, 7]
    b = [(5 * x + 2) % 11 for x in a]
    assert freiman_iso_check(a, b, b, 11, 11)
    with pytest.raises(ValueError):
        freiman_iso_check([0, 1], [0, 0], [0, 0])


def test_iso_brute():
    for a in itertools.combinations(range(7), 3):
        for b in itertools.permutations(range(9), 3):
            if b[0] > 3:
                continue
            assert freiman_iso_check(a, b, b, None, 9) == brute_iso(a, b, None, 9)


def test_helpers():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert smallest_ap_cover([0, 4, 8], 3) == AP(0, 4, 3)
    assert smallest_ap_cover([0, 4, 9], 5) is None

import itertools
from math import gcd

import pytest

from carrykit.additive import (HypothesisNotMet, ModSet, affine_images, concentration_bound,
                               endpoint_witness_carries, rectify, two_carry_classify)
from carrykit.additive.rectify import rectify_exhaustive, rectify_fourier
from carrykit.carries import carry_table, digit_system
from carrykit.search import enumerate_two_carry


def inside_quarter(xs, p):
    m = p * p
    for x in xs:
        r = x % m
        if 2 * r > m:
            r -= m
        if not (4 * r > -m and 4 * r <= m):
            return False
    return True


@pytest.mark.parametrize("elements, p, expected", [
    ((0, 1, 8), 3, (1, 0)),
    ((4, 5, 6), 3, (1, -5)),
    ((0, 1, 2, 3, 4), 5, (1, -2)),
])
def test_worked_examples(elements, p, expected):
    m = p * p
    res = rectify(elements, p, method="exhaustive")
    assert res.success
    image = {(res.c * x + res.d) % m for x in elements}
    assert inside_quarter(image, p)
    want = {(expected[0] * x + expected[1]) % m for x in elements}
    # (c, d) is only determined up to symmetries; the image under the stated pair must also fit
    assert inside_quarter(want, p)
    assert res.c == expected[0] and res.d % m == expected[1] % m


@pytest.mark.parametrize("elements, p", [((0, 1, 8), 3), ((4, 5, 6), 3), ((0, 1, 2, 3, 4), 5)])
def test_routes_agree(elements, p):
    res = rectify(elements, p, method="both")
    assert res.success
    assert inside_quarter(res.image, p)
    c, d = res.info["exhaustive"]
    assert inside_quarter([(c * x + d) for x in elements], p)


def test_large_doubling_rejected():
    # a rep set mod 25 whose sumset has 12 > 10 elements
    a = (0, 6, 12, 23, 19)
    s = {(x + y) % 25 for x in a for y in a}
    assert len(s) > 2 * len(a)
    with pytest.raises(HypothesisNotMet):
        rectify(a, 5)


def test_fourier_route_against_bruteforce_p5():
    p, m = 5, 25
    checked = 0
    for reps in itertools.product(*[range(i, m, p) for i in range(p)]):
        if len({(x + y) % m for x in reps for y in reps}) > 2 * p:
            continue
        checked += 1
        ex = rectify_exhaustive(ModSet(m, reps), p)
        fr = rectify_fourier(ModSet(m, reps), p)
        assert ex.success == fr.success
        if fr.success:
            assert gcd(fr.c, m) == 1 and inside_quarter(fr.image, p)
    assert checked > 0


def test_concentration_bound_value():
    assert concentration_bound(5) == pytest.approx(2.5 * (1 + (3 / 8) ** 0.5))


def test_classify_standard_and_shifted():
    r = two_carry_classify(3, [0, 1, 2])
    assert r.classified and r.form == "0..p-1" and (r.c, r.d) == (1, 0)
    assert set(r.distinct_values) == {0, 3}
    r = two_carry_classify(3, [1, 2, 3])
    assert r.classified and r.form == "1..p"


def test_balanced_not_classified():
    r = two_carry_classify(3, [0, 1, 8])
    assert not r.classified
    assert r.distinct_count == 3


@pytest.mark.parametrize("p", [3, 5])
def test_exhaustive_characterisation(p):
    found = {frozenset(reps) for reps, res in enumerate_two_carry(p)}
    assert found == affine_images(p)
    assert len(found) == {3: 18, 5: 100}[p]


def test_classification_transform_reproduces_form():
    m = 25
    for reps, res in enumerate_two_carry(5):
        image = {(res.c * x + res.d) % m for x in reps}
        assert image == (set(range(5)) if res.form == "0..p-1" else set(range(1, 6)))
        assert res.d % 5 == 0


@pytest.mark.parametrize("p", [5, 7])
def test_endpoint_witnesses_distinct(p):
    for i in range(2, p):
        for u in (i, i + p):
            assert len(set(endpoint_witness_carries(p, u))) == 3


def test_endpoint_rejects_bad_residue():
    with pytest.raises(ValueError):
        endpoint_witness_carries(5, 1)


def test_p2_special_case():
    r = two_carry_classify(2, [0, 3])
    assert r.classified
    assert "note" in r.info
